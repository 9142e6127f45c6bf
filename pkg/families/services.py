"""Closed-form families of reduced words and their predicted majority relations.

Families:
    cocktail_shaker  the back-and-forth word for w0 (and its reverse/complements),
                     whose commutation class is a single word
    singleton_word   any word whose commutation class is a single word
    lex_first        (1, 2,1, 3,2,1, ..., n-1,...,1)
    bipartite_power  c^p or c^p c_odd with c = c_odd c_even
    diamond          rows (k), (k-1,k+1), ..., (1,3,...,2k-1), ..., (k) in S_2k

Each family with a closed form also has a closed-form fold, certified with
``check_folding`` rather than trusted.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from core.conf import get_engine_config
from core.exceptions import (
    NoClosedForm,
    ParamOutOfRange,
    ResourceExceeded,
    SearchBudgetExceeded,
)
from core.parallel import ordered_map
from folding.services import (
    FoldingSymmetry,
    check_folding,
    find_folding_symmetry,
    majority_from_fold,
)
from heap.services import HeapPoset, OrderIdeal, class_words, domain
from majority.services import (
    PrelinearOrder,
    VoteTally,
    brute_force_majority,
    majority_report,
    prelinear_from_uv,
)
from perm.services import Permutation, ReducedWord, apply_word, format_word

from .constants import FamilyConstants

logger = logging.getLogger(__name__)

Kind = FamilyConstants.Kind
Variant = FamilyConstants.Variant


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    n: Optional[int] = None
    p: int = 0
    k: Optional[int] = None
    trailing_odd: bool = True
    variant: str = Variant.FORWARD
    word: Optional[Tuple[int, ...]] = None

    @property
    def rank(self) -> int:
        if self.kind == Kind.DIAMOND:
            return 2 * (self.k or 0)
        if self.kind == Kind.SINGLETON_WORD and self.n is None and self.word:
            return max(self.word) + 1
        return self.n or 0

    def validate(self) -> None:
        max_n = get_engine_config().MAX_N
        if self.kind not in Kind.values:
            raise ParamOutOfRange(f"unknown family kind {self.kind!r}")
        if self.variant not in Variant.values:
            raise ParamOutOfRange(f"unknown variant {self.variant!r}")
        if self.variant != Variant.FORWARD and self.kind != Kind.COCKTAIL_SHAKER:
            raise ParamOutOfRange("variants apply to cocktail_shaker only")
        if self.kind == Kind.DIAMOND:
            if self.k is None or self.k < 1:
                raise ParamOutOfRange("diamond requires k >= 1", {"k": self.k})
        elif self.kind == Kind.SINGLETON_WORD:
            if not self.word:
                raise ParamOutOfRange("singleton_word requires a non-empty word")
        elif self.n is None or self.n < 2:
            raise ParamOutOfRange(f"{self.kind} requires n >= 2", {"n": self.n})
        if self.rank > max_n:
            raise ParamOutOfRange(
                f"rank {self.rank} exceeds the configured maximum {max_n}", {"n": self.rank}
            )
        if self.kind == Kind.BIPARTITE_POWER:
            limit = self.n - 1 if self.trailing_odd else self.n
            if self.p < 0 or 2 * self.p > limit:
                bound = "(n-1)/2" if self.trailing_odd else "n/2"
                raise ParamOutOfRange(
                    f"bipartite power needs 0 <= p <= {bound}", {"n": self.n, "p": self.p}
                )

    def __str__(self) -> str:
        if self.kind == Kind.DIAMOND:
            return f"diamond(k={self.k})"
        if self.kind == Kind.BIPARTITE_POWER:
            tail = " c_odd" if self.trailing_odd else ""
            return f"bipartite_power(n={self.n}, p={self.p}{tail})"
        if self.kind == Kind.SINGLETON_WORD:
            return f"singleton_word({format_word(self.word)})"
        if self.kind == Kind.COCKTAIL_SHAKER and self.variant != Variant.FORWARD:
            return f"cocktail_shaker(n={self.n}, {self.variant})"
        return f"{self.kind}(n={self.n})"


def odd_letters(n: int) -> Tuple[int, ...]:
    return tuple(range(1, n, 2))


def even_letters(n: int) -> Tuple[int, ...]:
    return tuple(range(2, n, 2))


def cocktail_shaker_letters(n: int) -> Tuple[int, ...]:
    letters: List[int] = []
    low, high = 1, n - 1
    while low <= high:
        letters.extend(range(high, low - 1, -1))
        low += 1
        if low > high:
            break
        letters.extend(range(low, high + 1))
        high -= 1
    return tuple(letters)


def lex_first_letters(n: int) -> Tuple[int, ...]:
    return tuple(i for j in range(1, n) for i in range(j, 0, -1))


def bipartite_layers(n: int, p: int, trailing_odd: bool) -> List[Tuple[int, ...]]:
    layers = []
    for _ in range(p):
        layers.append(odd_letters(n))
        layers.append(even_letters(n))
    if trailing_odd:
        layers.append(odd_letters(n))
    return [layer for layer in layers if layer]


def diamond_layers(k: int) -> List[Tuple[int, ...]]:
    rows = [tuple(range(k - r + 1, k + r, 2)) for r in range(1, k + 1)]
    return rows + rows[-2::-1]


def _layers(spec: FamilySpec) -> List[Tuple[int, ...]]:
    if spec.kind == Kind.DIAMOND:
        return diamond_layers(spec.k)
    return bipartite_layers(spec.n, spec.p, spec.trailing_odd)


def _letters(spec: FamilySpec) -> Tuple[int, ...]:
    if spec.kind == Kind.COCKTAIL_SHAKER:
        letters = cocktail_shaker_letters(spec.n)
        if spec.variant in (Variant.COMPLEMENT, Variant.REVERSE_COMPLEMENT):
            letters = tuple(spec.n - i for i in letters)
        if spec.variant in (Variant.REVERSE, Variant.REVERSE_COMPLEMENT):
            letters = letters[::-1]
        return letters
    if spec.kind == Kind.SINGLETON_WORD:
        return tuple(spec.word)
    if spec.kind == Kind.LEX_FIRST:
        return lex_first_letters(spec.n)
    return tuple(i for layer in _layers(spec) for i in layer)


def family_word(spec: FamilySpec) -> ReducedWord:
    spec.validate()
    word = ReducedWord(_letters(spec), spec.rank)
    if spec.kind == Kind.SINGLETON_WORD:
        words, _ = class_words(word.letters, 2)
        if len(words) != 1:
            raise ParamOutOfRange(f"the commutation class of {word} has more than one word")
    return word


def bipartite_pattern(n: int, p: int) -> PrelinearOrder:
    """Majority relation of c^p c_odd in closed form.

    With {m, q} = {n-1, n} and m even, the blocks read
    ... {4 (2p-2)} {2 2p} | {1 (2p+2)} {3 (2p+4)} ... {(m-2p-1) m} | {(m-2p+1) q} {(m-2p+3) (q-2)} ...
    where a block {x x} is the single value x.
    """
    m, q = (n, n - 1) if n % 2 == 0 else (n - 1, n)
    left = []
    j = 1
    while 2 * j <= 2 * p + 2 - 2 * j:
        left.append(frozenset({2 * j, 2 * p + 2 - 2 * j}))
        j += 1
    blocks = left[::-1]
    t = 1
    while t <= m - 2 * p - 1:
        blocks.append(frozenset({t, t + 2 * p + 1}))
        t += 2
    low, high = m - 2 * p + 1, q
    while low <= high:
        blocks.append(frozenset({low, high}))
        low += 2
        high -= 2
    return PrelinearOrder(tuple(blocks))


def _interleave(firsts: Sequence[int], seconds: Sequence[int]) -> Tuple[int, ...]:
    return tuple(value for pair in zip(firsts, seconds) for value in pair)


def closed_form_uv(spec: FamilySpec, conjecture: bool = False) -> Tuple[Permutation, Permutation]:
    spec.validate()
    n = spec.rank
    if spec.kind in (Kind.COCKTAIL_SHAKER, Kind.SINGLETON_WORD):
        letters = _letters(spec)
        half = len(letters) // 2
        return apply_word(letters[:half], n), apply_word(letters[:len(letters) - half], n)

    if spec.kind == Kind.LEX_FIRST:
        lows = list(range(n // 2, 0, -1))
        highs = [n + 1 - j for j in lows]
        head = ((n + 1) // 2,) if n % 2 else ()
        u = head + _interleave(lows, highs)
        v = head + _interleave(highs, lows)
        return Permutation(u), Permutation(v)

    if spec.kind == Kind.DIAMOND:
        k = spec.k
        lows = range(1, k + 1)
        highs = range(k + 1, 2 * k + 1)
        return Permutation(_interleave(lows, highs)), Permutation(_interleave(highs, lows))

    p = spec.p
    if spec.trailing_odd:
        if p % 2 == 0:
            u_layers = bipartite_layers(n, p // 2, False)
            v_layers = bipartite_layers(n, p // 2, True)
        else:
            u_layers = bipartite_layers(n, (p - 1) // 2, True)
            v_layers = bipartite_layers(n, (p + 1) // 2, False)
    elif conjecture:
        if p % 2 == 0:
            u_layers = bipartite_layers(n, p // 2, False)
        else:
            u_layers = bipartite_layers(n, (p - 1) // 2, True)
        v_layers = u_layers
    else:
        raise NoClosedForm(f"{spec} has no proven closed form; use conjecture mode")
    u = apply_word([i for layer in u_layers for i in layer], n)
    v = apply_word([i for layer in v_layers for i in layer], n)
    return u, v


def predicted_majority(spec: FamilySpec, conjecture: bool = False) -> PrelinearOrder:
    if spec.kind == Kind.BIPARTITE_POWER and spec.trailing_odd:
        spec.validate()
        return bipartite_pattern(spec.n, spec.p)
    return prelinear_from_uv(*closed_form_uv(spec, conjecture))


def _layer_fold(heap: HeapPoset, layers: List[Tuple[int, ...]]) -> FoldingSymmetry:
    position = {}
    layer_of = {}
    x = 1
    for index, layer in enumerate(layers):
        for letter in layer:
            position[(index, letter)] = x
            layer_of[x] = index
            x += 1
    top = len(layers) - 1
    phi = tuple(position[(top - layer_of[x], heap.letter(x))] for x in heap.elements)
    ideal = OrderIdeal.of(x for x in heap.elements if 2 * layer_of[x] <= top)
    middle = frozenset(x for x in heap.elements if 2 * layer_of[x] == top)
    return FoldingSymmetry(phi=phi, ideal=ideal, antichain=middle)


def closed_form_fold(spec: FamilySpec, heap: HeapPoset) -> FoldingSymmetry:
    size = heap.size
    if spec.kind in (Kind.COCKTAIL_SHAKER, Kind.SINGLETON_WORD):
        phi = tuple(size + 1 - t for t in heap.elements)
        ideal = OrderIdeal.of(range(1, (size + 1) // 2 + 1))
        middle = frozenset({(size + 1) // 2}) if size % 2 else frozenset()
        return FoldingSymmetry(phi=phi, ideal=ideal, antichain=middle)

    if spec.kind == Kind.LEX_FIRST:
        n = spec.n
        phi = tuple(
            heap.element_of((n + 1 - b, n + 1 - a))
            for a, b in (heap.inversion(x) for x in heap.elements)
        )
        ideal = OrderIdeal.of(x for x in heap.elements if sum(heap.inversion(x)) <= n + 1)
        middle = frozenset(x for x in heap.elements if sum(heap.inversion(x)) == n + 1)
        return FoldingSymmetry(phi=phi, ideal=ideal, antichain=middle)

    if spec.kind == Kind.BIPARTITE_POWER and not spec.trailing_odd:
        raise NoClosedForm(f"{spec} has no closed-form fold")
    return _layer_fold(heap, _layers(spec))


@dataclass(frozen=True)
class FamilyReport:
    spec: FamilySpec
    word: ReducedWord
    heap_size: int
    ideal_count: int
    predicted: PrelinearOrder
    computed: PrelinearOrder
    match: bool
    fold: FoldingSymmetry = field(repr=False)
    heap: HeapPoset = field(repr=False, compare=False)
    fold_valid: bool = False
    fold_majority: Optional[PrelinearOrder] = None
    fold_match: bool = False
    balanced: bool = False


def verify_family(spec: FamilySpec) -> FamilyReport:
    word = family_word(spec)
    result = majority_report(word)
    heap = result.heap
    predicted = predicted_majority(spec)

    fold = closed_form_fold(spec, heap)
    fold_valid = check_folding(heap, fold)
    fold_majority = prelinear_from_uv(*majority_from_fold(heap, fold)) if fold_valid else None
    balanced = all(
        result.tally[heap.inversion(x)] + result.tally[heap.inversion(fold.image(x))]
        == result.total
        for x in heap.elements
    ) if fold_valid else False

    report = FamilyReport(
        spec=spec,
        word=word,
        heap_size=heap.size,
        ideal_count=result.total,
        predicted=predicted,
        computed=result.order,
        match=predicted == result.order,
        fold=fold,
        heap=heap,
        fold_valid=fold_valid,
        fold_majority=fold_majority,
        fold_match=fold_majority == result.order,
        balanced=balanced,
    )
    if not report.match:
        logger.warning(f"{spec}: predicted {predicted} but computed {result.order}")
    return report


@dataclass(frozen=True)
class ConjectureReport:
    n: int
    p: int
    word: ReducedWord
    conjectured: PrelinearOrder
    computed: PrelinearOrder
    holds: bool
    ideal_count: int
    oracle_match: Optional[bool]
    fold_found: Optional[bool]


def _check_conjecture(task) -> ConjectureReport:
    n, p, oracle_limit, with_folds = task
    spec = FamilySpec(Kind.BIPARTITE_POWER, n=n, p=p, trailing_odd=False)
    word = family_word(spec)
    result = majority_report(word, workers=1)
    u, _ = closed_form_uv(spec, conjecture=True)
    conjectured = PrelinearOrder(tuple(frozenset({value}) for value in u.entries))

    oracle_match = None
    if result.total <= oracle_limit:
        voters = VoteTally.uniform(domain(result.heap))
        oracle_match = brute_force_majority(voters) == result.order.relation()

    fold_found = None
    if with_folds:
        try:
            fold_found = find_folding_symmetry(result.heap) is not None
        except SearchBudgetExceeded as e:
            logger.info(f"Fold search for c^{p} in S_{n} gave no answer: {e}")

    return ConjectureReport(
        n=n,
        p=p,
        word=word,
        conjectured=conjectured,
        computed=result.order,
        holds=conjectured == result.order,
        ideal_count=result.total,
        oracle_match=oracle_match,
        fold_found=fold_found,
    )


def check_conjecture(n: int, p: int, with_folds: bool = False) -> ConjectureReport:
    """Compute the majority relation of c^p and compare it with the conjectured total order.

    The verdict is evidence only; nothing here assumes the conjecture.
    """
    config = get_engine_config()
    if n > config.MAX_N:
        raise ResourceExceeded(f"n={n} exceeds the configured maximum {config.MAX_N}")
    if n < 2 or p < 1 or 2 * p > n:
        raise ParamOutOfRange("the conjecture concerns 1 <= p <= n/2", {"n": n, "p": p})
    return _check_conjecture((n, p, config.ORACLE_DOMAIN_LIMIT, with_folds))


def sweep_conjecture(
    max_n: int,
    min_n: int = 2,
    max_p: Optional[int] = None,
    workers: Optional[int] = None,
    with_folds: bool = False,
) -> List[ConjectureReport]:
    config = get_engine_config()
    if max_n > config.MAX_N:
        raise ResourceExceeded(f"n={max_n} exceeds the configured maximum {config.MAX_N}")
    tasks = [
        (n, p, config.ORACLE_DOMAIN_LIMIT, with_folds)
        for n in range(max(min_n, 2), max_n + 1)
        for p in range(1, n // 2 + 1)
        if max_p is None or p <= max_p
    ]
    workers = workers or config.IDEAL_STREAM_WORKERS
    reports = ordered_map(_check_conjecture, tasks, workers)
    held = [(r.n, r.p) for r in reports if r.holds]
    logger.info(f"Conjecture sweep: total order observed for {len(held)} of {len(reports)} pairs")
    return reports
