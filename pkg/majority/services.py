"""Vote tallies, tally functions and majority relations.

The fast path computes the tally function of a heap (one sweep over its order
ideals, or ideal counting for the uniform tally) and reads the majority relation
off two permutations ``u`` and ``v``:

    Inv(u) = {ab : 2 * tally(ab) >  total}
    Inv(v) = {ab : 2 * tally(ab) >= total}

``brute_force_majority`` sums votes pair by pair and serves as the oracle.
All comparisons are exact integer comparisons.
"""

import logging
import random
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple

from core.conf import get_engine_config
from core.exceptions import (
    NotDecreasing,
    NotIntersectable,
    OutOfRange,
    SupportMismatch,
)
from core.parallel import ordered_map
from heap.services import (
    HeapPoset,
    OrderIdeal,
    bit,
    build_heap,
    count_ideals,
    domain,
    ideal_roots,
    ideal_to_permutation,
    order_ideals,
)
from perm.services import Pair, Permutation, ReducedWord, pair_label

logger = logging.getLogger(__name__)

ROOT_DEPTH = 8


@dataclass(frozen=True)
class VoteTally:
    counts: Mapping[Permutation, int]
    n: int

    def __post_init__(self):
        cleaned = {}
        for w, count in self.counts.items():
            count = int(count)
            if count < 0:
                raise OutOfRange(f"negative count {count} for {w}", {"permutation": str(w)})
            if w.n != self.n:
                raise OutOfRange(f"{w} is not a permutation of [{self.n}]")
            if count:
                cleaned[w] = count
        object.__setattr__(self, "counts", cleaned)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    @property
    def support(self) -> FrozenSet[Permutation]:
        return frozenset(self.counts)

    def get(self, w: Permutation) -> int:
        return self.counts.get(w, 0)

    @classmethod
    def uniform(cls, perms: Iterable[Permutation]) -> "VoteTally":
        perms = list(perms)
        n = perms[0].n if perms else 0
        return cls({w: 1 for w in perms}, n)


@dataclass(frozen=True)
class TallyFunction:
    values: Mapping[Pair, int]
    n: int

    def __getitem__(self, pair: Pair) -> int:
        return self.values[tuple(pair)]

    def labelled(self) -> Dict[str, int]:
        return {pair_label(pair, self.n): value for pair, value in sorted(self.values.items())}


@dataclass(frozen=True)
class BinaryRelation:
    pairs: FrozenSet[Pair]
    n: int

    def __contains__(self, pair) -> bool:
        return tuple(pair) in self.pairs

    def is_antisymmetric(self) -> bool:
        return all((b, a) not in self.pairs for a, b in self.pairs)

    def to_prelinear(self) -> Optional["PrelinearOrder"]:
        """The prelinear order whose strict relation is this one, if there is one."""
        wins = {a: 0 for a in range(1, self.n + 1)}
        for a, _ in self.pairs:
            wins[a] += 1
        ranked = sorted(wins, key=lambda a: (-wins[a], a))
        blocks: List[List[int]] = []
        for a in ranked:
            if blocks and wins[blocks[-1][0]] == wins[a]:
                blocks[-1].append(a)
            else:
                blocks.append([a])
        order = PrelinearOrder(tuple(frozenset(block) for block in blocks))
        return order if order.relation() == self else None

    def __str__(self) -> str:
        return "{" + ", ".join(f"{a}>{b}" for a, b in sorted(self.pairs)) + "}"


def _block_text(block: FrozenSet[int], sep: str) -> str:
    values = sorted(block)
    if len(values) == 1:
        return str(values[0])
    return "{" + sep.join(str(v) for v in values) + "}"


@dataclass(frozen=True)
class PrelinearOrder:
    blocks: Tuple[FrozenSet[int], ...]

    @property
    def n(self) -> int:
        return sum(len(block) for block in self.blocks)

    @property
    def max_block_size(self) -> int:
        return max((len(block) for block in self.blocks), default=0)

    def is_total(self) -> bool:
        return self.max_block_size <= 1

    def tied_pairs(self) -> List[Pair]:
        return [tuple(sorted(block)) for block in self.blocks if len(block) == 2]

    def block_index(self) -> Dict[int, int]:
        return {value: index for index, block in enumerate(self.blocks) for value in block}

    def partner(self, value: int) -> Optional[int]:
        for block in self.blocks:
            if value in block:
                others = sorted(block - {value})
                return others[0] if others else None
        raise KeyError(value)

    def relation(self) -> BinaryRelation:
        pairs = set()
        for i, upper in enumerate(self.blocks):
            for lower in self.blocks[i + 1:]:
                pairs.update((a, b) for a in upper for b in lower)
        return BinaryRelation(frozenset(pairs), self.n)

    def compact(self) -> str:
        """Render without spaces, e.g. ``3{24}{15}``; only unambiguous for n <= 9."""
        if self.n > 9:
            return str(self)
        return "".join(_block_text(block, "") for block in self.blocks)

    def __str__(self) -> str:
        return " ".join(_block_text(block, " ") for block in self.blocks)

    @classmethod
    def from_text(cls, text: str) -> "PrelinearOrder":
        blocks = []
        tokens = text.replace("{", " { ").replace("}", " } ").split()
        current = None
        for token in tokens:
            if token == "{":
                current = []
            elif token == "}":
                blocks.append(frozenset(current))
                current = None
            elif current is not None:
                current.append(int(token))
            else:
                blocks.append(frozenset([int(token)]))
        return cls(tuple(blocks))


@dataclass(frozen=True)
class MajorityResult:
    word: ReducedWord
    u: Permutation
    v: Permutation
    order: PrelinearOrder
    tally: TallyFunction
    total: int
    heap: HeapPoset = field(repr=False, compare=False)


def _tally_subtree(task) -> List[int]:
    heap, counts, root = task
    sums = [0] * heap.size
    for ideal in order_ideals(heap, root):
        weight = counts.get(ideal_to_permutation(heap, ideal), 0)
        if weight:
            for x in ideal.members:
                sums[x - 1] += weight
    return sums


def tally_function(
    heap: HeapPoset, rho: VoteTally, workers: Optional[int] = None
) -> TallyFunction:
    expected = domain(heap)
    support = rho.support
    if support != expected:
        missing = sorted(str(w) for w in expected - support)
        extra = sorted(str(w) for w in support - expected)
        raise SupportMismatch(
            f"supp(rho) differs from Pre(C): {len(missing)} missing, {len(extra)} extra",
            {"missing": missing[:20], "extra": extra[:20]},
        )

    workers = workers or get_engine_config().IDEAL_STREAM_WORKERS
    roots = ideal_roots(heap, ROOT_DEPTH) if workers > 1 else [None]
    partials = ordered_map(
        _tally_subtree, [(heap, dict(rho.counts), root) for root in roots], workers
    )
    sums = [sum(column) for column in zip(*partials)] if partials else []
    values = {heap.inversion(x): sums[x - 1] for x in heap.elements}
    logger.debug(f"Tally of {heap.word} over {len(expected)} permutations: {values}")
    return TallyFunction(values, heap.n)


def _uniform_value(task) -> int:
    heap, within = task
    return count_ideals(heap, within)


def uniform_tally_function(heap: HeapPoset, workers: Optional[int] = None) -> TallyFunction:
    """Tally of the uniform profile on Pre(C).

    Ideals of P containing x correspond to ideals of P minus the closed down-set of x.
    """
    workers = workers or get_engine_config().IDEAL_STREAM_WORKERS
    tasks = [
        (heap, heap.full_mask & ~(heap.below_mask[x - 1] | bit(x))) for x in heap.elements
    ]
    counts = ordered_map(_uniform_value, tasks, workers)
    values = {heap.inversion(x): count for x, count in zip(heap.elements, counts)}
    return TallyFunction(values, heap.n)


def majority_uv(
    heap: HeapPoset, tally: TallyFunction, total: int
) -> Tuple[Permutation, Permutation]:
    for x, y in heap.covers:
        if not tally[heap.inversion(x)] > tally[heap.inversion(y)]:
            raise NotDecreasing(
                f"tally does not decrease from {pair_label(heap.inversion(x), heap.n)} "
                f"to {pair_label(heap.inversion(y), heap.n)}",
                {"lower": heap.label(x), "upper": heap.label(y)},
            )
    u_mask = 0
    v_mask = 0
    for x in heap.elements:
        doubled = 2 * tally[heap.inversion(x)]
        if doubled > total:
            u_mask |= bit(x)
        if doubled >= total:
            v_mask |= bit(x)
    u = ideal_to_permutation(heap, OrderIdeal(u_mask))
    v = ideal_to_permutation(heap, OrderIdeal(v_mask))
    return u, v


def prelinear_from_uv(u: Permutation, v: Permutation) -> PrelinearOrder:
    """The intersection of the orders ``<_u`` and ``<_v`` as an ordered partition."""
    if u.n != v.n:
        raise NotIntersectable(f"{u} and {v} have different ranks")
    inv_u = u.inversions.pairs
    inv_v = v.inversions.pairs
    if not inv_u <= inv_v:
        raise NotIntersectable(f"Inv({u}) is not contained in Inv({v})")
    ties = inv_v - inv_u
    tied_values = [value for pair in ties for value in pair]
    if len(set(tied_values)) != len(tied_values):
        raise NotIntersectable(f"tied pairs of {u}, {v} are not disjoint")

    blocks = []
    entries = u.entries
    i = 0
    while i < len(entries):
        a = entries[i]
        if i + 1 < len(entries):
            b = entries[i + 1]
            if (min(a, b), max(a, b)) in ties:
                blocks.append(frozenset((a, b)))
                i += 2
                continue
        blocks.append(frozenset((a,)))
        i += 1

    if sum(1 for block in blocks if len(block) == 2) != len(ties):
        raise NotIntersectable(f"tied pairs of {u}, {v} are not adjacent in {u}")
    return PrelinearOrder(tuple(blocks))


def brute_force_majority(rho: VoteTally) -> BinaryRelation:
    """a > b iff more than half of the votes place a before b."""
    n = rho.n
    score: Dict[Pair, int] = {}
    for w, count in rho.counts.items():
        entries = w.entries
        for i in range(n):
            for j in range(i + 1, n):
                pair = (entries[i], entries[j])
                score[pair] = score.get(pair, 0) + count
    total = rho.total
    pairs = frozenset(pair for pair, value in score.items() if 2 * value > total)
    return BinaryRelation(pairs, n)


def majority_report(
    word: ReducedWord, rho: Optional[VoteTally] = None, workers: Optional[int] = None
) -> MajorityResult:
    heap = build_heap(word)
    if rho is None:
        tally = uniform_tally_function(heap, workers)
        total = count_ideals(heap)
    else:
        tally = tally_function(heap, rho, workers)
        total = rho.total
    u, v = majority_uv(heap, tally, total)
    order = prelinear_from_uv(u, v)
    logger.info(f"Majority of {word}: {order} (total {total})")
    return MajorityResult(word=word, u=u, v=v, order=order, tally=tally, total=total, heap=heap)


def majority_of_domain(word: ReducedWord, rho: Optional[VoteTally] = None) -> PrelinearOrder:
    return majority_report(word, rho).order


def random_positive_tally(
    perms: Iterable[Permutation], rng: random.Random, max_count: int = 5
) -> VoteTally:
    perms = sorted(perms, key=lambda w: w.entries)
    return VoteTally({w: rng.randint(1, max_count) for w in perms}, perms[0].n)
