"""Heap posets of reduced words, commutation classes and order ideals.

Heap elements are the positions ``1..l`` of the word. Subsets of elements are
int bitmasks with position ``x`` stored in bit ``x - 1``.
"""

import logging
import random
from collections import defaultdict, deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, permutations
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from core.conf import get_engine_config
from core.constants import EngineConstants
from core.exceptions import SizeExceeded
from core.renderers import render_dot
from perm.services import (
    InversionSet,
    Pair,
    Permutation,
    ReducedWord,
    apply_word,
    longest,
    pair_label,
    perm_from_one_line,
    reduced_word_of,
)

logger = logging.getLogger(__name__)

LabelMode = EngineConstants.LabelMode


def bit(x: int) -> int:
    return 1 << (x - 1)


def mask_members(mask: int) -> FrozenSet[int]:
    members = set()
    x = 1
    while mask:
        if mask & 1:
            members.add(x)
        mask >>= 1
        x += 1
    return frozenset(members)


@dataclass(frozen=True)
class CommutationClass:
    representative: ReducedWord
    members: Optional[FrozenSet[ReducedWord]]
    size: Optional[int]
    exceeded: bool = False

    def __contains__(self, word) -> bool:
        if self.members is None:
            raise SizeExceeded("class members were not enumerated")
        return word in self.members


@dataclass(frozen=True)
class OrderIdeal:
    mask: int

    @cached_property
    def members(self) -> FrozenSet[int]:
        return mask_members(self.mask)

    def __contains__(self, x: int) -> bool:
        return bool(self.mask & bit(x))

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    @classmethod
    def of(cls, members: Iterable[int]) -> "OrderIdeal":
        mask = 0
        for x in members:
            mask |= bit(x)
        return cls(mask)


@dataclass(frozen=True)
class HeapPoset:
    word: ReducedWord
    covers: FrozenSet[Tuple[int, int]]
    letter_label: Tuple[int, ...]
    inversion_label: Tuple[Pair, ...]
    lower_mask: Tuple[int, ...]
    upper_mask: Tuple[int, ...]
    below_mask: Tuple[int, ...]
    above_mask: Tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.letter_label)

    @property
    def n(self) -> int:
        return self.word.n

    @property
    def elements(self) -> range:
        return range(1, self.size + 1)

    @property
    def full_mask(self) -> int:
        return (1 << self.size) - 1

    def letter(self, x: int) -> int:
        return self.letter_label[x - 1]

    def inversion(self, x: int) -> Pair:
        return self.inversion_label[x - 1]

    @cached_property
    def _element_of(self) -> Dict[Pair, int]:
        return {pair: index + 1 for index, pair in enumerate(self.inversion_label)}

    def element_of(self, pair: Pair) -> int:
        return self._element_of[tuple(pair)]

    def lower_covers(self, x: int) -> FrozenSet[int]:
        return mask_members(self.lower_mask[x - 1])

    def upper_covers(self, x: int) -> FrozenSet[int]:
        return mask_members(self.upper_mask[x - 1])

    def leq(self, x: int, y: int) -> bool:
        return x == y or bool(self.below_mask[y - 1] & bit(x))

    def less(self, x: int, y: int) -> bool:
        return bool(self.below_mask[y - 1] & bit(x))

    def comparable(self, x: int, y: int) -> bool:
        return self.leq(x, y) or self.leq(y, x)

    def label(self, x: int, mode: str = LabelMode.INVERSION) -> str:
        if mode == LabelMode.POSITION:
            return str(x)
        if mode == LabelMode.LETTER:
            return str(self.letter(x))
        return pair_label(self.inversion(x), self.n)

    def labels(self, mask: int) -> InversionSet:
        return InversionSet(
            frozenset(self.inversion(x) for x in mask_members(mask)), self.n
        )

    @cached_property
    def graph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(self.elements)
        graph.add_edges_from(self.covers)
        return graph


def build_heap(word: ReducedWord) -> HeapPoset:
    letters = word.letters
    size = len(letters)

    relations = nx.DiGraph()
    relations.add_nodes_from(range(1, size + 1))
    for k in range(size):
        for j in range(k):
            if abs(letters[j] - letters[k]) <= 1:
                relations.add_edge(j + 1, k + 1)
    covers = frozenset(nx.transitive_reduction(relations).edges())

    lower = [0] * size
    upper = [0] * size
    for x, y in covers:
        lower[y - 1] |= bit(x)
        upper[x - 1] |= bit(y)

    # positions are a linear extension, so one pass each way closes the order
    below = [0] * size
    for y in range(1, size + 1):
        for x in mask_members(lower[y - 1]):
            below[y - 1] |= below[x - 1] | bit(x)
    above = [0] * size
    for x in range(size, 0, -1):
        for y in mask_members(upper[x - 1]):
            above[x - 1] |= above[y - 1] | bit(y)

    entries = list(range(1, word.n + 1))
    inversions = []
    for letter in letters:
        i = letter - 1
        inversions.append((entries[i], entries[i + 1]))
        entries[i], entries[i + 1] = entries[i + 1], entries[i]

    logger.debug(f"Built heap of {word} with {size} elements and {len(covers)} covers")
    return HeapPoset(
        word=word,
        covers=covers,
        letter_label=tuple(letters),
        inversion_label=tuple(inversions),
        lower_mask=tuple(lower),
        upper_mask=tuple(upper),
        below_mask=tuple(below),
        above_mask=tuple(above),
    )


def heap_leq(heap: HeapPoset, x: int, y: int) -> bool:
    return heap.leq(x, y)


def _commuting_neighbors(letters: Tuple[int, ...]) -> Iterator[Tuple[int, ...]]:
    for j in range(len(letters) - 1):
        if abs(letters[j] - letters[j + 1]) >= 2:
            yield letters[:j] + (letters[j + 1], letters[j]) + letters[j + 2:]


def _braid_neighbors(letters: Tuple[int, ...]) -> Iterator[Tuple[int, Tuple[int, ...]]]:
    for j in range(len(letters) - 2):
        a, b, c = letters[j:j + 3]
        if a == c and abs(a - b) == 1:
            yield j + 1, letters[:j] + (b, a, b) + letters[j + 3:]


def class_words(letters: Tuple[int, ...], limit: int) -> Tuple[FrozenSet[Tuple[int, ...]], bool]:
    """BFS over commuting moves; returns (words seen, whether the limit was hit)."""
    seen = {tuple(letters)}
    queue = deque(seen)
    while queue:
        current = queue.popleft()
        for neighbor in _commuting_neighbors(current):
            if neighbor not in seen:
                if len(seen) >= limit:
                    return frozenset(seen), True
                seen.add(neighbor)
                queue.append(neighbor)
    return frozenset(seen), False


def commutation_class(
    word: ReducedWord, limit: Optional[int] = None, keep_members: bool = True
) -> CommutationClass:
    limit = limit or get_engine_config().CLASS_BFS_LIMIT
    words, exceeded = class_words(word.letters, limit)
    if exceeded:
        logger.warning(f"Commutation class of {word} has more than {limit} words")
        return CommutationClass(representative=word, members=None, size=None, exceeded=True)
    representative = ReducedWord(min(words), word.n)
    members = frozenset(ReducedWord(w, word.n) for w in words) if keep_members else None
    return CommutationClass(representative=representative, members=members, size=len(words))


def reduced_words(word: ReducedWord, limit: Optional[int] = None) -> FrozenSet[ReducedWord]:
    """All reduced words of ``word.permutation``, connected by commuting and braid moves."""
    limit = limit or get_engine_config().CLASS_BFS_LIMIT
    seen = {word.letters}
    queue = deque(seen)
    while queue:
        current = queue.popleft()
        neighbors = list(_commuting_neighbors(current))
        neighbors.extend(moved for _, moved in _braid_neighbors(current))
        for neighbor in neighbors:
            if neighbor not in seen:
                if len(seen) >= limit:
                    raise SizeExceeded(
                        f"{word.permutation} has more than {limit} reduced words",
                        {"limit": limit},
                    )
                seen.add(neighbor)
                queue.append(neighbor)
    return frozenset(ReducedWord(w, word.n) for w in seen)


def commutation_classes(word: ReducedWord, limit: Optional[int] = None) -> List[CommutationClass]:
    """Partition the reduced words of ``word.permutation`` into commutation classes."""
    remaining = set(reduced_words(word, limit))
    classes = []
    while remaining:
        klass = commutation_class(min(remaining, key=lambda w: w.letters), limit)
        remaining -= klass.members
        classes.append(klass)
    return classes


def rank_classes(n: int, limit: Optional[int] = None) -> Iterator[CommutationClass]:
    """Every commutation class of every permutation in S_n."""
    for entries in permutations(range(1, n + 1)):
        yield from commutation_classes(reduced_word_of(perm_from_one_line(entries)), limit)


def _ideal_masks(heap: HeapPoset, start: int, current: int, stop: int) -> Iterator[int]:
    # include-branch is pushed first so the exclude-branch is explored first
    stack = [(start, current)]
    lower = heap.lower_mask
    while stack:
        x, mask = stack.pop()
        if x > stop:
            yield mask
            continue
        need = lower[x - 1]
        if mask & need == need:
            stack.append((x + 1, mask | bit(x)))
        stack.append((x + 1, mask))


def ideal_roots(heap: HeapPoset, depth: int) -> List[Tuple[int, int]]:
    """Split the ideal stream into independent subtrees fixed on the first ``depth`` elements."""
    depth = min(depth, heap.size)
    return [(depth + 1, mask) for mask in _ideal_masks(heap, 1, 0, depth)]


def order_ideals(heap: HeapPoset, root: Optional[Tuple[int, int]] = None) -> Iterator[OrderIdeal]:
    start, current = root or (1, 0)
    for mask in _ideal_masks(heap, start, current, heap.size):
        yield OrderIdeal(mask)


def count_ideals(heap: HeapPoset, within: Optional[int] = None) -> int:
    """Count order ideals of the heap, or of the up-set ``within``.

    Elements outside ``within`` count as already included, which is right when
    ``within`` is an up-set such as the elements not below a given one.
    """
    within = heap.full_mask if within is None else within
    elements = [x for x in heap.elements if within & bit(x)]
    order = {x: index for index, x in enumerate(elements)}

    retire = defaultdict(int)
    tracked = 0
    for x in elements:
        later = [order[y] for y in heap.upper_covers(x) if within & bit(y)]
        if later:
            retire[max(later)] |= bit(x)
            tracked |= bit(x)

    # state: which still-relevant elements are in the ideal
    layer = {0: 1}
    active = 0
    for index, x in enumerate(elements):
        b = bit(x)
        need = heap.lower_mask[x - 1] & within
        keep = (active | (b & tracked)) & ~retire[index]
        following = defaultdict(int)
        for state, count in layer.items():
            following[state & keep] += count
            if state & need == need:
                following[(state | b) & keep] += count
        layer = following
        active = keep
    return sum(layer.values())


def ideal_to_permutation(
    heap: HeapPoset, ideal: OrderIdeal, order: Optional[Sequence[int]] = None
) -> Permutation:
    """Multiply the generator labels of ``ideal`` along a linear extension."""
    order = sorted(ideal.members) if order is None else order
    return apply_word([heap.letter(x) for x in order], heap.n)


def random_linear_extension(heap: HeapPoset, ideal: OrderIdeal, rng: random.Random) -> List[int]:
    remaining = set(ideal.members)
    placed = 0
    extension = []
    while remaining:
        ready = sorted(
            x for x in remaining if heap.lower_mask[x - 1] & placed == heap.lower_mask[x - 1]
        )
        x = rng.choice(ready)
        extension.append(x)
        remaining.remove(x)
        placed |= bit(x)
    return extension


def domain(heap: HeapPoset) -> FrozenSet[Permutation]:
    return frozenset(ideal_to_permutation(heap, ideal) for ideal in order_ideals(heap))


def is_condorcet_domain(perms: Iterable[Permutation]) -> bool:
    """True iff no triple shows all three orders of one cyclic class."""
    perms = list(perms)
    if not perms:
        return True
    n = perms[0].n
    for a, b, c in combinations(range(1, n + 1), 3):
        patterns = set()
        for w in perms:
            patterns.add(tuple(sorted((a, b, c), key=w.positions.__getitem__)))
        for cycle in (
            {(a, b, c), (b, c, a), (c, a, b)},
            {(a, c, b), (c, b, a), (b, a, c)},
        ):
            if cycle <= patterns:
                logger.debug(f"Cycle on {a}{b}{c}")
                return False
    return True


def is_maximal(heap: HeapPoset) -> bool:
    return heap.word.permutation == longest(heap.n)


def heap_components(heap: HeapPoset) -> List[Tuple[int, ...]]:
    components = nx.weakly_connected_components(heap.graph)
    return sorted(tuple(sorted(component)) for component in components)


def heap_to_dot(heap: HeapPoset, label_mode: str = LabelMode.INVERSION) -> str:
    nodes = [(f"x{x}", heap.label(x, label_mode)) for x in heap.elements]
    edges = [(f"x{x}", f"x{y}") for x, y in sorted(heap.covers)]
    return render_dot("heap", nodes, edges)
