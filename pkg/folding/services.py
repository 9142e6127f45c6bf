"""Horizontal folding symmetries of heap posets.

A fold is an involutive antiautomorphism ``phi`` with an order ideal ``I`` such
that ``x <= phi(x)`` on ``I``, ``I`` and ``phi(I)`` cover the poset, and
``A = I & phi(I)`` is an antichain. Given a fold, the majority relation of the
uniform tally is read off directly: ``Inv(u) = I - A`` and ``Inv(v) = I``.
"""

import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from core.conf import get_engine_config
from core.exceptions import InvalidFold, NotAntiautomorphism, SearchBudgetExceeded
from heap.services import (
    HeapPoset,
    OrderIdeal,
    bit,
    count_ideals,
    ideal_to_permutation,
    mask_members,
)
from majority.services import uniform_tally_function
from perm.services import Permutation

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FoldingSymmetry:
    phi: Tuple[int, ...]
    ideal: OrderIdeal
    antichain: FrozenSet[int]

    def image(self, x: int) -> int:
        return self.phi[x - 1]

    def fixed_points(self) -> List[int]:
        return [x for x in range(1, len(self.phi) + 1) if self.image(x) == x]

    def swaps(self) -> List[Tuple[int, int]]:
        return [(x, self.image(x)) for x in range(1, len(self.phi) + 1) if x < self.image(x)]


def _is_bijection(heap: HeapPoset, phi: Sequence[int]) -> bool:
    return len(phi) == heap.size and sorted(phi) == list(heap.elements)


def _map_mask(phi: Sequence[int], mask: int) -> int:
    image = 0
    for x in mask_members(mask):
        image |= bit(phi[x - 1])
    return image


def is_antiautomorphism(heap: HeapPoset, phi: Sequence[int]) -> bool:
    """x < y iff phi(y) < phi(x): phi sends each down-set onto the up-set of the image."""
    if not _is_bijection(heap, phi):
        return False
    return all(
        _map_mask(phi, heap.below_mask[x - 1]) == heap.above_mask[phi[x - 1] - 1]
        for x in heap.elements
    )


def check_folding(heap: HeapPoset, candidate: FoldingSymmetry) -> bool:
    phi = candidate.phi
    if not is_antiautomorphism(heap, phi):
        logger.debug("Fold rejected: not an antiautomorphism")
        return False
    if any(phi[phi[x - 1] - 1] != x for x in heap.elements):
        logger.debug("Fold rejected: not an involution")
        return False

    ideal = candidate.ideal.mask
    if ideal & ~heap.full_mask:
        return False
    for x in mask_members(ideal):
        if heap.below_mask[x - 1] & ~ideal:
            logger.debug(f"Fold rejected: I is not downward closed at {x}")
            return False
        if not heap.leq(x, phi[x - 1]):
            logger.debug(f"Fold rejected: {x} is not below its image")
            return False

    image = _map_mask(phi, ideal)
    if ideal | image != heap.full_mask:
        logger.debug("Fold rejected: I and phi(I) do not cover P")
        return False
    meet = ideal & image
    antichain = 0
    for x in candidate.antichain:
        antichain |= bit(x)
    if antichain != meet:
        logger.debug("Fold rejected: A is not I & phi(I)")
        return False
    for x in mask_members(meet):
        if heap.below_mask[x - 1] & meet:
            logger.debug("Fold rejected: A is not an antichain")
            return False
    return True


def fold_from_involution(heap: HeapPoset, phi: Sequence[int]) -> Optional[FoldingSymmetry]:
    """Complete an involution to a fold; the ideal is forced to be {x : x <= phi(x)}."""
    phi = tuple(phi)
    if not _is_bijection(heap, phi):
        return None
    ideal = OrderIdeal.of(x for x in heap.elements if heap.leq(x, phi[x - 1]))
    meet = ideal.mask & _map_mask(phi, ideal.mask)
    candidate = FoldingSymmetry(phi=phi, ideal=ideal, antichain=mask_members(meet))
    return candidate if check_folding(heap, candidate) else None


class _StepsExhausted(Exception):
    pass


def _ranks(heap: HeapPoset) -> Tuple[Dict[int, int], Dict[int, int]]:
    depth: Dict[int, int] = {}
    for x in heap.elements:
        depth[x] = max((depth[c] + 1 for c in heap.lower_covers(x)), default=0)
    height: Dict[int, int] = {}
    for x in reversed(heap.elements):
        height[x] = max((height[c] + 1 for c in heap.upper_covers(x)), default=0)
    return depth, height


def _candidates(heap: HeapPoset, rank_pairing: bool) -> Dict[int, List[int]]:
    depth, height = _ranks(heap)
    top = max(depth.values())

    def popcount(mask):
        return bin(mask).count("1")

    def down(x):
        return (depth[x], popcount(heap.lower_mask[x - 1]), popcount(heap.below_mask[x - 1]))

    def up(x):
        return (height[x], popcount(heap.upper_mask[x - 1]), popcount(heap.above_mask[x - 1]))

    candidates = {}
    for x in heap.elements:
        options = []
        for y in heap.elements:
            if down(x) != up(y) or up(x) != down(y):
                continue
            if not heap.comparable(x, y):
                continue
            if rank_pairing and depth[y] != top - depth[x]:
                continue
            options.append(y)
        candidates[x] = options
    return candidates


def _backtrack(
    heap: HeapPoset, candidates: Dict[int, List[int]], max_steps: Optional[int]
) -> Optional[FoldingSymmetry]:
    phi = [0] * (heap.size + 1)
    assigned: List[int] = []
    fixed: List[int] = []
    order = list(heap.elements)
    steps = 0

    def consistent(x, y):
        for a in assigned:
            b = phi[a]
            if heap.less(x, a) != heap.less(b, y) or heap.less(a, x) != heap.less(y, b):
                return False
            if y != x and (
                heap.less(y, a) != heap.less(b, x) or heap.less(a, y) != heap.less(x, b)
            ):
                return False
        if y == x and any(heap.comparable(f, x) for f in fixed):
            return False
        return True

    def extend(i):
        nonlocal steps
        while i < len(order) and phi[order[i]]:
            i += 1
        if i == len(order):
            return fold_from_involution(heap, phi[1:])
        x = order[i]
        for y in candidates[x]:
            if phi[y]:
                continue
            steps += 1
            if max_steps is not None and steps > max_steps:
                raise _StepsExhausted()
            if not consistent(x, y):
                continue
            phi[x], phi[y] = y, x
            assigned.append(x)
            if y != x:
                assigned.append(y)
            else:
                fixed.append(x)
            found = extend(i + 1)
            if found is not None:
                return found
            if y != x:
                assigned.pop()
            else:
                fixed.pop()
            assigned.pop()
            phi[x] = phi[y] = 0
        return None

    return extend(0)


def find_folding_symmetry(
    heap: HeapPoset, bound: Optional[int] = None, max_steps: Optional[int] = None
) -> Optional[FoldingSymmetry]:
    """Search for a fold: rank pairing first, then the exact search up to ``bound`` elements."""
    config = get_engine_config()
    bound = config.FOLD_SEARCH_BOUND if bound is None else bound
    max_steps = config.FOLD_SEARCH_STEPS if max_steps is None else max_steps
    if heap.size == 0:
        return FoldingSymmetry(phi=(), ideal=OrderIdeal(0), antichain=frozenset())

    try:
        found = _backtrack(heap, _candidates(heap, rank_pairing=True), max_steps)
    except _StepsExhausted:
        logger.info(f"Rank-pairing fold search on {heap.word} ran out of steps")
        found = None
    if found is not None:
        return found

    if heap.size > bound:
        raise SearchBudgetExceeded(
            f"heap of {heap.size} elements exceeds the exact search bound {bound}",
            {"size": heap.size, "bound": bound},
        )
    found = _backtrack(heap, _candidates(heap, rank_pairing=False), None)
    logger.debug(f"Exact fold search on {heap.word}: {'found' if found else 'none'}")
    return found


def majority_from_fold(heap: HeapPoset, fold: FoldingSymmetry) -> Tuple[Permutation, Permutation]:
    if not check_folding(heap, fold):
        raise InvalidFold(f"the supplied fold is not a folding symmetry of {heap.word}")
    below = fold.ideal.mask
    for x in fold.antichain:
        below &= ~bit(x)
    u = ideal_to_permutation(heap, OrderIdeal(below))
    v = ideal_to_permutation(heap, fold.ideal)
    return u, v


def balance_check(heap: HeapPoset, phi: Sequence[int]) -> bool:
    """Check tally(x) + tally(phi(x)) = |J(P)| at every element for the uniform tally."""
    if not is_antiautomorphism(heap, phi):
        raise NotAntiautomorphism(f"phi is not an antiautomorphism of the heap of {heap.word}")
    tally = uniform_tally_function(heap)
    total = count_ideals(heap)
    for x in heap.elements:
        y = phi[x - 1]
        if tally[heap.inversion(x)] + tally[heap.inversion(y)] != total:
            logger.error(f"Balance fails at {heap.label(x)}")
            return False
    return True
