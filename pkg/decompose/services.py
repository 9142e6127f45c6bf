"""Block decompositions of reduced words and the Fubini rules for majority relations.

A word splits along the gaps of its S-support: each maximal run of letters
a..b is one block on the values a..b+1, and values no letter touches are
trivial blocks of size one. Blocks are listed left to right, so the word's
permutation is the direct sum of the block permutations.
"""

import logging
from dataclasses import dataclass
from functools import reduce
from math import prod
from typing import List, Optional, Tuple

from core.conf import get_engine_config
from core.exceptions import OutOfRange
from core.parallel import ordered_map
from heap.services import build_heap, heap_components
from majority.services import (
    BinaryRelation,
    PrelinearOrder,
    VoteTally,
    majority_report,
    prelinear_from_uv,
)
from perm.services import Permutation, ReducedWord, direct_sum, identity

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Block:
    offset: int
    word: ReducedWord

    @property
    def size(self) -> int:
        return self.word.n

    @property
    def values(self) -> range:
        return range(self.offset + 1, self.offset + self.size + 1)

    def is_trivial(self) -> bool:
        return len(self.word) == 0


@dataclass(frozen=True)
class BlockDecomposition:
    word: ReducedWord
    blocks: Tuple[Block, ...]

    def __len__(self) -> int:
        return len(self.blocks)

    def nontrivial(self) -> List[Block]:
        return [block for block in self.blocks if not block.is_trivial()]


def split_class(word: ReducedWord) -> BlockDecomposition:
    heap = build_heap(word)
    runs = sorted(
        tuple(sorted({heap.letter(x) for x in component}))
        for component in heap_components(heap)
    )

    blocks = []
    value = 1
    for letters in runs:
        low, high = letters[0], letters[-1]
        while value < low:
            blocks.append(Block(value - 1, ReducedWord((), 1)))
            value += 1
        shifted = tuple(i - (low - 1) for i in word.letters if low <= i <= high)
        blocks.append(Block(low - 1, ReducedWord(shifted, high - low + 2)))
        value = high + 2
    while value <= word.n:
        blocks.append(Block(value - 1, ReducedWord((), 1)))
        value += 1

    logger.debug(f"{word} splits into {len(blocks)} blocks")
    return BlockDecomposition(word=word, blocks=tuple(blocks))


@dataclass(frozen=True)
class BlockMajority:
    block: Block
    u: Permutation
    v: Permutation
    total: int


@dataclass(frozen=True)
class FubiniResult:
    decomposition: BlockDecomposition
    parts: Tuple[BlockMajority, ...]
    u: Permutation
    v: Permutation
    order: PrelinearOrder
    total: int


def _block_majority(block: Block) -> BlockMajority:
    if block.is_trivial():
        one = identity(block.size)
        return BlockMajority(block=block, u=one, v=one, total=1)
    result = majority_report(block.word, workers=1)
    return BlockMajority(block=block, u=result.u, v=result.v, total=result.total)


def fubini_majority(dec: BlockDecomposition, workers: Optional[int] = None) -> FubiniResult:
    """Majority of the uniform tally on Pre(C) assembled from the blocks.

    u and v are the direct sums of the per-block u and v; |J(P)| is the product
    of the per-block ideal counts.
    """
    workers = workers or get_engine_config().IDEAL_STREAM_WORKERS
    parts = tuple(ordered_map(_block_majority, list(dec.blocks), workers))
    u = reduce(direct_sum, (part.u for part in parts))
    v = reduce(direct_sum, (part.v for part in parts))
    total = prod(part.total for part in parts)
    return FubiniResult(
        decomposition=dec,
        parts=parts,
        u=u,
        v=v,
        order=prelinear_from_uv(u, v),
        total=total,
    )


def product_tally_majority(
    rel1: BinaryRelation, rel2: BinaryRelation, include_cross: bool = False
) -> BinaryRelation:
    """Majority of a product tally from the majorities of its factors.

    Within each block the factor relation carries over, shifted by ``rel1.n``
    for the second block. Every vote of a product tally ranks all of [n1]
    ahead of the rest, so ``include_cross`` adds those unanimous pairs.
    """
    n1 = rel1.n
    pairs = set(rel1.pairs)
    pairs.update((a + n1, b + n1) for a, b in rel2.pairs)
    if include_cross:
        pairs.update((a, b) for a in range(1, n1 + 1) for b in range(n1 + 1, n1 + rel2.n + 1))
    return BinaryRelation(frozenset(pairs), n1 + rel2.n)


def product_tally(rho1: VoteTally, rho2: VoteTally) -> VoteTally:
    """rho(w1 + w2) = rho1(w1) * rho2(w2), zero off the Young subgroup."""
    for name, rho in (("first", rho1), ("second", rho2)):
        if rho.total == 0:
            raise OutOfRange(f"the {name} factor tally has no votes")
    counts = {
        direct_sum(w1, w2): c1 * c2
        for w1, c1 in rho1.counts.items()
        for w2, c2 in rho2.counts.items()
    }
    return VoteTally(counts, rho1.n + rho2.n)
