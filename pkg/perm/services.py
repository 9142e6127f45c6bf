"""Permutations of [n], reduced words, inversion sets and direct sums.

Conventions:
    * One-line notation is 1-indexed everywhere.
    * Multiplying by ``s_i`` swaps the entries in positions ``i`` and ``i + 1`` of
      the one-line word built so far, so ``(2,1,3,2,6,5)`` walks
      1234567 -> 1324567 -> 3124567 -> 3142567 -> 3412567 -> 3412576 -> 3412756.
    * An inversion ``(a, b)`` always has ``a < b`` and means ``b`` appears before
      ``a``.
"""

import logging
import random
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from core.conf import get_engine_config
from core.exceptions import (
    DuplicateEntry,
    LetterOutOfRange,
    NotReduced,
    OutOfRange,
    UsageError,
)

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]


def pair_label(pair: Pair, n: int) -> str:
    """Render an inversion the short way ("13"), with a comma once n > 9."""
    a, b = pair
    return f"{a}{b}" if n <= 9 else f"{a},{b}"


def format_entries(entries: Sequence[int]) -> str:
    if len(entries) <= 9:
        return "".join(str(x) for x in entries)
    return ",".join(str(x) for x in entries)


def format_word(letters: Sequence[int]) -> str:
    return "(" + ",".join(str(i) for i in letters) + ")"


@dataclass(frozen=True)
class InversionSet:
    pairs: FrozenSet[Pair]
    n: int

    def __len__(self) -> int:
        return len(self.pairs)

    def __contains__(self, pair) -> bool:
        return pair in self.pairs

    def __iter__(self) -> Iterator[Pair]:
        return iter(sorted(self.pairs))

    def labels(self) -> List[str]:
        return [pair_label(pair, self.n) for pair in self]

    def __str__(self) -> str:
        return "{" + ",".join(self.labels()) + "}"


@dataclass(frozen=True)
class Permutation:
    entries: Tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.entries)

    @cached_property
    def positions(self) -> Dict[int, int]:
        return {value: index for index, value in enumerate(self.entries)}

    @cached_property
    def inversions(self) -> InversionSet:
        pairs = set()
        for i, later in enumerate(self.entries):
            for earlier in self.entries[:i]:
                if earlier > later:
                    pairs.add((later, earlier))
        return InversionSet(frozenset(pairs), self.n)

    @property
    def length(self) -> int:
        return len(self.inversions)

    def precedes(self, a: int, b: int) -> bool:
        """True iff ``a`` appears before ``b`` in the one-line word."""
        return self.positions[a] < self.positions[b]

    def is_identity(self) -> bool:
        return all(value == index + 1 for index, value in enumerate(self.entries))

    def __str__(self) -> str:
        return format_entries(self.entries)


def _walk(letters: Sequence[int], n: int) -> Tuple[List[int], bool]:
    entries = list(range(1, n + 1))
    reduced = True
    for letter in letters:
        if not 1 <= letter <= n - 1:
            raise LetterOutOfRange(
                f"letter {letter} is outside 1..{n - 1} for S_{n}",
                {"letter": letter, "n": n},
            )
        i = letter - 1
        if entries[i] > entries[i + 1]:
            reduced = False
        entries[i], entries[i + 1] = entries[i + 1], entries[i]
    return entries, reduced


@dataclass(frozen=True)
class ReducedWord:
    letters: Tuple[int, ...]
    n: int

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(int(i) for i in self.letters))
        if self.n < 1:
            raise OutOfRange(f"rank must be positive, got {self.n}", {"n": self.n})
        _, reduced = _walk(self.letters, self.n)
        if not reduced:
            raise NotReduced(
                f"{format_word(self.letters)} is not reduced in S_{self.n}",
                {"word": list(self.letters), "n": self.n},
            )

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __getitem__(self, index):
        return self.letters[index]

    @cached_property
    def permutation(self) -> Permutation:
        entries, _ = _walk(self.letters, self.n)
        return Permutation(tuple(entries))

    def prefix(self, length: int) -> "ReducedWord":
        return ReducedWord(self.letters[:length], self.n)

    def __str__(self) -> str:
        return format_word(self.letters)


def _check_rank(n: int) -> None:
    max_n = get_engine_config().MAX_N
    if n > max_n:
        raise OutOfRange(f"n={n} exceeds the configured maximum {max_n}", {"n": n})


def perm_from_one_line(entries: Iterable[int]) -> Permutation:
    entries = tuple(int(x) for x in entries)
    n = len(entries)
    if n == 0:
        raise OutOfRange("a permutation needs at least one entry")
    seen = set()
    for value in entries:
        if value in seen:
            raise DuplicateEntry(f"entry {value} appears twice", {"entry": value})
        seen.add(value)
    for value in entries:
        if not 1 <= value <= n:
            raise OutOfRange(f"entry {value} is outside 1..{n}", {"entry": value, "n": n})
    _check_rank(n)
    return Permutation(entries)


def identity(n: int) -> Permutation:
    return Permutation(tuple(range(1, n + 1)))


def longest(n: int) -> Permutation:
    return Permutation(tuple(range(n, 0, -1)))


def inversion_set(w: Permutation) -> InversionSet:
    return w.inversions


def apply_word(letters: Sequence[int], n: int) -> Permutation:
    """Right-multiply the identity of S_n by the generators, left to right."""
    entries, _ = _walk(tuple(letters), n)
    return Permutation(tuple(entries))


def is_reduced(letters: Sequence[int], n: int) -> bool:
    _, reduced = _walk(tuple(letters), n)
    return reduced


def reduced_word(letters: Sequence[int], n: Optional[int] = None) -> ReducedWord:
    """Build a checked ReducedWord; ``n`` defaults to one more than the largest letter."""
    letters = tuple(int(i) for i in letters)
    if n is None:
        if not letters:
            raise UsageError("the rank n is required for the empty word")
        n = max(letters) + 1
    _check_rank(n)
    return ReducedWord(letters, n)


def direct_sum(w1: Permutation, w2: Permutation) -> Permutation:
    return Permutation(w1.entries + tuple(value + w1.n for value in w2.entries))


def s_support(word: Union[ReducedWord, Sequence[int]], n: Optional[int] = None) -> FrozenSet[int]:
    if not isinstance(word, ReducedWord):
        word = reduced_word(word, n)
    return frozenset(word.letters)


def decompose(w: Permutation) -> List[Permutation]:
    """Split ``w`` into its finest direct-sum blocks."""
    blocks = []
    start = 0
    running_max = 0
    for index, value in enumerate(w.entries):
        running_max = max(running_max, value)
        if running_max == index + 1:
            blocks.append(
                Permutation(tuple(x - start for x in w.entries[start:index + 1]))
            )
            start = index + 1
    return blocks


def reduced_word_of(w: Permutation) -> ReducedWord:
    """Some reduced word of ``w``, found by sorting away the leftmost descent."""
    entries = list(w.entries)
    swaps = []
    descent = True
    while descent:
        descent = False
        for i in range(len(entries) - 1):
            if entries[i] > entries[i + 1]:
                entries[i], entries[i + 1] = entries[i + 1], entries[i]
                swaps.append(i + 1)
                descent = True
                break
    return ReducedWord(tuple(reversed(swaps)), w.n)


def random_reduced_word(n: int, length: int, rng: random.Random) -> ReducedWord:
    """Random reduced word of the given length (capped at n choose 2) by an ascent walk."""
    entries = list(range(1, n + 1))
    letters = []
    for _ in range(length):
        ascents = [i for i in range(n - 1) if entries[i] < entries[i + 1]]
        if not ascents:
            break
        i = rng.choice(ascents)
        entries[i], entries[i + 1] = entries[i + 1], entries[i]
        letters.append(i + 1)
    return ReducedWord(tuple(letters), n)


_SPLIT = re.compile(r"[\s,]+")


def _parse_integers(text: str, what: str) -> List[int]:
    body = text.strip().strip("()[]").strip()
    if not body:
        return []
    try:
        if "," in body or " " in body:
            return [int(token) for token in _SPLIT.split(body) if token]
        return [int(char) for char in body]
    except ValueError:
        raise UsageError(f"cannot parse {what} {text!r}")


def parse_permutation(text: str) -> Permutation:
    """Read one-line notation: bare digits for n <= 9, comma-separated otherwise."""
    return perm_from_one_line(_parse_integers(text, "permutation"))


def parse_word(text: str, n: Optional[int] = None) -> ReducedWord:
    """Read a word such as ``2,1,3,2,6,5`` or ``(2,1,3,2,6,5)``."""
    body = text.strip().strip("()[]").strip()
    try:
        letters = [int(token) for token in _SPLIT.split(body) if token]
    except ValueError:
        raise UsageError(f"cannot parse word {text!r}")
    return reduced_word(letters, n)
