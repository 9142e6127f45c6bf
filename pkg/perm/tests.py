import itertools
from functools import reduce

import pytest
from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st

from core.exceptions import (
    DuplicateEntry,
    LetterOutOfRange,
    NotReduced,
    OutOfRange,
    UsageError,
)
from heap.services import reduced_words

from .serializers import PermutationSerializer, ReducedWordSerializer
from .services import (
    apply_word,
    decompose,
    direct_sum,
    identity,
    inversion_set,
    is_reduced,
    longest,
    parse_permutation,
    parse_word,
    perm_from_one_line,
    random_reduced_word,
    reduced_word,
    reduced_word_of,
    s_support,
)

RUNNING_WORD = (2, 1, 3, 2, 6, 5)


class PermutationTests(SimpleTestCase):
    def test_inversions_of_running_example(self):
        """Inversions are listed as pairs a < b with b first."""
        w = perm_from_one_line([3, 4, 1, 2, 7, 5, 6])
        self.assertEqual(w.inversions.labels(), ["13", "14", "23", "24", "57", "67"])
        self.assertEqual(w.length, 6)
        self.assertEqual(str(w.inversions), "{13,14,23,24,57,67}")

    def test_inversion_set(self):
        w = perm_from_one_line([3, 4, 1, 2, 7, 5, 6])
        self.assertEqual(inversion_set(w), w.inversions)
        self.assertIn((5, 7), inversion_set(w))
        self.assertNotIn((1, 2), inversion_set(w))

    def test_identity_has_no_inversions(self):
        self.assertEqual(len(identity(5).inversions), 0)
        self.assertTrue(identity(5).is_identity())

    def test_longest_has_all_pairs(self):
        self.assertEqual(longest(5).length, 10)

    def test_duplicate_entry(self):
        with self.assertRaises(DuplicateEntry):
            perm_from_one_line([1, 1, 2])

    def test_entry_out_of_range(self):
        with self.assertRaises(OutOfRange):
            perm_from_one_line([1, 4, 2])

    def test_precedes(self):
        w = parse_permutation("3412756")
        self.assertTrue(w.precedes(3, 1))
        self.assertFalse(w.precedes(5, 7))

    def test_wide_permutations_use_commas(self):
        w = parse_permutation("10,9,8,7,6,5,4,3,2,1")
        self.assertEqual(w, longest(10))
        self.assertEqual(str(w), "10,9,8,7,6,5,4,3,2,1")
        self.assertIn((9, 10), w.inversions)
        self.assertEqual(w.inversions.labels()[0], "1,2")


class ReducedWordTests(SimpleTestCase):
    def test_running_word_walk(self):
        """Each generator swaps two adjacent positions of the word built so far."""
        self.assertEqual(str(apply_word(RUNNING_WORD, 7)), "3412756")
        word = reduced_word(RUNNING_WORD)
        self.assertEqual(word.n, 7)
        self.assertEqual(str(word.permutation), "3412756")

    def test_prefix(self):
        word = reduced_word(RUNNING_WORD)
        self.assertEqual(str(word.prefix(3).permutation), "3142567")

    def test_repeated_letter_is_not_reduced(self):
        self.assertFalse(is_reduced((1, 1), 2))
        with self.assertRaises(NotReduced):
            reduced_word((9, 9))

    def test_letter_out_of_range(self):
        with self.assertRaises(LetterOutOfRange):
            reduced_word((1, 5), 3)

    def test_empty_word_needs_rank(self):
        with self.assertRaises(UsageError):
            reduced_word(())
        self.assertTrue(reduced_word((), 4).permutation.is_identity())

    def test_rank_above_configured_maximum(self):
        with self.settings(CONDORCET={"MAX_N": 5}):
            with self.assertRaises(OutOfRange):
                reduced_word((1,), 6)

    def test_s_support(self):
        self.assertEqual(s_support(RUNNING_WORD), frozenset({1, 2, 3, 5, 6}))

    def test_s_support_is_shared_by_all_reduced_words(self):
        """s_i is used iff w does not fix {1..i} as a set."""
        for entries in itertools.permutations(range(1, 6)):
            w = perm_from_one_line(entries)
            if w.length > 8:
                continue
            expected = frozenset(i for i in range(1, 5) if max(entries[:i]) > i)
            for word in reduced_words(reduced_word_of(w)):
                self.assertEqual(s_support(word), expected, str(word))

    def test_parse_word_forms(self):
        self.assertEqual(parse_word("(2,1,3,2,6,5)").letters, RUNNING_WORD)
        self.assertEqual(parse_word("2 1 3 2 6 5").letters, RUNNING_WORD)
        with self.assertRaises(UsageError):
            parse_word("2,x")


class DirectSumTests(SimpleTestCase):
    def test_running_example_blocks(self):
        w = parse_permutation("3412756")
        self.assertEqual([str(block) for block in decompose(w)], ["3412", "312"])
        self.assertEqual(direct_sum(parse_permutation("3412"), parse_permutation("312")), w)

    def test_indecomposable(self):
        self.assertEqual(decompose(longest(4)), [longest(4)])

    def test_direct_sum_inverts_decompose(self):
        for n in range(1, 7):
            for entries in itertools.permutations(range(1, n + 1)):
                w = perm_from_one_line(entries)
                self.assertEqual(reduce(direct_sum, decompose(w)), w)


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=1, max_value=8).flatmap(
    lambda n: st.permutations(list(range(1, n + 1)))
))
def test_reduced_word_of_has_length_of_permutation(entries):
    w = perm_from_one_line(entries)
    word = reduced_word_of(w)
    assert word.permutation == w
    assert len(word) == w.length


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=2, max_value=9), st.integers(min_value=0, max_value=40), st.randoms())
def test_random_reduced_word_is_reduced(n, length, rng):
    word = random_reduced_word(n, length, rng)
    assert len(word) == min(length, n * (n - 1) // 2)
    assert is_reduced(word.letters, n)


def test_permutation_serializer():
    data = PermutationSerializer(parse_permutation("3412756")).data
    assert data["one_line"] == "3412756"
    assert data["length"] == "6"
    assert data["inversions"] == ["13", "14", "23", "24", "57", "67"]


def test_reduced_word_serializer():
    data = ReducedWordSerializer(reduced_word(RUNNING_WORD)).data
    assert data["letters"] == list(RUNNING_WORD)
    assert data["n"] == 7


@pytest.mark.parametrize("text", ["", "()"])
def test_parse_empty_word_needs_rank(text):
    with pytest.raises(UsageError):
        parse_word(text)
