import itertools
import random
from functools import lru_cache

from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st

from core.constants import EngineConstants
from perm.services import (
    longest,
    perm_from_one_line,
    random_reduced_word,
    reduced_word,
)

from .serializers import HeapSerializer
from .services import (
    OrderIdeal,
    build_heap,
    commutation_class,
    commutation_classes,
    count_ideals,
    domain,
    heap_components,
    heap_leq,
    heap_to_dot,
    ideal_to_permutation,
    is_condorcet_domain,
    is_maximal,
    order_ideals,
    random_linear_extension,
    rank_classes,
    reduced_words,
)

RUNNING_WORD = (2, 1, 3, 2, 6, 5)


class HeapStructureTests(SimpleTestCase):
    def setUp(self):
        self.heap = build_heap(reduced_word(RUNNING_WORD))

    def test_inversion_labels(self):
        labels = [self.heap.label(x) for x in self.heap.elements]
        self.assertEqual(labels, ["23", "13", "24", "14", "67", "57"])

    def test_letter_and_position_labels(self):
        self.assertEqual(self.heap.label(5, EngineConstants.LabelMode.LETTER), "6")
        self.assertEqual(self.heap.label(5, EngineConstants.LabelMode.POSITION), "5")

    def test_covers(self):
        self.assertEqual(
            self.heap.covers, frozenset({(1, 2), (1, 3), (2, 4), (3, 4), (5, 6)})
        )
        self.assertTrue(self.heap.less(1, 4))
        self.assertFalse(self.heap.comparable(2, 3))
        self.assertFalse(self.heap.comparable(1, 5))

    def test_heap_leq(self):
        self.assertTrue(heap_leq(self.heap, 1, 4))
        self.assertTrue(heap_leq(self.heap, 2, 2))
        self.assertFalse(heap_leq(self.heap, 4, 1))
        self.assertFalse(heap_leq(self.heap, 2, 3))

    def test_components(self):
        self.assertEqual(heap_components(self.heap), [(1, 2, 3, 4), (5, 6)])

    def test_ideal_count(self):
        """A diamond has 6 ideals and a 2-chain has 3."""
        self.assertEqual(count_ideals(self.heap), 18)
        self.assertEqual(len(list(order_ideals(self.heap))), 18)

    def test_full_ideal_gives_w(self):
        full = OrderIdeal(self.heap.full_mask)
        self.assertEqual(str(ideal_to_permutation(self.heap, full)), "3412756")
        self.assertEqual(self.heap.labels(full.mask), self.heap.word.permutation.inversions)

    def test_element_of(self):
        self.assertEqual(self.heap.element_of((1, 4)), 4)

    def test_dot_export(self):
        dot = heap_to_dot(self.heap)
        self.assertTrue(dot.startswith("digraph heap {"))
        for x, label in enumerate(("23", "13", "24", "14", "67", "57"), start=1):
            self.assertRegex(dot, rf'x{x} \[label="?{label}"?\]')
        self.assertIn("x1 -> x2", dot)

    def test_serializer(self):
        data = HeapSerializer(self.heap).data
        self.assertEqual(data["size"], 6)
        self.assertEqual(data["covers"], [[1, 2], [1, 3], [2, 4], [3, 4], [5, 6]])
        self.assertEqual(data["elements"][1]["inversion"], "13")


class CommutationClassTests(SimpleTestCase):
    def test_running_class_size(self):
        """Two orders of the diamond, shuffled with a 2-chain in C(6,2) ways."""
        klass = commutation_class(reduced_word(RUNNING_WORD))
        self.assertEqual(klass.size, 30)
        self.assertIn(reduced_word((6, 2, 3, 5, 1, 2)), klass)
        self.assertEqual(klass.representative.letters, (2, 1, 3, 2, 6, 5))

    def test_limit_reached(self):
        klass = commutation_class(reduced_word(RUNNING_WORD), limit=5)
        self.assertTrue(klass.exceeded)
        self.assertIsNone(klass.size)

    def test_reduced_words_of_longest(self):
        """w0 in S_4 has 16 reduced words."""
        words = reduced_words(reduced_word((1, 2, 1, 3, 2, 1)))
        self.assertEqual(len(words), 16)
        self.assertEqual({w.permutation for w in words}, {longest(4)})


class DomainTests(SimpleTestCase):
    def test_domain_of_braid_word(self):
        perms = domain(build_heap(reduced_word((1, 2, 1))))
        self.assertEqual(sorted(str(w) for w in perms), ["123", "213", "231", "321"])

    def test_running_domain(self):
        heap = build_heap(reduced_word(RUNNING_WORD))
        perms = domain(heap)
        self.assertEqual(len(perms), 18)
        self.assertTrue(is_condorcet_domain(perms))
        self.assertFalse(is_maximal(heap))

    def test_cyclic_triple_is_not_condorcet(self):
        perms = [perm_from_one_line(p) for p in ([1, 2, 3], [2, 3, 1], [3, 1, 2])]
        self.assertFalse(is_condorcet_domain(perms))

    def test_maximal(self):
        self.assertTrue(is_maximal(build_heap(reduced_word((1, 2, 1)))))

    def test_empty_word(self):
        heap = build_heap(reduced_word((), 3))
        self.assertEqual(count_ideals(heap), 1)
        self.assertEqual([str(w) for w in domain(heap)], ["123"])


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=2, max_value=6), st.integers(min_value=0, max_value=15), st.randoms())
def test_domains_are_condorcet_and_count_matches(n, length, rng):
    heap = build_heap(random_reduced_word(n, length, rng))
    perms = domain(heap)
    assert len(perms) == count_ideals(heap)
    assert is_condorcet_domain(perms)


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=2, max_value=6), st.integers(min_value=0, max_value=15), st.randoms())
def test_linear_extensions_give_the_same_permutation(n, length, rng):
    heap = build_heap(random_reduced_word(n, length, rng))
    full = OrderIdeal(heap.full_mask)
    order = random_linear_extension(heap, full, random.Random(rng.random()))
    assert ideal_to_permutation(heap, full, order) == heap.word.permutation


def test_domain_members_share_no_cyclic_triple_exhaustively():
    for letters in itertools.permutations((1, 2, 3)):
        heap = build_heap(reduced_word(letters, 4))
        assert is_condorcet_domain(domain(heap))


@lru_cache(maxsize=None)
def classes_of_rank(n):
    return tuple(rank_classes(n))


class RankFiveSweepTests(SimpleTestCase):
    def test_class_count(self):
        self.assertEqual(len(classes_of_rank(5)), 476)

    def test_reduced_words_split_into_classes(self):
        word = reduced_word((1, 2, 1, 3, 2, 1))
        classes = commutation_classes(word)
        self.assertEqual(len(classes), 8)
        self.assertEqual(sum(klass.size for klass in classes), 16)

    def test_class_members_share_labelled_covers(self):
        for klass in classes_of_rank(5):
            expected = None
            for word in klass.members:
                heap = build_heap(word)
                covers = {(heap.inversion(x), heap.inversion(y)) for x, y in heap.covers}
                expected = covers if expected is None else expected
                self.assertEqual(covers, expected, str(word))

    def test_ideals_map_injectively_onto_their_labels(self):
        for klass in classes_of_rank(5):
            heap = build_heap(klass.representative)
            seen = set()
            for ideal in order_ideals(heap):
                w = ideal_to_permutation(heap, ideal)
                self.assertEqual(w.inversions, heap.labels(ideal.mask))
                seen.add(w)
            self.assertEqual(len(seen), count_ideals(heap), str(klass.representative))

    def test_inversions_sharing_a_value_are_comparable(self):
        for klass in classes_of_rank(5):
            heap = build_heap(klass.representative)
            for x, y in itertools.combinations(heap.elements, 2):
                if set(heap.inversion(x)) & set(heap.inversion(y)):
                    self.assertTrue(heap.comparable(x, y), (str(heap.word), x, y))
