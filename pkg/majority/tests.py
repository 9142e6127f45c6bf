import itertools
import json
import random
from collections import defaultdict
from io import StringIO

import pytest
from django.test import SimpleTestCase, override_settings
from hypothesis import given, settings
from hypothesis import strategies as st

from core.cli import EXIT_DOMAIN_ERROR, EXIT_OK, EXIT_USAGE, run
from core.exceptions import NotDecreasing, NotIntersectable, OutOfRange, SupportMismatch
from heap.services import OrderIdeal, build_heap, domain, rank_classes
from perm.services import parse_permutation, random_reduced_word, reduced_word

from .serializers import MajorityResultSerializer, VoteTallySerializer
from .services import (
    BinaryRelation,
    PrelinearOrder,
    TallyFunction,
    VoteTally,
    brute_force_majority,
    majority_of_domain,
    majority_report,
    majority_uv,
    prelinear_from_uv,
    random_positive_tally,
    tally_function,
    uniform_tally_function,
)

RUNNING_WORD = (2, 1, 3, 2, 6, 5)


def run_cli(*argv):
    stdout, stderr = StringIO(), StringIO()
    code = run(list(argv), stdout=stdout, stderr=stderr)
    return code, stdout.getvalue(), stderr.getvalue()


class UniformMajorityTests(SimpleTestCase):
    def setUp(self):
        self.result = majority_report(reduced_word(RUNNING_WORD))

    def test_tally_function(self):
        """Counts of ideals containing each inversion."""
        self.assertEqual(
            self.result.tally.labelled(),
            {"13": 9, "14": 3, "23": 15, "24": 9, "57": 6, "67": 12},
        )
        self.assertEqual(self.result.total, 18)

    def test_u_and_v(self):
        self.assertEqual(str(self.result.u), "1324576")
        self.assertEqual(str(self.result.v), "3142576")

    def test_majority_relation(self):
        self.assertEqual(str(self.result.order), "{1 3} {2 4} 5 7 6")
        self.assertEqual(self.result.order.tied_pairs(), [(1, 3), (2, 4)])
        self.assertEqual(self.result.order.max_block_size, 2)

    def test_agrees_with_vote_count(self):
        voters = VoteTally.uniform(domain(self.result.heap))
        self.assertEqual(brute_force_majority(voters), self.result.order.relation())

    def test_uniform_tally_counts_without_votes(self):
        heap = self.result.heap
        voters = VoteTally.uniform(domain(heap))
        self.assertEqual(
            uniform_tally_function(heap).values, tally_function(heap, voters).values
        )

    def test_majority_uv_from_tally(self):
        heap = self.result.heap
        u, v = majority_uv(heap, uniform_tally_function(heap), 18)
        self.assertEqual((str(u), str(v)), ("1324576", "3142576"))

    def test_majority_uv_requires_strict_decrease(self):
        heap = self.result.heap
        flat = TallyFunction({heap.inversion(x): 1 for x in heap.elements}, heap.n)
        with self.assertRaises(NotDecreasing):
            majority_uv(heap, flat, 2)

    def test_longest_in_s3_ties_the_middle(self):
        """Pre(C) for (1,2,1) is 123, 213, 231, 321: 2 ties with nobody, 1 and 3 tie."""
        order = majority_of_domain(reduced_word((1, 2, 1)))
        self.assertEqual(str(order), "2 {1 3}")

    def test_serializer_renders_counts_as_strings(self):
        data = MajorityResultSerializer(self.result).data
        self.assertEqual(data["relation"], "{1 3} {2 4} 5 7 6")
        self.assertEqual(data["total"], "18")
        self.assertEqual(data["tally"]["23"], "15")
        self.assertEqual(data["blocks"], [[1, 3], [2, 4], [5], [7], [6]])


class WeightedTallyTests(SimpleTestCase):
    def setUp(self):
        self.word = reduced_word(RUNNING_WORD)
        self.perms = domain(build_heap(self.word))

    def test_support_must_be_the_domain(self):
        perms = sorted(self.perms, key=lambda w: w.entries)
        rho = VoteTally({w: 1 for w in perms[1:]}, 7)
        with self.assertRaises(SupportMismatch):
            tally_function(build_heap(self.word), rho)

    def test_single_heavy_voter_wins(self):
        counts = {w: 1 for w in self.perms}
        counts[parse_permutation("3412756")] = 100
        rho = VoteTally(counts, 7)
        result = majority_report(self.word, rho)
        self.assertEqual(str(result.order), "3 4 1 2 7 5 6")
        self.assertEqual(result.order.relation(), brute_force_majority(rho))

    def test_negative_count(self):
        with self.assertRaises(OutOfRange):
            VoteTally({parse_permutation("12"): -1}, 2)


class PrelinearOrderTests(SimpleTestCase):
    def test_text_round_trip(self):
        order = PrelinearOrder.from_text("{1 3} {2 4} 5 7 6")
        self.assertEqual(str(order), "{1 3} {2 4} 5 7 6")
        self.assertEqual(order.partner(3), 1)
        self.assertIsNone(order.partner(5))

    def test_compact(self):
        self.assertEqual(PrelinearOrder.from_text("3 {2 4} {1 5}").compact(), "3{24}{15}")

    def test_relation_to_prelinear(self):
        order = PrelinearOrder.from_text("2 {1 3}")
        self.assertEqual(order.relation().to_prelinear(), order)

    def test_cycle_has_no_prelinear_form(self):
        cycle = BinaryRelation(frozenset({(1, 2), (2, 3), (3, 1)}), 3)
        self.assertIsNone(cycle.to_prelinear())
        self.assertTrue(cycle.is_antisymmetric())

    def test_not_intersectable(self):
        with self.assertRaises(NotIntersectable):
            prelinear_from_uv(parse_permutation("213"), parse_permutation("123"))
        with self.assertRaises(NotIntersectable):
            prelinear_from_uv(parse_permutation("12"), parse_permutation("123"))

    def test_total_order(self):
        order = prelinear_from_uv(parse_permutation("312"), parse_permutation("312"))
        self.assertTrue(order.is_total())
        self.assertEqual(str(order), "3 1 2")


class VoteTallySerializerTests(SimpleTestCase):
    def test_counts_as_strings_or_ints(self):
        serializer = VoteTallySerializer(data={"counts": {"123": 2, "213": "3"}})
        self.assertTrue(serializer.is_valid(), serializer.errors)
        rho = VoteTallySerializer.to_tally(serializer.validated_data)
        self.assertEqual(rho.total, 5)
        self.assertEqual(rho.n, 3)

    def test_mixed_ranks(self):
        serializer = VoteTallySerializer(data={"counts": {"12": 1, "123": 1}})
        self.assertFalse(serializer.is_valid())

    def test_no_votes(self):
        serializer = VoteTallySerializer(data={"counts": {"12": 0}})
        self.assertFalse(serializer.is_valid())

    def test_bad_count(self):
        serializer = VoteTallySerializer(data={"counts": {"12": -2}})
        self.assertFalse(serializer.is_valid())


class RankFiveSweepTests(SimpleTestCase):
    """Every commutation class in S_5 under the uniform tally."""

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.results = [majority_report(klass.representative) for klass in rank_classes(5)]

    def test_tally_strictly_decreases_up_the_heap(self):
        for result in self.results:
            heap, tally = result.heap, result.tally
            for x, y in itertools.permutations(heap.elements, 2):
                if heap.less(x, y):
                    self.assertGreater(
                        tally[heap.inversion(x)], tally[heap.inversion(y)], str(result.word)
                    )

    def test_ties_are_disjoint_pairs(self):
        for result in self.results:
            self.assertLessEqual(result.order.max_block_size, 2)
            tied = [value for pair in result.order.tied_pairs() for value in pair]
            self.assertEqual(len(tied), len(set(tied)))

    def test_level_sets(self):
        """Each level is an antichain of disjoint pairs and each upper level set is an ideal."""
        for result in self.results:
            heap, tally = result.heap, result.tally
            levels = defaultdict(set)
            for x in heap.elements:
                levels[tally[heap.inversion(x)]].add(x)
            for level, members in levels.items():
                for x, y in itertools.combinations(members, 2):
                    self.assertFalse(heap.comparable(x, y), str(result.word))
                    self.assertFalse(set(heap.inversion(x)) & set(heap.inversion(y)))
                ideal = OrderIdeal.of(
                    z for z in heap.elements if tally[heap.inversion(z)] >= level
                )
                for z in ideal.members:
                    self.assertEqual(heap.below_mask[z - 1] & ~ideal.mask, 0, str(result.word))

    def test_agrees_with_vote_count(self):
        for result in self.results:
            voters = VoteTally.uniform(domain(result.heap))
            self.assertEqual(
                brute_force_majority(voters), result.order.relation(), str(result.word)
            )


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=2, max_value=5), st.integers(min_value=0, max_value=10), st.randoms())
def test_fast_path_matches_vote_count(n, length, rng):
    word = random_reduced_word(n, length, rng)
    rho = random_positive_tally(domain(build_heap(word)), rng)
    result = majority_report(word, rho)
    assert result.order.relation() == brute_force_majority(rho)
    assert result.order.max_block_size <= 2


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=2, max_value=6), st.integers(min_value=0, max_value=15), st.randoms())
def test_uniform_path_matches_vote_count(n, length, rng):
    word = random_reduced_word(n, length, rng)
    order = majority_of_domain(word)
    voters = VoteTally.uniform(domain(build_heap(word)))
    assert order.relation() == brute_force_majority(voters)


def test_parallel_tally_matches_serial():
    word = reduced_word((1, 2, 1, 3, 2, 1, 4, 3, 2, 1))
    rho = random_positive_tally(domain(build_heap(word)), random.Random(7))
    serial = majority_report(word, rho, workers=1)
    parallel = majority_report(word, rho, workers=2)
    assert serial.tally == parallel.tally
    assert serial.order == parallel.order


def test_cli_majority_text():
    code, out, _ = run_cli("majority", "--word", "2,1,3,2,6,5")
    assert code == EXIT_OK
    assert out.strip() == "{1 3} {2 4} 5 7 6"


def test_cli_majority_json():
    code, out, _ = run_cli("majority", "--word", "2,1,3,2,6,5", "--json")
    assert code == EXIT_OK
    assert json.loads(out)["u"] == "1324576"


def test_cli_oracle():
    code, out, _ = run_cli("majority", "--word", "2,1,3,2,6,5", "--oracle")
    assert code == EXIT_OK
    assert out.strip() == "{1 3} {2 4} 5 7 6"


@override_settings(CONDORCET={"ORACLE_DOMAIN_LIMIT": 10})
def test_cli_oracle_respects_domain_limit():
    for extra in ("--oracle", "--random-tally"):
        code, _, err = run_cli("majority", "--word", "2,1,3,2,6,5", extra)
        assert code == EXIT_DOMAIN_ERROR
        assert json.loads(err)["error"] == "ResourceExceeded"


@pytest.mark.parametrize(
    "argv",
    [
        ("majority", "--word", "9,9"),
        ("majority", "--word", "1,5", "--n", "3"),
        ("majority",),
        ("nonsense",),
    ],
)
def test_cli_usage_errors(argv):
    code, _, err = run_cli(*argv)
    assert code == EXIT_USAGE
    assert json.loads(err)["error"] == "UsageError"


def test_cli_tally_file_with_wrong_support(tmp_path):
    path = tmp_path / "tally.json"
    path.write_text(json.dumps({"123": 1, "213": 1}))
    code, _, err = run_cli("majority", "--word", "1,2,1", "--tally", str(path))
    assert code == EXIT_DOMAIN_ERROR
    assert json.loads(err)["error"] == "SupportMismatch"


def test_cli_tally_file(tmp_path):
    path = tmp_path / "tally.json"
    path.write_text(json.dumps({"123": 1, "213": 1, "231": 1, "321": "5"}))
    code, out, _ = run_cli("majority", "--word", "1,2,1", "--tally", str(path))
    assert code == EXIT_OK
    assert out.strip() == "3 2 1"
