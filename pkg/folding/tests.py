import json
from io import StringIO

from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st

from core.cli import EXIT_DOMAIN_ERROR, EXIT_OK, EXIT_USAGE, run
from core.exceptions import InvalidFold, NotAntiautomorphism
from heap.services import OrderIdeal, build_heap, count_ideals, rank_classes
from majority.services import (
    majority_of_domain,
    majority_uv,
    prelinear_from_uv,
    uniform_tally_function,
)
from perm.services import random_reduced_word, reduced_word

from .serializers import FoldCertificateSerializer, FoldSerializer
from .services import (
    FoldingSymmetry,
    balance_check,
    check_folding,
    find_folding_symmetry,
    fold_from_involution,
    is_antiautomorphism,
    majority_from_fold,
)

RUNNING_WORD = (2, 1, 3, 2, 6, 5)
# swap the diamond's ends, fix its middle, swap the 2-chain
RUNNING_PHI = (4, 2, 3, 1, 6, 5)


def run_cli(*argv):
    stdout, stderr = StringIO(), StringIO()
    code = run(list(argv), stdout=stdout, stderr=stderr)
    return code, stdout.getvalue(), stderr.getvalue()


class FoldCheckTests(SimpleTestCase):
    def setUp(self):
        self.heap = build_heap(reduced_word(RUNNING_WORD))
        self.fold = FoldingSymmetry(
            phi=RUNNING_PHI, ideal=OrderIdeal.of([1, 2, 3, 5]), antichain=frozenset({2, 3})
        )

    def test_valid_fold(self):
        self.assertTrue(is_antiautomorphism(self.heap, RUNNING_PHI))
        self.assertTrue(check_folding(self.heap, self.fold))
        self.assertEqual(self.fold.fixed_points(), [2, 3])
        self.assertEqual(self.fold.swaps(), [(1, 4), (5, 6)])

    def test_majority_from_fold(self):
        u, v = majority_from_fold(self.heap, self.fold)
        self.assertEqual((str(u), str(v)), ("1324576", "3142576"))
        self.assertEqual(str(prelinear_from_uv(u, v)), "{1 3} {2 4} 5 7 6")

    def test_fold_from_involution(self):
        self.assertEqual(fold_from_involution(self.heap, RUNNING_PHI), self.fold)
        self.assertIsNone(fold_from_involution(self.heap, (1, 2, 3)))

    def test_identity_is_not_a_fold(self):
        identity = FoldingSymmetry(
            phi=(1, 2, 3, 4, 5, 6), ideal=OrderIdeal(self.heap.full_mask), antichain=frozenset()
        )
        self.assertFalse(check_folding(self.heap, identity))
        with self.assertRaises(InvalidFold):
            majority_from_fold(self.heap, identity)

    def test_wrong_antichain(self):
        fold = FoldingSymmetry(
            phi=RUNNING_PHI, ideal=OrderIdeal.of([1, 2, 3, 5]), antichain=frozenset({2})
        )
        self.assertFalse(check_folding(self.heap, fold))

    def test_ideal_must_be_downward_closed(self):
        fold = FoldingSymmetry(
            phi=RUNNING_PHI, ideal=OrderIdeal.of([2, 3, 5]), antichain=frozenset({2, 3})
        )
        self.assertFalse(check_folding(self.heap, fold))

    def test_balance(self):
        """tally(x) + tally(phi(x)) = |J(P)| everywhere."""
        self.assertTrue(balance_check(self.heap, RUNNING_PHI))
        with self.assertRaises(NotAntiautomorphism):
            balance_check(self.heap, (1, 2, 3, 4, 5, 6))

    def test_serializer_labels(self):
        data = FoldSerializer(self.fold, context={"heap": self.heap}).data
        self.assertEqual(data["fixed"], ["13", "24"])
        self.assertEqual(data["swaps"], [["23", "14"], ["67", "57"]])
        self.assertEqual(data["antichain"], ["13", "24"])


class FoldSearchTests(SimpleTestCase):
    def test_search_finds_running_fold(self):
        heap = build_heap(reduced_word(RUNNING_WORD))
        fold = find_folding_symmetry(heap)
        self.assertIsNotNone(fold)
        self.assertTrue(check_folding(heap, fold))
        u, v = majority_from_fold(heap, fold)
        self.assertEqual(str(prelinear_from_uv(u, v)), "{1 3} {2 4} 5 7 6")

    def test_empty_heap(self):
        fold = find_folding_symmetry(build_heap(reduced_word((), 3)))
        self.assertEqual(fold.phi, ())

    def test_chain(self):
        heap = build_heap(reduced_word((1, 2, 1)))
        fold = find_folding_symmetry(heap)
        self.assertEqual(fold.phi, (3, 2, 1))
        self.assertEqual(fold.antichain, frozenset({2}))


class FoldCertificateTests(SimpleTestCase):
    def test_positions_must_fit(self):
        serializer = FoldCertificateSerializer(
            data={"phi": [2, 1], "ideal": [1, 3], "antichain": []}
        )
        self.assertFalse(serializer.is_valid())

    def test_to_fold(self):
        serializer = FoldCertificateSerializer(
            data={"phi": list(RUNNING_PHI), "ideal": [1, 2, 3, 5], "antichain": [2, 3]}
        )
        self.assertTrue(serializer.is_valid(), serializer.errors)
        fold = FoldCertificateSerializer.to_fold(serializer.validated_data)
        self.assertEqual(fold.ideal, OrderIdeal.of([1, 2, 3, 5]))


class RankFiveFoldTests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.folded = []
        for klass in rank_classes(5):
            heap = build_heap(klass.representative)
            fold = find_folding_symmetry(heap)
            if fold is not None:
                cls.folded.append((heap, fold))

    def test_fold_count(self):
        self.assertEqual(len(self.folded), 138)

    def test_every_fold_gives_the_uniform_majority(self):
        for heap, fold in self.folded:
            self.assertTrue(check_folding(heap, fold), str(heap.word))
            expected = majority_uv(heap, uniform_tally_function(heap), count_ideals(heap))
            self.assertEqual(majority_from_fold(heap, fold), expected, str(heap.word))
            self.assertTrue(balance_check(heap, fold.phi), str(heap.word))

    def test_ideal_holds_the_upper_half_of_the_tally(self):
        """Ties sit exactly on the antichain; I is above half and phi(I) below."""
        for heap, fold in self.folded:
            tally = uniform_tally_function(heap)
            total = count_ideals(heap)
            image = {fold.image(x) for x in fold.ideal.members}
            for x in fold.ideal.members:
                doubled = 2 * tally[heap.inversion(x)]
                self.assertGreaterEqual(doubled, total, str(heap.word))
                self.assertEqual(doubled == total, x in fold.antichain, str(heap.word))
            for x in image:
                doubled = 2 * tally[heap.inversion(x)]
                self.assertLessEqual(doubled, total, str(heap.word))
                self.assertEqual(doubled == total, x in fold.antichain, str(heap.word))

    def test_choice_of_fold_does_not_change_the_majority(self):
        """x3 is fixed and the two bottom elements may pair with either top element."""
        heap = build_heap(reduced_word((1, 3, 2, 1, 3)))
        first = fold_from_involution(heap, (4, 5, 3, 1, 2))
        second = fold_from_involution(heap, (5, 4, 3, 2, 1))
        self.assertIsNotNone(first)
        self.assertIsNotNone(second)
        self.assertNotEqual(first.phi, second.phi)
        self.assertEqual(first.antichain, frozenset({3}))
        self.assertEqual(majority_from_fold(heap, first), majority_from_fold(heap, second))
        self.assertEqual(
            prelinear_from_uv(*majority_from_fold(heap, second)), majority_of_domain(heap.word)
        )


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=2, max_value=6), st.integers(min_value=0, max_value=12), st.randoms())
def test_any_fold_gives_the_uniform_majority(n, length, rng):
    word = random_reduced_word(n, length, rng)
    heap = build_heap(word)
    fold = find_folding_symmetry(heap)
    if fold is not None:
        assert check_folding(heap, fold)
        assert prelinear_from_uv(*majority_from_fold(heap, fold)) == majority_of_domain(word)


def test_cli_fold():
    code, out, _ = run_cli("fold", "--word", "2,1,3,2,6,5")
    assert code == EXIT_OK
    assert out.strip().splitlines()[-1] == "{1 3} {2 4} 5 7 6"


def test_cli_certify(tmp_path):
    path = tmp_path / "fold.json"
    path.write_text(
        json.dumps({"phi": list(RUNNING_PHI), "ideal": [1, 2, 3, 5], "antichain": [2, 3]})
    )
    code, out, _ = run_cli("fold", "--word", "2,1,3,2,6,5", "--certify", str(path), "--json")
    assert code == EXIT_OK
    assert json.loads(out)["relation"] == "{1 3} {2 4} 5 7 6"


def test_cli_certify_rejects_bad_fold(tmp_path):
    path = tmp_path / "fold.json"
    path.write_text(json.dumps({"phi": [1, 2, 3, 4, 5, 6], "ideal": [1], "antichain": []}))
    code, _, err = run_cli("fold", "--word", "2,1,3,2,6,5", "--certify", str(path))
    assert code == EXIT_DOMAIN_ERROR
    assert json.loads(err)["error"] == "InvalidFold"


def test_cli_certify_missing_file(tmp_path):
    code, _, _ = run_cli("fold", "--word", "1,2,1", "--certify", str(tmp_path / "none.json"))
    assert code == EXIT_USAGE
