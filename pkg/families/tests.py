import json
from io import StringIO

import pytest
from django.test import SimpleTestCase

from core.cli import EXIT_DOMAIN_ERROR, EXIT_OK, run
from core.exceptions import NoClosedForm, ParamOutOfRange, ResourceExceeded
from heap.services import commutation_class
from majority.services import prelinear_from_uv
from perm.services import longest

from .constants import FamilyConstants
from .services import (
    FamilySpec,
    bipartite_pattern,
    check_conjecture,
    closed_form_uv,
    cocktail_shaker_letters,
    family_word,
    predicted_majority,
    sweep_conjecture,
    verify_family,
)

Kind = FamilyConstants.Kind
Variant = FamilyConstants.Variant

N16_TABLE = {
    0: "{1 2} {3 4} {5 6} {7 8} {9 10} {11 12} {13 14} {15 16}",
    2: "{2 4} {1 6} {3 8} {5 10} {7 12} {9 14} {11 16} {13 15}",
    5: "6 {4 8} {2 10} {1 12} {3 14} {5 16} {7 15} {9 13} 11",
}


def run_cli(*argv):
    stdout, stderr = StringIO(), StringIO()
    code = run(list(argv), stdout=stdout, stderr=stderr)
    return code, stdout.getvalue(), stderr.getvalue()


class FamilyWordTests(SimpleTestCase):
    def test_cocktail_shaker(self):
        word = family_word(FamilySpec(Kind.COCKTAIL_SHAKER, n=6))
        self.assertEqual(word.letters, (5, 4, 3, 2, 1, 2, 3, 4, 5, 4, 3, 2, 3, 4, 3))
        self.assertEqual(word.permutation, longest(6))

    def test_cocktail_shaker_variants_are_single_word_classes(self):
        for variant in Variant.values:
            word = family_word(FamilySpec(Kind.COCKTAIL_SHAKER, n=6, variant=variant))
            self.assertEqual(word.permutation, longest(6))
            self.assertEqual(commutation_class(word).size, 1)

    def test_lex_first(self):
        word = family_word(FamilySpec(Kind.LEX_FIRST, n=4))
        self.assertEqual(word.letters, (1, 2, 1, 3, 2, 1))
        self.assertEqual(word.permutation, longest(4))

    def test_bipartite_word(self):
        """(c_odd c_even)^3 c_odd in S_10 has seven ranks."""
        word = family_word(FamilySpec(Kind.BIPARTITE_POWER, n=10, p=3))
        self.assertEqual(len(word), 32)
        self.assertEqual(word.letters[:9], (1, 3, 5, 7, 9, 2, 4, 6, 8))
        self.assertEqual(word.letters[-5:], (1, 3, 5, 7, 9))

    def test_diamond_word(self):
        word = family_word(FamilySpec(Kind.DIAMOND, k=3))
        self.assertEqual(word.letters, (3, 2, 4, 1, 3, 5, 2, 4, 3))
        self.assertEqual(word.n, 6)

    def test_singleton_word(self):
        word = family_word(FamilySpec(Kind.SINGLETON_WORD, word=(1, 2, 1)))
        self.assertEqual(word.n, 3)

    def test_odd_cocktail_shaker(self):
        self.assertEqual(cocktail_shaker_letters(3), (2, 1, 2))


class FamilyParameterTests(SimpleTestCase):
    def test_bipartite_power_too_large(self):
        with self.assertRaises(ParamOutOfRange):
            family_word(FamilySpec(Kind.BIPARTITE_POWER, n=10, p=5))

    def test_without_trailing_allows_half(self):
        word = family_word(FamilySpec(Kind.BIPARTITE_POWER, n=4, p=2, trailing_odd=False))
        self.assertEqual(word.permutation, longest(4))

    def test_diamond_needs_k(self):
        with self.assertRaises(ParamOutOfRange):
            family_word(FamilySpec(Kind.DIAMOND, k=0))

    def test_variant_only_for_cocktail_shaker(self):
        with self.assertRaises(ParamOutOfRange):
            family_word(FamilySpec(Kind.LEX_FIRST, n=4, variant=Variant.REVERSE))

    def test_singleton_word_must_be_alone_in_its_class(self):
        with self.assertRaises(ParamOutOfRange):
            family_word(FamilySpec(Kind.SINGLETON_WORD, word=(1, 3)))

    def test_rank_limit(self):
        with self.settings(CONDORCET={"MAX_N": 8}):
            with self.assertRaises(ParamOutOfRange):
                family_word(FamilySpec(Kind.LEX_FIRST, n=9))

    def test_no_closed_form_without_trailing(self):
        spec = FamilySpec(Kind.BIPARTITE_POWER, n=6, p=2, trailing_odd=False)
        with self.assertRaises(NoClosedForm):
            predicted_majority(spec)
        self.assertTrue(predicted_majority(spec, conjecture=True).is_total())


class PredictionTests(SimpleTestCase):
    def test_lex_first_odd(self):
        self.assertEqual(str(predicted_majority(FamilySpec(Kind.LEX_FIRST, n=5))), "3 {2 4} {1 5}")

    def test_lex_first_even(self):
        self.assertEqual(str(predicted_majority(FamilySpec(Kind.LEX_FIRST, n=4))), "{2 3} {1 4}")

    def test_diamond(self):
        self.assertEqual(
            str(predicted_majority(FamilySpec(Kind.DIAMOND, k=4))), "{1 5} {2 6} {3 7} {4 8}"
        )

    def test_n16_table(self):
        for p, expected in N16_TABLE.items():
            self.assertEqual(str(bipartite_pattern(16, p)), expected)

    def test_small_patterns(self):
        self.assertEqual(str(bipartite_pattern(5, 1)), "2 {1 4} {3 5}")
        self.assertEqual(str(bipartite_pattern(5, 2)), "{2 4} {1 5} 3")
        self.assertEqual(str(bipartite_pattern(4, 1)), "2 {1 4} 3")
        self.assertEqual(str(bipartite_pattern(3, 1)), "2 {1 3}")

    def test_pattern_matches_closed_form_uv(self):
        for n in range(2, 13):
            for p in range((n - 1) // 2 + 1):
                spec = FamilySpec(Kind.BIPARTITE_POWER, n=n, p=p)
                self.assertEqual(
                    bipartite_pattern(n, p), prelinear_from_uv(*closed_form_uv(spec)), (n, p)
                )


class VerifyFamilyTests(SimpleTestCase):
    def assertVerified(self, spec):
        report = verify_family(spec)
        self.assertTrue(report.match, f"{spec}: {report.predicted} != {report.computed}")
        self.assertTrue(report.fold_valid, str(spec))
        self.assertTrue(report.fold_match, str(spec))
        self.assertTrue(report.balanced, str(spec))
        return report

    def test_cocktail_shaker(self):
        report = self.assertVerified(FamilySpec(Kind.COCKTAIL_SHAKER, n=6))
        self.assertEqual(str(report.computed), "6 2 3 {1 4} 5")
        self.assertEqual(report.ideal_count, 16)

    def test_cocktail_shaker_reverse(self):
        report = self.assertVerified(
            FamilySpec(Kind.COCKTAIL_SHAKER, n=6, variant=Variant.REVERSE)
        )
        self.assertEqual(str(report.computed), "1 5 4 {3 6} 2")

    def test_all_cocktail_shaker_variants(self):
        for n in range(2, 9):
            for variant in Variant.values:
                self.assertVerified(FamilySpec(Kind.COCKTAIL_SHAKER, n=n, variant=variant))

    def test_lex_first(self):
        for n in range(2, 11):
            self.assertVerified(FamilySpec(Kind.LEX_FIRST, n=n))

    def test_bipartite_with_trailing_odd(self):
        for n in range(2, 13):
            for p in range((n - 1) // 2 + 1):
                self.assertVerified(FamilySpec(Kind.BIPARTITE_POWER, n=n, p=p))

    def test_diamond(self):
        for k in range(1, 7):
            self.assertVerified(FamilySpec(Kind.DIAMOND, k=k))

    def test_singleton_word(self):
        report = self.assertVerified(FamilySpec(Kind.SINGLETON_WORD, word=(2, 1, 2, 3)))
        self.assertEqual(report.heap_size, 4)

    def test_bipartite_n16(self):
        for p in range(6):
            report = self.assertVerified(FamilySpec(Kind.BIPARTITE_POWER, n=16, p=p))
            if p in N16_TABLE:
                self.assertEqual(str(report.computed), N16_TABLE[p])

    def test_cocktail_shaker_classes_are_single_words(self):
        for n in range(2, 9):
            for variant in Variant.values:
                word = family_word(FamilySpec(Kind.COCKTAIL_SHAKER, n=n, variant=variant))
                self.assertEqual(commutation_class(word).size, 1, (n, variant))


class ConjectureTests(SimpleTestCase):
    def test_n4_p2(self):
        report = check_conjecture(4, 2)
        self.assertEqual(str(report.computed), "2 4 1 3")
        self.assertTrue(report.holds)
        self.assertTrue(report.oracle_match)
        self.assertEqual(report.ideal_count, 9)

    def test_n2_p1_ties(self):
        """c_odd in S_2 ties 1 and 2, which is not a total order."""
        report = check_conjecture(2, 1)
        self.assertEqual(str(report.computed), "{1 2}")
        self.assertEqual(str(report.conjectured), "2 1")
        self.assertFalse(report.holds)

    def test_out_of_range(self):
        with self.assertRaises(ParamOutOfRange):
            check_conjecture(4, 3)
        with self.settings(CONDORCET={"MAX_N": 6}):
            with self.assertRaises(ResourceExceeded):
                check_conjecture(7, 1)

    def test_sweep(self):
        reports = sweep_conjecture(max_n=4)
        self.assertEqual([(r.n, r.p) for r in reports], [(2, 1), (3, 1), (4, 1), (4, 2)])
        self.assertEqual([r.holds for r in reports], [False, True, True, True])

    def test_sweep_to_n8(self):
        reports = sweep_conjecture(max_n=8)
        self.assertEqual([(r.n, r.p) for r in reports if not r.holds], [(2, 1)])
        for report in reports:
            self.assertIn(report.oracle_match, (True, None), (report.n, report.p))

    def test_sweep_in_parallel(self):
        serial = sweep_conjecture(max_n=5, min_n=5, workers=1)
        parallel = sweep_conjecture(max_n=5, min_n=5, workers=2)
        self.assertEqual(
            [(r.computed, r.holds) for r in serial], [(r.computed, r.holds) for r in parallel]
        )


def test_cli_family_verify():
    code, out, _ = run_cli("family", "--kind", "cocktail_shaker", "--n", "6", "--verify", "--json")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["match"] is True
    assert data["computed"] == "6 2 3 {1 4} 5"
    assert data["ideal_count"] == "16"


def test_cli_family_prediction():
    code, out, _ = run_cli("family", "--kind", "diamond", "--k", "4")
    assert code == EXIT_OK
    assert out.strip().splitlines()[-1] == "predicted = {1 5} {2 6} {3 7} {4 8}"


def test_cli_family_out_of_range():
    code, _, err = run_cli("family", "--kind", "bipartite_power", "--n", "10", "--p", "5")
    assert code == EXIT_DOMAIN_ERROR
    assert json.loads(err)["error"] == "ParamOutOfRange"


@pytest.mark.parametrize("extra", [[], ["--p", "2"]])
def test_cli_conjecture(extra):
    code, out, _ = run_cli("conjecture", "--n", "4", "--json", *extra)
    assert code == EXIT_OK
    reports = json.loads(out)
    assert reports[-1]["p"] == 2
    assert reports[-1]["holds"] is True
