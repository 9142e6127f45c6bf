import itertools
import json
from io import StringIO

from django.test import SimpleTestCase

from core.cli import EXIT_OK, run
from core.exceptions import OutOfRange
from majority.services import (
    BinaryRelation,
    VoteTally,
    brute_force_majority,
    majority_of_domain,
)
from perm.services import (
    decompose,
    perm_from_one_line,
    reduced_word,
    reduced_word_of,
)

from .serializers import FubiniResultSerializer
from .services import (
    fubini_majority,
    product_tally,
    product_tally_majority,
    split_class,
)

RUNNING_WORD = (2, 1, 3, 2, 6, 5)
S3 = [perm_from_one_line(p) for p in itertools.permutations((1, 2, 3))]


def run_cli(*argv):
    stdout, stderr = StringIO(), StringIO()
    code = run(list(argv), stdout=stdout, stderr=stderr)
    return code, stdout.getvalue(), stderr.getvalue()


class SplitClassTests(SimpleTestCase):
    def test_running_example(self):
        dec = split_class(reduced_word(RUNNING_WORD))
        self.assertEqual(
            [(b.offset, b.word.letters, b.size) for b in dec.blocks],
            [(0, (2, 1, 3, 2), 4), (4, (2, 1), 3)],
        )
        self.assertEqual(str(dec.blocks[1].word.permutation), "312")

    def test_indecomposable(self):
        dec = split_class(reduced_word((1, 2, 1)))
        self.assertEqual(len(dec), 1)
        self.assertEqual(dec.blocks[0].offset, 0)

    def test_support_gap(self):
        dec = split_class(reduced_word((1, 3), 4))
        self.assertEqual(
            [(b.offset, b.word.letters) for b in dec.blocks], [(0, (1,)), (2, (1,))]
        )

    def test_untouched_values_are_trivial_blocks(self):
        dec = split_class(reduced_word((1,), 4))
        self.assertEqual([b.offset for b in dec.blocks], [0, 2, 3])
        self.assertEqual(len(dec.nontrivial()), 1)
        self.assertEqual(list(dec.blocks[2].values), [4])


class FubiniTests(SimpleTestCase):
    def test_running_example(self):
        result = fubini_majority(split_class(reduced_word(RUNNING_WORD)))
        self.assertEqual([str(part.u) for part in result.parts], ["1324", "132"])
        self.assertEqual([str(part.v) for part in result.parts], ["3142", "132"])
        self.assertEqual(str(result.u), "1324576")
        self.assertEqual(str(result.v), "3142576")
        self.assertEqual(str(result.order), "{1 3} {2 4} 5 7 6")
        self.assertEqual(result.total, 18)

    def test_two_transpositions(self):
        result = fubini_majority(split_class(reduced_word((1, 3), 4)))
        self.assertEqual(str(result.order), "{1 2} {3 4}")
        self.assertEqual(result.total, 4)

    def test_matches_direct_computation_on_s6(self):
        for entries in itertools.permutations(range(1, 7)):
            w = perm_from_one_line(entries)
            if len(decompose(w)) == 1:
                continue
            word = reduced_word_of(w)
            result = fubini_majority(split_class(word))
            self.assertEqual(result.order, majority_of_domain(word), str(w))

    def test_serializer(self):
        data = FubiniResultSerializer(fubini_majority(split_class(reduced_word(RUNNING_WORD)))).data
        self.assertEqual(data["relation"], "{1 3} {2 4} 5 7 6")
        self.assertEqual(data["parts"][1]["block"], {"offset": 4, "size": 3, "word": [2, 1]})
        self.assertEqual(data["total"], "18")


class ProductTallyTests(SimpleTestCase):
    def test_disjoint_union(self):
        rel1 = BinaryRelation(frozenset({(1, 2)}), 2)
        rel2 = BinaryRelation(frozenset(), 2)
        self.assertEqual(product_tally_majority(rel1, rel2).pairs, frozenset({(1, 2)}))
        self.assertEqual(product_tally_majority(rel1, rel2).n, 4)

    def test_both_empty(self):
        empty = BinaryRelation(frozenset(), 2)
        self.assertEqual(product_tally_majority(empty, empty).pairs, frozenset())

    def test_zero_factor(self):
        with self.assertRaises(OutOfRange):
            product_tally(VoteTally({}, 2), VoteTally({S3[0]: 1}, 3))

    def test_product_tally_counts(self):
        rho1 = VoteTally({perm_from_one_line([2, 1]): 2}, 2)
        rho2 = VoteTally({S3[0]: 3, S3[-1]: 1}, 3)
        rho = product_tally(rho1, rho2)
        self.assertEqual(rho.total, 8)
        self.assertEqual(rho.get(perm_from_one_line([2, 1, 5, 4, 3])), 2)

    def test_matches_vote_count_over_s3_by_s3(self):
        """Within-block majorities carry over; across blocks every vote agrees."""
        fixed = [
            VoteTally({S3[0]: 1}, 3),
            VoteTally({w: 1 for w in S3}, 3),
            VoteTally({S3[1]: 2, S3[4]: 1, S3[5]: 2}, 3),
        ]
        for counts in itertools.product(range(3), repeat=len(S3)):
            if not any(counts):
                continue
            sweep = VoteTally(dict(zip(S3, counts)), 3)
            for other in fixed:
                for rho1, rho2 in ((sweep, other), (other, sweep)):
                    expected = brute_force_majority(product_tally(rho1, rho2))
                    rel1 = brute_force_majority(rho1)
                    rel2 = brute_force_majority(rho2)
                    self.assertEqual(
                        product_tally_majority(rel1, rel2, include_cross=True), expected
                    )
                    within = frozenset(
                        (a, b) for a, b in expected.pairs if (a <= 3) == (b <= 3)
                    )
                    self.assertEqual(product_tally_majority(rel1, rel2).pairs, within)


def test_cli_decompose():
    code, out, _ = run_cli("decompose", "--word", "2,1,3,2,6,5")
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert lines[-1] == "{1 3} {2 4} 5 7 6"
    assert lines[-2] == "u = 1324576, v = 3142576, |J| = 18"


def test_cli_decompose_json():
    code, out, _ = run_cli("decompose", "--word", "1,3", "--n", "4", "--json")
    assert code == EXIT_OK
    assert json.loads(out)["blocks"] == [[1, 2], [3, 4]]
