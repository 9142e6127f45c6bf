import json
from io import StringIO

import pytest
from django.test import SimpleTestCase, TestCase

from core.cli import EXIT_DOMAIN_ERROR, EXIT_OK, run
from core.exceptions import BudgetExceeded, NotLongestPermutation, ResourceExceeded
from families.constants import FamilyConstants
from families.services import FamilySpec, family_word
from heap.services import commutation_class
from majority.services import majority_of_domain
from perm.services import reduced_word

from .constants import BruhatConstants
from .models import BruhatRun
from .services import (
    BruhatCheckpointService,
    bruhat_to_dot,
    class_partition_by_triples,
    cover_diff,
    cover_diff_report,
    cover_records_jsonl,
    enumerate_bruhat,
    felsner_weil_check,
    inversion_triples,
    singleton_classes,
    yang_baxter_neighbors,
)

LOWER_WORD = (2, 3, 1, 2, 1, 3, 4, 3, 2, 1)
UPPER_WORD = (2, 3, 2, 1, 2, 3, 4, 3, 2, 1)


def run_cli(*argv):
    stdout, stderr = StringIO(), StringIO()
    code = run(list(argv), stdout=stdout, stderr=stderr)
    return code, stdout.getvalue(), stderr.getvalue()


class InversionTripleTests(SimpleTestCase):
    def test_worked_example(self):
        self.assertEqual(inversion_triples(reduced_word(LOWER_WORD)).labels(), ["123", "124"])
        self.assertEqual(
            inversion_triples(reduced_word(UPPER_WORD)).labels(), ["123", "124", "134"]
        )

    def test_lex_first_has_none(self):
        for n in range(3, 7):
            word = family_word(FamilySpec(FamilyConstants.Kind.LEX_FIRST, n=n))
            self.assertEqual(len(inversion_triples(word)), 0)

    def test_requires_longest(self):
        with self.assertRaises(NotLongestPermutation):
            inversion_triples(reduced_word((1, 2)))

    def test_commuting_moves_keep_triples(self):
        klass = commutation_class(reduced_word(LOWER_WORD))
        triples = {inversion_triples(word).key for word in klass.members}
        self.assertEqual(len(triples), 1)


class YangBaxterTests(SimpleTestCase):
    def test_defining_relation(self):
        self.assertEqual(
            [(p, w.letters) for p, w in yang_baxter_neighbors(reduced_word((1, 2, 1)))],
            [(1, (2, 1, 2))],
        )

    def test_worked_example(self):
        neighbors = dict(yang_baxter_neighbors(reduced_word(LOWER_WORD)))
        self.assertEqual(sorted(neighbors), [3, 6])
        self.assertEqual(neighbors[3].letters, UPPER_WORD)

    def test_no_braid_substring(self):
        self.assertEqual(yang_baxter_neighbors(reduced_word((1, 3))), [])


class EnumerationTests(SimpleTestCase):
    def test_b32_is_a_chain(self):
        poset = enumerate_bruhat(3)
        self.assertEqual(len(poset), 2)
        self.assertEqual(len(poset.covers), 1)
        self.assertEqual(poset.bottom.representative.letters, (1, 2, 1))
        self.assertEqual(poset.top.representative.letters, (2, 1, 2))
        self.assertEqual(str(poset.bottom.majority), "2 {1 3}")
        self.assertEqual(str(poset.top.majority), "{1 3} 2")

    def test_b42_is_an_octagon(self):
        poset = enumerate_bruhat(4)
        self.assertEqual(len(poset), 8)
        self.assertEqual(len(poset.covers), 8)
        self.assertEqual(poset.bottom.class_id, BruhatConstants.NO_TRIPLES)
        self.assertEqual(poset.top.class_id, BruhatConstants.ALL_TRIPLES)
        self.assertTrue(felsner_weil_check(poset))

    def test_b52(self):
        poset = enumerate_bruhat(5)
        self.assertEqual(len(poset), 62)
        self.assertEqual(len(poset.bottom.inversion_triples), 0)
        self.assertEqual(len(poset.top.inversion_triples), 10)
        self.assertEqual(poset.top.majority.compact(), "{15}{24}3")
        self.assertEqual(poset.bottom.majority.compact(), "3{24}{15}")
        self.assertEqual(poset.node([(1, 2, 3), (1, 2, 4)]).majority.compact(), "34215")
        self.assertEqual(
            poset.node([(1, 2, 3), (1, 2, 4), (1, 3, 4)]).majority.compact(), "43125"
        )
        self.assertTrue(felsner_weil_check(poset))

    def test_node_labels_match_recomputation(self):
        poset = enumerate_bruhat(4)
        for node in poset.nodes.values():
            self.assertEqual(node.majority, majority_of_domain(node.representative))
            self.assertEqual(inversion_triples(node.representative), node.inversion_triples)

    def test_every_cover_adds_one_triple(self):
        poset = enumerate_bruhat(5)
        for (lower, upper), triple in poset.covers.items():
            self.assertEqual(set(upper) - set(lower), {triple})

    def test_classes_are_identified_by_triples(self):
        for n in (3, 4, 5):
            for key, words in class_partition_by_triples(n).items():
                klass = commutation_class(next(iter(words)))
                self.assertEqual(klass.members, words, key)

    def test_singleton_classes(self):
        poset = enumerate_bruhat(4)
        singles = {node.representative.letters for node in singleton_classes(poset)}
        expected = {
            family_word(FamilySpec(FamilyConstants.Kind.COCKTAIL_SHAKER, n=4, variant=v)).letters
            for v in FamilyConstants.Variant.values
        }
        self.assertEqual(singles, expected)

    def test_singleton_classes_of_rank_five(self):
        singles = singleton_classes(enumerate_bruhat(5))
        self.assertEqual(len(singles), 4)
        for node in singles:
            self.assertEqual(commutation_class(node.representative).size, 1)

    def test_budget_and_resume(self):
        with self.assertRaises(BudgetExceeded) as caught:
            enumerate_bruhat(4, limit=3)
        state = caught.exception.state
        self.assertEqual(len(state.nodes), 3)
        resumed = enumerate_bruhat(4, limit=100, state=state)
        fresh = enumerate_bruhat(4)
        self.assertEqual(set(resumed.nodes), set(fresh.nodes))
        self.assertEqual(resumed.covers, fresh.covers)

    def test_rank_limit(self):
        with self.assertRaises(ResourceExceeded):
            enumerate_bruhat(7)


class CoverDiffTests(SimpleTestCase):
    def test_worked_cover(self):
        poset = enumerate_bruhat(5)
        lower = poset.node([(1, 2, 3), (1, 2, 4)])
        upper = poset.node([(1, 2, 3), (1, 2, 4), (1, 3, 4)])
        diff = cover_diff(lower, upper, (1, 3, 4))
        self.assertEqual(diff.changed_values, frozenset({1, 2, 3, 4}))
        self.assertNotIn(5, diff.changed_values)
        self.assertTrue(diff.outside_triple)
        self.assertFalse(diff.outside_range)

    def test_report_covers_every_edge(self):
        poset = enumerate_bruhat(4)
        diffs = list(cover_diff_report(poset))
        self.assertEqual(len(diffs), len(poset.covers))

    def test_b32_record(self):
        text = cover_records_jsonl(enumerate_bruhat(3))
        records = [json.loads(line) for line in text.splitlines()]
        self.assertEqual(
            records,
            [
                {
                    "added_triple": "123",
                    "lower": "none",
                    "upper": "all",
                    "maj_lower": "2 {1 3}",
                    "maj_upper": "{1 3} 2",
                    "changed_values": [1, 2, 3],
                    "moved_block": [1, 2, 3],
                    "changed_partner": [],
                    "outside_triple": False,
                    "outside_range": False,
                }
            ],
        )

    def test_dot(self):
        dot = bruhat_to_dot(enumerate_bruhat(3))
        self.assertTrue(dot.startswith("digraph B3_2 {"))
        self.assertIn('c0 [label="2{13}\\nnone"]', dot)
        self.assertIn("c0 -> c1", dot)


class CheckpointTests(TestCase):
    def test_resume_after_budget(self):
        """A stopped run picks up where it left off."""
        run_record, poset = BruhatCheckpointService.run(4, budget=3)
        self.assertIsNone(poset)
        run_record.refresh_from_db()
        self.assertEqual(run_record.status, BruhatConstants.RunStatus.BUDGET_EXCEEDED)
        self.assertEqual(run_record.node_count, 3)
        self.assertTrue(run_record.frontier)

        resumed, poset = BruhatCheckpointService.run(4, budget=100)
        self.assertEqual(resumed.pk, run_record.pk)
        self.assertEqual(len(poset), 8)
        self.assertEqual(resumed.status, BruhatConstants.RunStatus.COMPLETE)
        self.assertEqual(resumed.nodes.count(), 8)
        self.assertEqual(resumed.covers.count(), 8)

    def test_complete_run_is_loaded(self):
        BruhatCheckpointService.run(3)
        run_record, poset = BruhatCheckpointService.run(3)
        self.assertEqual(BruhatRun.objects.count(), 1)
        self.assertEqual(len(poset), 2)
        self.assertEqual(str(poset.top.majority), "{1 3} 2")


def test_cli_bruhat_text():
    code, out, _ = run_cli("bruhat", "--n", "4", "--check")
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert lines[0] == "B(4,2): 8 classes, 8 covers"
    assert lines[-1] == "covers generate containment order: True"


def test_cli_bruhat_covers_file(tmp_path):
    path = tmp_path / "covers.jsonl"
    code, out, _ = run_cli("bruhat", "--n", "3", "--json", "--covers", str(path))
    assert code == EXIT_OK
    assert json.loads(out)["node_count"] == 2
    assert json.loads(path.read_text().splitlines()[0])["added_triple"] == "123"


def test_cli_bruhat_budget():
    code, _, err = run_cli("bruhat", "--n", "4", "--budget", "2")
    assert code == EXIT_DOMAIN_ERROR
    assert json.loads(err)["error"] == "BudgetExceeded"


@pytest.mark.django_db
def test_cli_bruhat_checkpoint():
    code, out, _ = run_cli("bruhat", "--n", "4", "--budget", "2", "--checkpoint", "--json")
    assert code == EXIT_OK
    assert json.loads(out)["status"] == "budget_exceeded"
    code, out, _ = run_cli("bruhat", "--n", "4", "--checkpoint", "--dot")
    assert code == EXIT_OK
    assert out.startswith("digraph B4_2 {")
