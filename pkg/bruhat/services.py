"""The higher Bruhat order B(n,2) on commutation classes of reduced words for w0.

A class is identified by its inversion triples: abc (a < b < c) is inverted when
the class creates the pairs in the order bc, ac, ab. A braid move flips exactly
one triple, so each braid move between two classes is a cover adding or removing
one triple. Enumeration is a breadth-first search from the lex-first class.
"""

import itertools
import json
import logging
from dataclasses import dataclass, field
from functools import cached_property
from math import comb
from typing import Dict, FrozenSet, Iterator, List, Optional, Tuple

import networkx as nx
from django.db import transaction

from core.conf import get_engine_config
from core.exceptions import BudgetExceeded, NotLongestPermutation, ResourceExceeded, SizeExceeded
from core.parallel import ordered_map
from core.renderers import render_dot
from heap.services import class_words, reduced_words
from majority.services import PrelinearOrder, majority_report
from perm.services import ReducedWord, format_word, longest

from .constants import BruhatConstants
from .models import BruhatCoverRecord, BruhatNodeRecord, BruhatRun

logger = logging.getLogger(__name__)

Triple = Tuple[int, int, int]
TripleKey = Tuple[Triple, ...]

RunStatus = BruhatConstants.RunStatus


def triple_label(triple: Triple) -> str:
    return "".join(str(v) for v in triple)


@dataclass(frozen=True)
class InversionTripleSet:
    triples: FrozenSet[Triple]
    n: int

    @property
    def key(self) -> TripleKey:
        return tuple(sorted(self.triples))

    def __len__(self) -> int:
        return len(self.triples)

    def __contains__(self, triple) -> bool:
        return tuple(triple) in self.triples

    def __iter__(self) -> Iterator[Triple]:
        return iter(self.key)

    def labels(self) -> List[str]:
        return [triple_label(t) for t in self.key]

    def caption(self) -> str:
        if not self.triples:
            return BruhatConstants.NO_TRIPLES
        if len(self.triples) == comb(self.n, 3):
            return BruhatConstants.ALL_TRIPLES
        return ",".join(self.labels())

    def __str__(self) -> str:
        return "{" + ",".join(self.labels()) + "}"


def _creation_order(letters: Tuple[int, ...], n: int) -> Dict[Tuple[int, int], int]:
    entries = list(range(1, n + 1))
    order = {}
    for step, letter in enumerate(letters):
        a, b = entries[letter - 1], entries[letter]
        order[(min(a, b), max(a, b))] = step
        entries[letter - 1], entries[letter] = b, a
    return order


def inversion_triples(word: ReducedWord) -> InversionTripleSet:
    n = word.n
    if word.permutation != longest(n):
        raise NotLongestPermutation(
            f"{word} is a reduced word for {word.permutation}, not for w0 in S_{n}",
            {"word": list(word.letters), "n": n},
        )
    order = _creation_order(word.letters, n)
    triples = frozenset(
        (a, b, c)
        for a, b, c in itertools.combinations(range(1, n + 1), 3)
        if order[(b, c)] < order[(a, c)] < order[(a, b)]
    )
    return InversionTripleSet(triples, n)


def _braid_flips(letters: Tuple[int, ...], n: int) -> Iterator[Tuple[int, Triple, Tuple[int, ...]]]:
    """Yield (position, flipped triple, moved word) for each braid move in ``letters``."""
    entries = list(range(1, n + 1))
    for j, letter in enumerate(letters):
        if j + 2 < len(letters):
            a, b, c = letters[j:j + 3]
            if a == c and abs(a - b) == 1:
                low = min(a, b)
                triple = tuple(sorted(entries[low - 1:low + 2]))
                yield j + 1, triple, letters[:j] + (b, a, b) + letters[j + 3:]
        entries[letter - 1], entries[letter] = entries[letter], entries[letter - 1]


def yang_baxter_neighbors(word: ReducedWord) -> List[Tuple[int, ReducedWord]]:
    """Words one braid move away, tagged by the 1-based position of the replaced substring."""
    return [
        (position, ReducedWord(moved, word.n))
        for position, _, moved in _braid_flips(word.letters, word.n)
    ]


@dataclass(frozen=True)
class BruhatNode:
    inversion_triples: InversionTripleSet
    representative: ReducedWord
    majority: PrelinearOrder
    class_size: int

    @property
    def class_id(self) -> str:
        return self.inversion_triples.caption()

    @property
    def key(self) -> TripleKey:
        return self.inversion_triples.key


@dataclass
class EnumerationState:
    """Partial B(n,2): expanded nodes, covers so far, and classes not yet expanded."""

    n: int
    nodes: Dict[TripleKey, BruhatNode] = field(default_factory=dict)
    covers: Dict[Tuple[TripleKey, TripleKey], Triple] = field(default_factory=dict)
    frontier: Dict[TripleKey, Tuple[int, ...]] = field(default_factory=dict)

    @classmethod
    def start(cls, n: int) -> "EnumerationState":
        first = ReducedWord(tuple(i for j in range(1, n) for i in range(j, 0, -1)), n)
        state = cls(n=n)
        state.frontier[inversion_triples(first).key] = first.letters
        return state


@dataclass(frozen=True)
class BruhatPoset:
    n: int
    nodes: Dict[TripleKey, BruhatNode]
    covers: Dict[Tuple[TripleKey, TripleKey], Triple]

    def __len__(self) -> int:
        return len(self.nodes)

    @cached_property
    def graph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(self.nodes)
        graph.add_edges_from(self.covers)
        return graph

    def node(self, triples) -> BruhatNode:
        return self.nodes[tuple(sorted(tuple(t) for t in triples))]

    @property
    def bottom(self) -> BruhatNode:
        return min(self.nodes.values(), key=lambda node: len(node.inversion_triples))

    @property
    def top(self) -> BruhatNode:
        return max(self.nodes.values(), key=lambda node: len(node.inversion_triples))

    def sorted_nodes(self) -> List[BruhatNode]:
        return sorted(self.nodes.values(), key=lambda node: (len(node.key), node.key))

    def sorted_covers(self) -> List[Tuple[TripleKey, TripleKey]]:
        return sorted(self.covers, key=lambda edge: (len(edge[0]), edge[0], edge[1]))


def _expand_class(task):
    n, letters, limit = task
    words, exceeded = class_words(letters, limit)
    if exceeded:
        raise SizeExceeded(
            f"commutation class of {format_word(letters)} exceeds {limit} words", {"limit": limit}
        )
    representative = ReducedWord(min(words), n)
    triples = inversion_triples(representative)
    node = BruhatNode(
        inversion_triples=triples,
        representative=representative,
        majority=majority_report(representative, workers=1).order,
        class_size=len(words),
    )
    neighbors = {}
    for member in sorted(words):
        for _, flipped, moved in _braid_flips(member, n):
            neighbor = tuple(sorted(triples.triples ^ {flipped}))
            neighbors.setdefault(neighbor, (flipped, moved))
    return node, sorted(neighbors.items())


def enumerate_bruhat(
    n: int,
    limit: Optional[int] = None,
    state: Optional[EnumerationState] = None,
    workers: Optional[int] = None,
) -> BruhatPoset:
    """Enumerate B(n,2), expanding at most ``limit`` classes in total.

    On running out of budget, raises ``BudgetExceeded`` carrying the state to resume from.
    """
    config = get_engine_config()
    if n > config.BRUHAT_MAX_N:
        raise ResourceExceeded(
            f"B({n},2) exceeds the configured maximum rank {config.BRUHAT_MAX_N}", {"n": n}
        )
    limit = limit or config.BRUHAT_NODE_BUDGET
    workers = workers or config.IDEAL_STREAM_WORKERS
    state = state or EnumerationState.start(n)

    while state.frontier:
        room = limit - len(state.nodes)
        if room <= 0:
            raise BudgetExceeded(
                f"B({n},2) enumeration stopped after {len(state.nodes)} classes",
                {"n": n, "expanded": len(state.nodes), "frontier": len(state.frontier)},
                state=state,
            )
        batch = list(state.frontier.items())[:room]
        tasks = [(n, letters, config.CLASS_BFS_LIMIT) for _, letters in batch]
        for (key, _), (node, neighbors) in zip(batch, ordered_map(_expand_class, tasks, workers)):
            state.nodes[key] = node
            del state.frontier[key]
            for neighbor, (flipped, moved) in neighbors:
                edge = (key, neighbor) if len(neighbor) > len(key) else (neighbor, key)
                state.covers[edge] = flipped
                if neighbor not in state.nodes and neighbor not in state.frontier:
                    state.frontier[neighbor] = moved
        logger.debug(f"B({n},2): {len(state.nodes)} expanded, {len(state.frontier)} pending")

    logger.info(f"B({n},2) has {len(state.nodes)} classes and {len(state.covers)} covers")
    return BruhatPoset(n=n, nodes=dict(state.nodes), covers=dict(state.covers))


def felsner_weil_check(poset: BruhatPoset) -> bool:
    """Single-triple covers generate exactly the containment order on triple sets."""
    for (lower, upper), triple in poset.covers.items():
        if set(upper) - set(lower) != {triple} or len(upper) != len(lower) + 1:
            logger.error(f"Cover {lower} -> {upper} does not add exactly {triple}")
            return False
    closure = nx.transitive_closure_dag(poset.graph)
    reachable = {(a, b) for a, b in closure.edges if a != b}
    contained = {
        (a, b)
        for a, b in itertools.permutations(poset.nodes, 2)
        if set(a) < set(b)
    }
    return reachable == contained


@dataclass(frozen=True)
class CoverDiff:
    lower: BruhatNode
    upper: BruhatNode
    added_triple: Triple
    moved_block: FrozenSet[int]
    changed_partner: FrozenSet[int]

    @property
    def changed_values(self) -> FrozenSet[int]:
        return self.moved_block | self.changed_partner

    @property
    def outside_triple(self) -> bool:
        return bool(self.changed_values - set(self.added_triple))

    @property
    def outside_range(self) -> bool:
        a, _, c = self.added_triple
        return any(value < a or value > c for value in self.changed_values)

    def to_record(self) -> Dict:
        return {
            "added_triple": triple_label(self.added_triple),
            "lower": self.lower.class_id,
            "upper": self.upper.class_id,
            "maj_lower": str(self.lower.majority),
            "maj_upper": str(self.upper.majority),
            "changed_values": sorted(self.changed_values),
            "moved_block": sorted(self.moved_block),
            "changed_partner": sorted(self.changed_partner),
            "outside_triple": self.outside_triple,
            "outside_range": self.outside_range,
        }


def cover_diff(lower: BruhatNode, upper: BruhatNode, added: Triple) -> CoverDiff:
    before = lower.majority
    after = upper.majority
    values = range(1, lower.inversion_triples.n + 1)
    index_before = before.block_index()
    index_after = after.block_index()
    return CoverDiff(
        lower=lower,
        upper=upper,
        added_triple=added,
        moved_block=frozenset(v for v in values if index_before[v] != index_after[v]),
        changed_partner=frozenset(v for v in values if before.partner(v) != after.partner(v)),
    )


def cover_diff_report(poset: BruhatPoset) -> Iterator[CoverDiff]:
    for lower, upper in poset.sorted_covers():
        yield cover_diff(poset.nodes[lower], poset.nodes[upper], poset.covers[(lower, upper)])


def cover_records_jsonl(poset: BruhatPoset) -> str:
    lines = [json.dumps(diff.to_record(), sort_keys=True) for diff in cover_diff_report(poset)]
    return "".join(line + "\n" for line in lines)


def singleton_classes(poset: BruhatPoset) -> List[BruhatNode]:
    return [node for node in poset.sorted_nodes() if node.class_size == 1]


def class_partition_by_triples(n: int) -> Dict[TripleKey, FrozenSet[ReducedWord]]:
    """Group every reduced word of w0 in S_n by its inversion triples."""
    start = ReducedWord(tuple(i for j in range(1, n) for i in range(j, 0, -1)), n)
    groups: Dict[TripleKey, set] = {}
    for word in reduced_words(start):
        groups.setdefault(inversion_triples(word).key, set()).add(word)
    return {key: frozenset(words) for key, words in groups.items()}


def bruhat_to_dot(poset: BruhatPoset) -> str:
    ids = {node.key: f"c{index}" for index, node in enumerate(poset.sorted_nodes())}
    nodes = [
        (ids[node.key], f"{node.majority.compact()}\n{node.class_id}")
        for node in poset.sorted_nodes()
    ]
    edges = [(ids[lower], ids[upper]) for lower, upper in poset.sorted_covers()]
    return render_dot(f"B{poset.n}_2", nodes, edges)


class BruhatCheckpointService:
    """Persists partial B(n,2) enumerations so a budgeted run can be resumed."""

    @staticmethod
    def _key_from_json(triples) -> TripleKey:
        return tuple(sorted(tuple(t) for t in triples))

    @classmethod
    def load_state(cls, run: BruhatRun) -> EnumerationState:
        n = run.n
        state = EnumerationState(n=n)
        for record in run.nodes.all():
            key = cls._key_from_json(record.triples)
            state.nodes[key] = BruhatNode(
                inversion_triples=InversionTripleSet(frozenset(key), n),
                representative=ReducedWord(tuple(record.representative), n),
                majority=PrelinearOrder.from_text(record.majority),
                class_size=record.class_size,
            )
        for record in run.covers.all():
            edge = (cls._key_from_json(record.lower), cls._key_from_json(record.upper))
            state.covers[edge] = tuple(record.added_triple)
        for triples, letters in run.frontier:
            state.frontier[cls._key_from_json(triples)] = tuple(letters)
        return state

    @staticmethod
    @transaction.atomic
    def save_state(run: BruhatRun, state: EnumerationState, status: str) -> BruhatRun:
        known_nodes = {
            BruhatCheckpointService._key_from_json(t)
            for t in run.nodes.values_list("triples", flat=True)
        }
        BruhatNodeRecord.objects.bulk_create(
            [
                BruhatNodeRecord(
                    run=run,
                    label=node.class_id,
                    triples=[list(t) for t in key],
                    representative=list(node.representative.letters),
                    majority=str(node.majority),
                    class_size=node.class_size,
                )
                for key, node in state.nodes.items()
                if key not in known_nodes
            ]
        )
        run.covers.all().delete()
        BruhatCoverRecord.objects.bulk_create(
            [
                BruhatCoverRecord(
                    run=run,
                    lower=[list(t) for t in lower],
                    upper=[list(t) for t in upper],
                    added_triple=list(triple),
                )
                for (lower, upper), triple in state.covers.items()
            ]
        )
        run.frontier = [
            [[list(t) for t in key], list(letters)]
            for key, letters in state.frontier.items()
        ]
        run.node_count = len(state.nodes)
        run.cover_count = len(state.covers)
        run.status = status
        run.save()
        return run

    @classmethod
    def run(cls, n: int, budget: Optional[int] = None) -> Tuple[BruhatRun, Optional[BruhatPoset]]:
        """Expand up to ``budget`` more classes of B(n,2), resuming the latest unfinished run."""
        budget = budget or get_engine_config().BRUHAT_NODE_BUDGET
        run = BruhatRun.objects.filter(n=n).order_by("-created_at").first()
        if run is None:
            run = BruhatRun.objects.create(n=n, status=RunStatus.RUNNING)
            state = EnumerationState.start(n)
        else:
            state = cls.load_state(run)
            if run.status == RunStatus.COMPLETE:
                return run, BruhatPoset(n=n, nodes=state.nodes, covers=state.covers)
            if not state.frontier and not state.nodes:
                state = EnumerationState.start(n)

        try:
            poset = enumerate_bruhat(n, limit=len(state.nodes) + budget, state=state)
        except BudgetExceeded as e:
            logger.info(f"Checkpointing B({n},2) run {run.pk}: {e.message}")
            cls.save_state(run, e.state, RunStatus.BUDGET_EXCEEDED)
            return run, None
        cls.save_state(run, state, RunStatus.COMPLETE)
        return run, poset
