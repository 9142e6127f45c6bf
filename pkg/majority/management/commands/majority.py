import json
import random

from core.commands import EngineCommand
from core.exceptions import OracleMismatch, ResourceExceeded, SupportMismatch, UsageError
from heap.services import build_heap, count_ideals, domain
from majority.serializers import (
    MajorityResultSerializer,
    RelationSerializer,
    VoteTallySerializer,
)
from majority.services import (
    VoteTally,
    brute_force_majority,
    majority_report,
    random_positive_tally,
)


class Command(EngineCommand):
    help = "Compute the majority relation of a tiling-type domain."
    takes_word = True

    def add_engine_arguments(self, parser):
        source = parser.add_mutually_exclusive_group()
        source.add_argument("--tally", help="JSON file mapping one-line permutations to counts.")
        source.add_argument("--random-tally", dest="random_tally", action="store_true",
                            help="Draw a random positive tally on Pre(C).")
        parser.add_argument("--seed", type=int, default=0)
        parser.add_argument("--max-count", dest="max_count", type=int, default=5)
        parser.add_argument("--oracle", action="store_true",
                            help="Sum votes pair by pair and cross-check the fast path.")

    def load_tally(self, path) -> VoteTally:
        try:
            with open(path, encoding="utf-8") as handle:
                document = json.load(handle)
        except (OSError, ValueError) as e:
            raise UsageError(f"cannot read tally file {path}: {e}")
        if isinstance(document, dict) and isinstance(document.get("counts"), dict):
            document = document["counts"]
        data = self.validated(VoteTallySerializer, {"counts": document})
        return VoteTallySerializer.to_tally(data)

    def handle(self, *args, **options):
        word = self.read_word(options)
        rho = None
        if options["tally"]:
            rho = self.load_tally(options["tally"])
        elif options["random_tally"]:
            perms = self.checked_domain(build_heap(word))
            rho = random_positive_tally(perms, random.Random(options["seed"]), options["max_count"])

        if options["oracle"]:
            self.handle_oracle(word, rho, options)
            return

        result = majority_report(word, rho)
        if self.wants_json(options):
            self.emit_json(MajorityResultSerializer(result))
            return
        self.emit(str(result.order))

    def checked_domain(self, heap):
        limit = self.config.ORACLE_DOMAIN_LIMIT
        size = count_ideals(heap)
        if size > limit:
            raise ResourceExceeded(
                f"Pre(C) has {size} permutations, above the oracle limit {limit}",
                {"size": size, "limit": limit},
            )
        return domain(heap)

    def handle_oracle(self, word, rho, options):
        voters = rho
        if voters is None:
            voters = VoteTally.uniform(self.checked_domain(build_heap(word)))
        relation = brute_force_majority(voters)
        try:
            fast = majority_report(word, rho)
        except SupportMismatch:
            fast = None
        if fast is not None and fast.order.relation() != relation:
            raise OracleMismatch(
                f"fast path gives {fast.order} but the vote count gives {relation}",
                {"fast": str(fast.order), "oracle": sorted(map(list, relation.pairs))},
            )

        if self.wants_json(options):
            self.emit_json(RelationSerializer(relation))
            return
        order = relation.to_prelinear()
        self.emit(str(order) if order is not None else str(relation))
