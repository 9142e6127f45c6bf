from bruhat.serializers import BruhatPosetSerializer, BruhatRunSerializer
from bruhat.services import (
    BruhatCheckpointService,
    bruhat_to_dot,
    cover_records_jsonl,
    enumerate_bruhat,
    felsner_weil_check,
    singleton_classes,
)
from core.commands import EngineCommand
from core.constants import EngineConstants
from core.exceptions import UsageError


class Command(EngineCommand):
    help = "Enumerate the higher Bruhat order B(n,2) with majority labels and cover-diff records."

    def add_engine_arguments(self, parser):
        parser.add_argument("--n", type=int, required=True)
        parser.add_argument("--budget", type=int, default=None, help="Classes to expand.")
        parser.add_argument("--dot", action="store_true", help="Emit a Graphviz digraph.")
        parser.add_argument("--covers", default=None, help="Write JSONL cover records to FILE.")
        parser.add_argument("--check", action="store_true", help="Compare covers with containment.")
        parser.add_argument("--checkpoint", action="store_true", help="Persist and resume runs.")
        parser.add_argument("--workers", type=int, default=None)

    def handle(self, *args, **options):
        n = options["n"]
        if n < 3:
            raise UsageError("B(n,2) needs n >= 3", {"n": n})

        if options["checkpoint"]:
            run, poset = BruhatCheckpointService.run(n, options["budget"])
            if poset is None:
                if self.wants_json(options):
                    self.emit_json(BruhatRunSerializer(run))
                else:
                    self.emit(f"{run}; rerun with --checkpoint to continue")
                return
        else:
            poset = enumerate_bruhat(n, limit=options["budget"], workers=options["workers"])

        if options["covers"]:
            with open(options["covers"], "w", encoding="utf-8") as handle:
                handle.write(cover_records_jsonl(poset))

        if options["dot"] or self.config.OUTPUT_FORMAT == EngineConstants.OutputFormat.DOT:
            self.stdout.write(bruhat_to_dot(poset), ending="")
            return

        if self.wants_json(options):
            data = dict(BruhatPosetSerializer(poset).data)
            if options["check"]:
                data["containment_order_matches"] = felsner_weil_check(poset)
            self.emit_json(data)
            return

        self.emit(f"B({n},2): {len(poset)} classes, {len(poset.covers)} covers")
        for node in poset.sorted_nodes():
            self.emit(f"{node.majority.compact():<12} {node.class_id}  ({node.class_size} words)")
        self.emit(f"single-word classes: {len(singleton_classes(poset))}")
        if options["check"]:
            self.emit(f"covers generate containment order: {felsner_weil_check(poset)}")
