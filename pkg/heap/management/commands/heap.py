from core.commands import EngineCommand
from core.constants import EngineConstants
from heap.serializers import CommutationClassSerializer, HeapSerializer
from heap.services import build_heap, commutation_class, count_ideals, heap_to_dot


class Command(EngineCommand):
    help = "Build the heap poset of a reduced word and print its Hasse diagram."
    takes_word = True

    def add_engine_arguments(self, parser):
        parser.add_argument("--dot", action="store_true", help="Emit a Graphviz DOT diagram.")
        parser.add_argument(
            "--label",
            choices=EngineConstants.LabelMode.values,
            default=EngineConstants.LabelMode.INVERSION,
        )
        parser.add_argument("--class", dest="with_class", action="store_true",
                            help="Also enumerate the commutation class.")

    def handle(self, *args, **options):
        word = self.read_word(options)
        heap = build_heap(word)
        label = options["label"]

        if options["dot"] or self.config.OUTPUT_FORMAT == EngineConstants.OutputFormat.DOT:
            self.stdout.write(heap_to_dot(heap, label), ending="")
            return

        klass = commutation_class(word, keep_members=False) if options["with_class"] else None
        if self.wants_json(options):
            data = {"heap": HeapSerializer(heap).data, "ideals": str(count_ideals(heap))}
            if klass is not None:
                data["class"] = CommutationClassSerializer(klass).data
            self.emit_json(data)
            return

        self.emit(f"word = {word}, w = {word.permutation}, {heap.size} elements")
        for x, y in sorted(heap.covers):
            self.emit(f"{heap.label(x, label)} < {heap.label(y, label)}")
        self.emit(f"|J(P)| = {count_ideals(heap)}")
        if klass is not None:
            size = klass.size if not klass.exceeded else "unknown (limit reached)"
            self.emit(f"class size = {size}, representative = {klass.representative}")
