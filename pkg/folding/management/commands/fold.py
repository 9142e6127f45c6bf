import json

from core.commands import EngineCommand
from core.exceptions import InvalidFold, UsageError
from folding.serializers import FoldCertificateSerializer, FoldResultSerializer, FoldSerializer
from folding.services import check_folding, find_folding_symmetry, majority_from_fold
from heap.services import build_heap
from majority.services import prelinear_from_uv


class Command(EngineCommand):
    help = "Find (or certify) a horizontal folding symmetry and read off the majority relation."
    takes_word = True

    def add_engine_arguments(self, parser):
        parser.add_argument("--certify", help="JSON file with phi, ideal and antichain positions.")

    def handle(self, *args, **options):
        word = self.read_word(options)
        heap = build_heap(word)

        if options["certify"]:
            try:
                with open(options["certify"], encoding="utf-8") as handle:
                    document = json.load(handle)
            except (OSError, ValueError) as e:
                raise UsageError(f"cannot read fold file {options['certify']}: {e}")
            fold = FoldCertificateSerializer.to_fold(
                self.validated(FoldCertificateSerializer, document)
            )
            if not check_folding(heap, fold):
                raise InvalidFold(f"the supplied fold is not a folding symmetry of {word}")
        else:
            fold = find_folding_symmetry(heap)

        u = v = order = None
        if fold is not None:
            u, v = majority_from_fold(heap, fold)
            order = prelinear_from_uv(u, v)

        if self.wants_json(options):
            self.emit_json(
                FoldResultSerializer(
                    {
                        "word": list(word.letters),
                        "found": fold is not None,
                        "fold": FoldSerializer(fold, context={"heap": heap}).data if fold else None,
                        "u": u,
                        "v": v,
                        "relation": str(order) if order else None,
                    }
                )
            )
            return

        if fold is None:
            self.emit(f"no horizontal folding symmetry for {word}")
            return
        fixed = ", ".join(heap.label(x) for x in fold.fixed_points()) or "none"
        swaps = ", ".join(f"{heap.label(x)}<->{heap.label(y)}" for x, y in fold.swaps()) or "none"
        self.emit(f"fixed: {fixed}")
        self.emit(f"swaps: {swaps}")
        self.emit("I = {" + ",".join(heap.label(x) for x in sorted(fold.ideal.members)) + "}")
        self.emit("A = {" + ",".join(heap.label(x) for x in sorted(fold.antichain)) + "}")
        self.emit(f"u = {u}, v = {v}")
        self.emit(str(order))
