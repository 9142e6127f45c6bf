from core.commands import EngineCommand
from core.exceptions import CondorcetError, UsageError
from families.constants import FamilyConstants
from families.serializers import FamilyReportSerializer
from families.services import FamilySpec, family_word, predicted_majority, verify_family
from perm.services import parse_word


class Command(EngineCommand):
    help = "Generate a named family word, its predicted majority relation, and optionally verify it."

    def add_engine_arguments(self, parser):
        parser.add_argument("--kind", required=True, choices=FamilyConstants.Kind.values)
        parser.add_argument("--n", type=int, default=None)
        parser.add_argument("--p", type=int, default=0, help="Bipartite power.")
        parser.add_argument("--k", type=int, default=None, help="Diamond size; lives in S_2k.")
        parser.add_argument(
            "--no-trailing-odd",
            dest="trailing_odd",
            action="store_false",
            help="Bipartite c^p without the trailing c_odd.",
        )
        parser.add_argument(
            "--variant",
            default=FamilyConstants.Variant.FORWARD,
            choices=FamilyConstants.Variant.values,
        )
        parser.add_argument("--word", default=None, help="Word for the singleton_word kind.")
        parser.add_argument("--verify", action="store_true", help="Compute and compare.")
        parser.add_argument("--conjecture", action="store_true", help="Allow the conjectured form.")

    def handle(self, *args, **options):
        letters = None
        if options["word"]:
            try:
                letters = parse_word(options["word"], options["n"]).letters
            except CondorcetError as e:
                raise UsageError(e.message, e.details)
        spec = FamilySpec(
            kind=options["kind"],
            n=options["n"],
            p=options["p"],
            k=options["k"],
            trailing_odd=options["trailing_odd"],
            variant=options["variant"],
            word=letters,
        )

        if options["verify"]:
            report = verify_family(spec)
            if self.wants_json(options):
                self.emit_json(FamilyReportSerializer(report))
                return
            self.emit(f"{spec}: {report.word}")
            self.emit(f"heap size = {report.heap_size}, |J(P)| = {report.ideal_count}")
            self.emit(f"predicted = {report.predicted}")
            self.emit(f"computed  = {report.computed}")
            self.emit(f"match = {report.match}")
            self.emit(f"fold valid = {report.fold_valid}, balanced = {report.balanced}")
            return

        word = family_word(spec)
        predicted = predicted_majority(spec, conjecture=options["conjecture"])
        if self.wants_json(options):
            self.emit_json(
                {"spec": str(spec), "word": list(word.letters), "predicted": str(predicted)}
            )
            return
        self.emit(f"{spec}: {word}")
        self.emit(f"predicted = {predicted}")
