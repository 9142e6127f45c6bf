from core.commands import EngineCommand
from families.serializers import ConjectureReportSerializer
from families.services import check_conjecture, sweep_conjecture


class Command(EngineCommand):
    help = "Check whether the majority relation of c^p is the conjectured total order."

    def add_engine_arguments(self, parser):
        parser.add_argument("--n", type=int, required=True)
        parser.add_argument("--p", type=int, default=None, help="A single power to check.")
        parser.add_argument("--max-p", dest="max_p", type=int, default=None)
        parser.add_argument("--sweep", action="store_true", help="Check every n' in 2..n.")
        parser.add_argument("--workers", type=int, default=None)
        parser.add_argument("--folds", action="store_true", help="Also search for a fold.")

    def handle(self, *args, **options):
        n = options["n"]
        if options["p"] is not None:
            reports = [check_conjecture(n, options["p"], with_folds=options["folds"])]
        else:
            reports = sweep_conjecture(
                max_n=n,
                min_n=2 if options["sweep"] else n,
                max_p=options["max_p"],
                workers=options["workers"],
                with_folds=options["folds"],
            )

        if self.wants_json(options):
            self.emit_json(ConjectureReportSerializer(reports, many=True))
            return
        for report in reports:
            verdict = "total order" if report.holds else "differs"
            self.emit(
                f"n={report.n} p={report.p}: computed {report.computed}; "
                f"conjectured {report.conjectured} -> {verdict}"
            )
        held = sum(1 for report in reports if report.holds)
        self.emit(f"observed the total order for {held} of {len(reports)} (n, p) pairs")
