from core.commands import EngineCommand
from heap.serializers import DomainSerializer
from heap.services import build_heap, domain, is_condorcet_domain, is_maximal


class Command(EngineCommand):
    help = "List the tiling-type domain Pre(C) of a reduced word's commutation class."
    takes_word = True

    def add_engine_arguments(self, parser):
        parser.add_argument("--check-condorcet", dest="check_condorcet", action="store_true",
                            help="Verify the domain has no cyclic triple.")

    def handle(self, *args, **options):
        word = self.read_word(options)
        heap = build_heap(word)
        perms = sorted(domain(heap), key=lambda w: (w.length, w.entries))
        condorcet = is_condorcet_domain(perms) if options["check_condorcet"] else None

        if self.wants_json(options):
            self.emit_json(
                DomainSerializer(
                    {
                        "word": list(word.letters),
                        "size": len(perms),
                        "permutations": [str(w) for w in perms],
                        "is_condorcet": condorcet,
                        "is_maximal": is_maximal(heap),
                    }
                )
            )
            return

        for w in perms:
            self.emit(str(w))
        self.emit(f"|Pre(C)| = {len(perms)}, maximal (w = w0): {is_maximal(heap)}")
        if condorcet is not None:
            self.emit(f"Condorcet domain: {condorcet}")
