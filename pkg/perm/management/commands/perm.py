from core.commands import EngineCommand
from core.exceptions import CondorcetError, UsageError
from perm.serializers import PermutationSerializer, ReducedWordSerializer
from perm.services import decompose, parse_permutation, reduced_word_of, s_support


class Command(EngineCommand):
    help = "Describe a permutation: inversions, length, reduced word, S-support and blocks."

    def add_engine_arguments(self, parser):
        source = parser.add_mutually_exclusive_group(required=True)
        source.add_argument("--one-line", dest="one_line", help="One-line notation, e.g. 3412756")
        source.add_argument("--word", help="Reduced word, e.g. 2,1,3,2,6,5")
        parser.add_argument("--n", type=int, default=None)

    def handle(self, *args, **options):
        if options["one_line"]:
            try:
                w = parse_permutation(options["one_line"])
            except CondorcetError as e:
                raise UsageError(e.message, e.details)
            word = reduced_word_of(w)
        else:
            word = self.read_word(options)
            w = word.permutation

        if self.wants_json(options):
            self.emit_json(
                {
                    "permutation": PermutationSerializer(w).data,
                    "word": ReducedWordSerializer(word).data,
                }
            )
            return

        support = sorted(s_support(word))
        self.emit(f"w = {w}")
        self.emit(f"length = {w.length}")
        self.emit(f"Inv(w) = {w.inversions}")
        self.emit(f"word = {word}")
        self.emit(f"S-support = {{{','.join(str(i) for i in support)}}}")
        self.emit(f"blocks = {' + '.join(str(block) for block in decompose(w))}")
