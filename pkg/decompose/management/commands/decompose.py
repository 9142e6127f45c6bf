from core.commands import EngineCommand
from decompose.serializers import FubiniResultSerializer
from decompose.services import fubini_majority, split_class


class Command(EngineCommand):
    help = "Split a reduced word into direct-sum blocks and assemble the majority relation."
    takes_word = True

    def add_engine_arguments(self, parser):
        parser.add_argument("--workers", type=int, default=None)

    def handle(self, *args, **options):
        word = self.read_word(options)
        result = fubini_majority(split_class(word), options["workers"])

        if self.wants_json(options):
            self.emit_json(FubiniResultSerializer(result))
            return
        for part in result.parts:
            block = part.block
            self.emit(
                f"block at offset {block.offset}: {block.word} in S_{block.size}, "
                f"u = {part.u}, v = {part.v}, |J| = {part.total}"
            )
        self.emit(f"u = {result.u}, v = {result.v}, |J| = {result.total}")
        self.emit(str(result.order))
