import logging
from typing import Any, Dict

from django.core.management.base import BaseCommand
from rest_framework import serializers

from core.conf import get_engine_config
from core.constants import EngineConstants
from core.exceptions import (
    LetterOutOfRange,
    NotReduced,
    OutOfRange,
    UsageError,
)
from core.renderers import canonical_json
from perm.services import ReducedWord, parse_word

logger = logging.getLogger(__name__)


class EngineCommand(BaseCommand):
    """Base class for the engine subcommands.

    Subclasses implement ``add_engine_arguments`` and ``handle``. Domain errors
    propagate as ``CondorcetError`` and are mapped to exit codes by ``core.cli.run``.
    """

    requires_system_checks = []
    requires_migrations_checks = False
    takes_word = False

    def add_arguments(self, parser):
        parser.add_argument("--json", action="store_true", help="Emit canonical JSON.")
        if self.takes_word:
            parser.add_argument("--word", required=True, help="Reduced word, e.g. 2,1,3,2,6,5")
            parser.add_argument(
                "--n", type=int, default=None, help="Rank; defaults to 1 + max letter."
            )
        self.add_engine_arguments(parser)

    def add_engine_arguments(self, parser):
        pass

    @property
    def config(self):
        return get_engine_config()

    def wants_json(self, options: Dict[str, Any]) -> bool:
        return options.get("json") or self.config.OUTPUT_FORMAT == EngineConstants.OutputFormat.JSON

    def read_word(self, options: Dict[str, Any]) -> ReducedWord:
        try:
            return parse_word(options["word"], options.get("n"))
        except (LetterOutOfRange, NotReduced, OutOfRange) as e:
            raise UsageError(e.message, e.details)

    def validated(self, serializer_class, data):
        serializer = serializer_class(data=data)
        if not serializer.is_valid():
            logger.debug(f"Rejected input document: {serializer.errors}")
            raise UsageError("invalid input document", {"errors": serializer.errors})
        return serializer.validated_data

    def emit(self, text: str) -> None:
        self.stdout.write(text)

    def emit_json(self, data) -> None:
        if isinstance(data, serializers.BaseSerializer):
            data = data.data
        self.stdout.write(canonical_json(data))
