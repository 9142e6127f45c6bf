"""Command-line front end.

``run`` dispatches an argument vector to the named management command and maps
the outcome to an exit code: 0 on success, 1 on domain errors (error JSON on
stderr) and 2 on usage errors.
"""

import logging
import os
import sys
from contextlib import redirect_stdout
from typing import IO, Optional, Sequence

from django.core.management import call_command
from django.core.management.base import CommandError

from core.exceptions import CondorcetError, UsageError
from core.renderers import canonical_json
from core.serializers import ErrorSerializer

logger = logging.getLogger(__name__)

SUBCOMMANDS = (
    "perm",
    "heap",
    "domain",
    "majority",
    "fold",
    "family",
    "conjecture",
    "decompose",
    "bruhat",
)

EXIT_OK = 0
EXIT_DOMAIN_ERROR = 1
EXIT_USAGE = 2


def _write_error(stream: IO[str], error: CondorcetError) -> None:
    stream.write(canonical_json(ErrorSerializer(error.to_dict()).data) + "\n")


def run(
    argv: Sequence[str],
    stdout: Optional[IO[str]] = None,
    stderr: Optional[IO[str]] = None,
) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    if not argv or argv[0] not in SUBCOMMANDS:
        _write_error(
            stderr,
            UsageError(
                f"expected a subcommand among {', '.join(SUBCOMMANDS)}",
                {"argv": list(argv)},
            ),
        )
        return EXIT_USAGE

    name, *args = argv
    try:
        # argparse prints --help to sys.stdout
        with redirect_stdout(stdout):
            call_command(name, *args, stdout=stdout, stderr=stderr)
    except UsageError as e:
        _write_error(stderr, e)
        return EXIT_USAGE
    except CondorcetError as e:
        logger.info(f"{name} failed with {e.code}: {e.message}")
        _write_error(stderr, e)
        return EXIT_DOMAIN_ERROR
    except CommandError as e:
        _write_error(stderr, UsageError(str(e)))
        return EXIT_USAGE
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_OK
    return EXIT_OK


def main() -> None:
    os.environ.setdefault("DJANGO_SETTINGS_MODULE", "condorcet.settings")
    import django

    django.setup()
    sys.exit(run(sys.argv[1:]))
