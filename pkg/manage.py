#!/usr/bin/env python
"""Command-line utility for the Condorcet Tilings project.

Engine subcommands (perm, heap, majority, ...) are routed through
``core.cli.run`` so they get the engine's exit codes; everything else is
handled by Django's own dispatcher.
"""
import os
import sys


def main():
    """Run engine or administrative tasks."""
    os.environ.setdefault("DJANGO_SETTINGS_MODULE", "condorcet.settings")
    try:
        import django
        from django.core.management import execute_from_command_line
    except ImportError as exc:
        raise ImportError(
            "Couldn't import Django. Are you sure it's installed and "
            "available on your PYTHONPATH environment variable? Did you "
            "forget to activate a virtual environment?"
        ) from exc

    if len(sys.argv) > 1:
        django.setup()
        from core.cli import SUBCOMMANDS, run

        if sys.argv[1] in SUBCOMMANDS:
            sys.exit(run(sys.argv[1:]))
    execute_from_command_line(sys.argv)


if __name__ == "__main__":
    main()
