"""Command-line entry: ``main(argv)`` parses, runs one subcommand, returns its status."""
from __future__ import annotations

import logging
import sys
from typing import Optional, Sequence

from src.cli.commands import EXIT_USAGE, run_command
from src.cli.parser import build_parser
from src.engine.sparse_core import configure_workers
from src.errors import RembedError
from src.utils.log_utils import configure_logging

logger = logging.getLogger(__name__)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors, 0 on --help
        return int(exc.code or 0)

    configure_logging(-1 if args.quiet else args.verbose)
    configure_workers(args.threads)
    try:
        return run_command(args)
    except FileNotFoundError as exc:
        print(f"rembed {args.command}: file not found: {exc.filename}", file=sys.stderr)
    except RembedError as exc:
        print(f"rembed {args.command}: {exc}", file=sys.stderr)
    except OSError as exc:
        print(f"rembed {args.command}: {exc.filename or ''}: {exc.strerror or exc}", file=sys.stderr)
    except MemoryError:
        print(f"rembed {args.command}: out of memory for the requested dimensions", file=sys.stderr)
    return EXIT_USAGE
