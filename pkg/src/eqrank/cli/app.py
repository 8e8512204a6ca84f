# eqrank/cli/app.py
from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Callable, Sequence
from typing import NoReturn, TextIO

from .. import utils
from ..config import RunConfig
from ..errors import EqrankError, InputError, PreconditionError
from . import compare, fetch, indicators, kernel, rank, score

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_PRECONDITION = 2

_COMMAND_MODULES = (indicators, rank, score, compare, kernel, fetch)
_RUNNERS: dict[str, Callable[[RunConfig, TextIO], None]] = {
    module.CMD_NAME: module._run for module in _COMMAND_MODULES
}


class _Parser(argparse.ArgumentParser):
    """Argument parser whose usage errors exit with status 1."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"💥  {self.prog}: {message}\n")


def build_parser() -> argparse.ArgumentParser:

    ### Top-level parser
    PARSER = _Parser(
        prog="eqrank",
        description=(
            "Rank network nodes into equivalence classes and score other "
            "rankings against them.\nAliases: `eqrank`, `eqr`"
        ),
    )
    PARSER.add_argument(
        "-v", "--verbose", action="count", default=0, help="More log output (-vv for debug)."
    )
    PARSER.add_argument("-q", "--quiet", action="store_true", help="Log errors only.")

    ### Subparsers inherit _Parser, modified in place by every command module
    subparsers: argparse._SubParsersAction = PARSER.add_subparsers(dest="cmd", required=True)
    for module in _COMMAND_MODULES:
        module._add_my_parser(subparsers)
    return PARSER


def run(config: RunConfig, out: TextIO | None = None) -> int:
    """Execute one validated configuration.

    :param config: What to run.
    :param out: Stream for the command's result, stdout by default.
    :return: Exit status: 0 success, 1 input or configuration error,
        2 computational precondition violated.
    """
    out = sys.stdout if out is None else out
    try:
        config.validate()
        _RUNNERS[config.command](config, out)
    except InputError as exc:
        return _fail(exc, EXIT_INPUT)
    except PreconditionError as exc:
        return _fail(exc, EXIT_PRECONDITION)
    except OSError as exc:
        return _fail(exc, EXIT_INPUT)
    return EXIT_OK


def _fail(exc: Exception, status: int) -> int:
    logger.debug("traceback", exc_info=exc)
    print(f"💥  {exc}", file=sys.stderr)
    return status


def main(argv: Sequence[str] | None = None) -> int:
    PARSER = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)

    if not argv:  # < Only the program name was entered
        PARSER.print_help(sys.stderr)
        return EXIT_INPUT

    args = PARSER.parse_args(argv)
    utils.setup_logging(-1 if args.quiet else args.verbose)
    try:
        config = RunConfig.from_namespace(args)
    except EqrankError as exc:
        return _fail(exc, EXIT_INPUT)
    return run(config)
