"""Command-line interface: ``eqrank <command> ...`` (alias ``eqr``)."""

import sys

from .app import build_parser, run
from .app import main as _main


def main() -> None:
    sys.exit(_main())


__all__ = ["build_parser", "main", "run"]
