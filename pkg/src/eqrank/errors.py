"""Exception hierarchy for eqrank.

The CLI maps :class:`InputError` to exit status 1 and
:class:`PreconditionError` to exit status 2.
"""

from __future__ import annotations


class EqrankError(Exception):
    """Base class of every error raised by eqrank."""


# ====================================================================
# === Input & configuration (exit 1)
# ====================================================================


class InputError(EqrankError):
    """Raised when input data or configuration cannot be used."""


class GraphParseError(InputError, ValueError):
    """Raised when a network file is malformed.

    :param message: What is wrong.
    :param line: 1-based line number of the offending input, if known.
    """

    def __init__(self, message: str, line: int | None = None) -> None:
        self.message = message
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class ConfigError(InputError, ValueError):
    """Raised when a run configuration holds invalid values."""


class DatasetError(InputError):
    """Raised for unknown datasets, failed downloads and checksum mismatches."""


class UnwritableLabelError(InputError, ValueError):
    """Raised when a node label cannot be represented in the output format."""


class UnknownNodeError(InputError, KeyError):
    """Raised when a node label is not part of a graph."""

    def __str__(self) -> str:
        # > KeyError wraps its message in quotes otherwise
        return str(self.args[0]) if self.args else ""


# ====================================================================
# === Computational preconditions (exit 2)
# ====================================================================


class PreconditionError(EqrankError, ValueError):
    """Raised when a computation's precondition does not hold."""


class DisconnectedGraphError(PreconditionError):
    """Raised when closeness is requested on a disconnected graph."""


class EmptyGraphError(PreconditionError):
    """Raised when an algorithm needs at least one node."""


class SequenceMismatchError(PreconditionError):
    """Raised when a ranked sequence does not cover the benchmark's node set."""
