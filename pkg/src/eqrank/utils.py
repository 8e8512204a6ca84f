"""Utility functions for eqrank: logging setup and output rendering."""

# %%
from __future__ import annotations

import json
import logging
import math
import re
import sys
from collections.abc import Iterable, Mapping, Sequence
from typing import Any

import numpy as np

REAL_DECIMALS = 6
JSON_SCHEMA = "eqrank/1"


# %%
# =====================================================================
# === Logging
# =====================================================================


def setup_logging(verbosity: int = 0) -> None:
    """Route library logs to stderr.

    :param verbosity: ``-1`` errors only, ``0`` warnings, ``1`` info, ``2+`` debug.
    """
    if verbosity < 0:
        level = logging.ERROR
    elif verbosity == 0:
        level = logging.WARNING
    elif verbosity == 1:
        level = logging.INFO
    else:
        level = logging.DEBUG
    logging.basicConfig(
        stream=sys.stderr,
        level=level,
        format="%(levelname)s %(name)s: %(message)s",
        force=True,  # < replaces handlers of earlier calls
    )


# %%
# =====================================================================
# === Labels
# =====================================================================

_DIGITS = re.compile(r"(\d+)")


def natural_key(label: str) -> tuple[tuple[int, int | str], ...]:
    """Sort key ordering ``"2"`` before ``"10"`` and ``"SN9"`` before ``"SN10"``."""
    return tuple(
        (0, int(part)) if part.isdigit() else (1, part)
        for part in _DIGITS.split(label)
        if part
    )


def sorted_labels(labels: Iterable[str]) -> list[str]:
    return sorted(labels, key=natural_key)


# %%
# =====================================================================
# === Numbers
# =====================================================================


def format_real(value: float) -> str:
    """Fixed 6-decimal rendering; ``nan`` for missing values."""
    if math.isnan(value):
        return "nan"
    text = f"{value:.{REAL_DECIMALS}f}"
    return "0.000000" if text == "-0.000000" else text


def format_cell(value: Any) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "yes" if value else "no"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format_real(float(value))
    if isinstance(value, (list, tuple)):
        return " ".join(format_cell(v) for v in value)
    return str(value)


def round_reals(value: Any) -> Any:
    """Recursively round floats to 6 decimals and turn numpy scalars into Python ones."""
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return None if math.isnan(value) else round(value, REAL_DECIMALS) + 0.0
    if isinstance(value, Mapping):
        return {str(k): round_reals(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [round_reals(v) for v in value]
    return value


# %%
# =====================================================================
# === Renderers
# =====================================================================


def render_table(headers: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    """Left-aligned text table with a dashed rule under the header."""
    cells = [[format_cell(v) for v in row] for row in rows]
    widths = [len(h) for h in headers]
    for row in cells:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))

    def line(values: Sequence[str]) -> str:
        return "  ".join(v.ljust(w) for v, w in zip(values, widths)).rstrip()

    out = [line(headers), line(["-" * w for w in widths])]
    out.extend(line(row) for row in cells)
    return "\n".join(out) + "\n"


def render_tsv(headers: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    out = ["\t".join(headers)]
    out.extend("\t".join(format_cell(v) for v in row) for row in rows)
    return "\n".join(out) + "\n"


def render_json(command: str, graph: Mapping[str, Any], payload: Mapping[str, Any]) -> str:
    """Versioned JSON document; keys keep insertion order."""
    document = {
        "schema": JSON_SCHEMA,
        "command": command,
        "graph": dict(graph),
        **payload,
    }
    return json.dumps(round_reals(document), indent=2, ensure_ascii=False) + "\n"
