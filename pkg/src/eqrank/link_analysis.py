"""Rankings to compare against the benchmark: PageRank, HITS, score files.

Undirected edges are treated as two opposite arcs. Every ranking ends up as
a :class:`RankedSequence`, ordered groups of tied nodes.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import EmptyGraphError, GraphParseError, PreconditionError, UnknownNodeError
from .graph_io import Graph

logger = logging.getLogger(__name__)

DEFAULT_JUMP = 0.15
DEFAULT_PAGERANK_ITERATIONS = 200
DEFAULT_HITS_MAX_ITERATIONS = 500
DEFAULT_HITS_TOL = 1e-8
DEFAULT_TIE_TOL = 1e-12


@dataclass(frozen=True)
class RankedSequence:
    """A compared algorithm's output as ordered groups of tied nodes.

    :param labels: Labels of the node universe; groups hold indices into it.
    :param groups: Node groups, most important first.
    :param source_scores: Scores the groups were built from, if any.
    """

    labels: tuple[str, ...]
    groups: tuple[tuple[int, ...], ...]
    source_scores: np.ndarray | None = None

    def __post_init__(self) -> None:
        members = sorted(i for group in self.groups for i in group)
        if members != list(range(len(self.labels))):
            raise ValueError("groups must partition the node universe")
        if any(not group for group in self.groups):
            raise ValueError("groups must not be empty")

    def label_groups(self) -> list[list[str]]:
        return [[self.labels[i] for i in group] for group in self.groups]

    @property
    def is_total(self) -> bool:
        return all(len(group) == 1 for group in self.groups)


# %%
# =====================================================================
# === PageRank
# =====================================================================


def pagerank(
    g: Graph,
    jump: float = DEFAULT_JUMP,
    iterations: int = DEFAULT_PAGERANK_ITERATIONS,
) -> np.ndarray:
    """PageRank by a fixed number of power-iteration sweeps.

    ``p' = jump/N + (1 - jump) * sum over arcs v->u of p(v)/outdeg(v)``;
    the mass of isolated nodes is spread uniformly. There is no early stop.

    :param g: Graph, every edge read as two arcs.
    :param jump: Teleport probability, in ``(0, 1)``.
    :param iterations: Number of sweeps, at least 1.
    :return: Probability vector summing to 1.
    :raises EmptyGraphError: If ``g`` has no nodes.
    """
    if not 0 < jump < 1:
        raise PreconditionError(f"jump must lie in (0, 1), got {jump}")
    if iterations < 1:
        raise PreconditionError(f"iterations must be >= 1, got {iterations}")
    n = g.node_count
    if n == 0:
        raise EmptyGraphError("PageRank needs at least one node")

    adj = g.to_csr()
    deg = g.degrees().astype(np.float64)
    dangling = deg == 0
    inv_deg = np.zeros(n)
    np.divide(1.0, deg, out=inv_deg, where=~dangling)

    p = np.full(n, 1.0 / n)
    for _ in range(iterations):
        spread = adj @ (p * inv_deg) + p[dangling].sum() / n
        p = jump / n + (1.0 - jump) * spread  # < fresh vector every sweep
    return p


# %%
# =====================================================================
# === HITS
# =====================================================================


def hits(
    g: Graph,
    max_iterations: int = DEFAULT_HITS_MAX_ITERATIONS,
    tol: float = DEFAULT_HITS_TOL,
) -> np.ndarray:
    """Authority scores of the mutual hub/authority iteration.

    Authorities collect the hub scores pointing at them, hubs collect the
    authorities they point to, both L2-normalized each step. Stops when the
    authority vector moves less than *tol* (L1) or after *max_iterations*.

    :return: Authority vector with L2 norm 1.
    :raises EmptyGraphError: If ``g`` has no nodes.
    """
    if max_iterations < 1:
        raise PreconditionError(f"max_iterations must be >= 1, got {max_iterations}")
    n = g.node_count
    if n == 0:
        raise EmptyGraphError("HITS needs at least one node")

    adj = g.to_csr()
    uniform = np.full(n, 1.0 / math.sqrt(n))
    hub = uniform.copy()
    authority = uniform.copy()
    for step in range(1, max_iterations + 1):
        fresh = _l2_normalized(adj.T @ hub, uniform)
        hub = _l2_normalized(adj @ fresh, uniform)
        moved = float(np.abs(fresh - authority).sum())
        authority = fresh
        if moved < tol:
            logger.debug("HITS converged after %d iterations", step)
            break
    else:
        logger.info("HITS stopped at max_iterations=%d", max_iterations)
    return authority


def _l2_normalized(vector: np.ndarray, fallback: np.ndarray) -> np.ndarray:
    norm = float(np.linalg.norm(vector))
    if norm == 0.0:  # < edgeless graph
        return fallback.copy()
    return vector / norm


# %%
# =====================================================================
# === Sequences
# =====================================================================


def to_ranked_sequence(
    scores: Sequence[float] | np.ndarray,
    labels: Sequence[str] | None = None,
    tie_tol: float = DEFAULT_TIE_TOL,
) -> RankedSequence:
    """Group nodes by descending score.

    Scores are divided by their largest magnitude when it exceeds 1, so the
    same tolerance fits normalized and raw scores. Neighbors in sorted order
    whose scores differ by at most *tie_tol* share a group, chained
    transitively.

    :param scores: One finite score per node.
    :param labels: Node labels; defaults to ``"0" .. "N-1"``.
    :param tie_tol: Tie tolerance.
    """
    values = np.asarray(scores, dtype=np.float64)
    if not np.all(np.isfinite(values)):
        raise PreconditionError("scores must be finite")
    names = tuple(labels) if labels is not None else tuple(map(str, range(values.size)))
    if len(names) != values.size:
        raise PreconditionError(f"{values.size} scores for {len(names)} labels")
    if values.size == 0:
        return RankedSequence(labels=names, groups=(), source_scores=values)

    scale = max(float(np.abs(values).max()), 1.0)
    scaled = values / scale
    order = np.argsort(-scaled, kind="stable")

    groups: list[list[int]] = [[int(order[0])]]
    for prev, cur in zip(order[:-1], order[1:]):
        if scaled[prev] - scaled[cur] <= tie_tol:
            groups[-1].append(int(cur))
        else:
            groups.append([int(cur)])
    return RankedSequence(
        labels=names,
        groups=tuple(tuple(sorted(group)) for group in groups),
        source_scores=values,
    )


def read_score_file(
    source: str | Path | bytes, labels: Sequence[str], *, ignore: Iterable[str] = ()
) -> np.ndarray:
    """Read third-party scores from ``label<TAB>score`` lines.

    Blank lines and lines starting with ``#`` are skipped.

    :param source: Path to the file, or its content as bytes.
    :param labels: Node labels the scores must cover exactly.
    :param ignore: Further labels the file may score; their lines are skipped.
    :return: Scores aligned with *labels*.
    :raises GraphParseError: On malformed lines, duplicates, non-finite scores
        or content that is not UTF-8.
    :raises UnknownNodeError: On labels outside *labels* and *ignore*, or missing ones.
    """
    data = source if isinstance(source, bytes) else Path(source).read_bytes()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise GraphParseError(f"score file is not UTF-8: {exc}") from exc
    position = {label: i for i, label in enumerate(labels)}
    skipped = set(ignore)
    scores = np.full(len(position), np.nan)
    seen: set[str] = set()

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t") if "\t" in line else line.split()
        if len(parts) != 2:
            raise GraphParseError(f"expected 'label<TAB>score', got {line!r}", line=lineno)
        label, raw_score = parts[0].strip(), parts[1].strip()
        try:
            value = float(raw_score)
        except ValueError:
            raise GraphParseError(f"not a number: {raw_score!r}", line=lineno) from None
        if not math.isfinite(value):
            raise GraphParseError(f"score must be finite, got {raw_score}", line=lineno)
        if label not in position and label not in skipped:
            raise UnknownNodeError(f"line {lineno}: unknown node label {label!r}")
        if label in seen:
            raise GraphParseError(f"duplicate label {label!r}", line=lineno)
        seen.add(label)
        if label in position:
            scores[position[label]] = value

    missing = [label for label in labels if label not in seen]
    if missing:
        preview = ", ".join(missing[:5])
        raise UnknownNodeError(f"score file lacks {len(missing)} node(s): {preview}")
    return scores
