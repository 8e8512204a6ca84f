"""Dominance and non-dominated sorting of nodes into equivalence classes.

Scores are first turned into dense ordinals per indicator (1 = best). A node
dominates another when its ordinals are nowhere worse and somewhere better.
Equivalence classes are the successive non-dominated layers: class 1 is the
set of nodes nothing dominates, class 2 the same after removing class 1, and
so on.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .centrality import ScoreTable
from .errors import PreconditionError, UnknownNodeError

logger = logging.getLogger(__name__)

DEFAULT_SCORE_TOL = 1e-9
_SCAN_CELLS = 1 << 22  # < bound on candidate x pool x rule cells per dominance scan

Method = Literal["auto", "reference", "fast"]
AUTO_FAST_NODES = 2000  # < "auto" takes the sort-based pass above this node count


# %%
# =====================================================================
# === Types
# =====================================================================


@dataclass(frozen=True)
class ImportanceTable:
    """Per-node importance vectors: one dense ordinal per rule, smaller is better.

    :param labels: Node label of every row.
    :param names: Rule name of every column.
    :param ordinals: ``(N, m)`` integer matrix, entries >= 1.
    """

    labels: tuple[str, ...]
    names: tuple[str, ...]
    ordinals: np.ndarray

    def __post_init__(self) -> None:
        if self.ordinals.shape != (len(self.labels), len(self.names)):
            raise ValueError("ordinal matrix shape does not match labels x names")
        if self.ordinals.size and self.ordinals.min() < 1:
            raise ValueError("ordinals start at 1")

    def vector(self, label: str) -> tuple[int, ...]:
        return tuple(int(x) for x in self.ordinals[self.labels.index(label)])


@dataclass(frozen=True)
class EquivalenceClasses:
    """Ordered partition of nodes into ranked classes, class 1 most important.

    :param labels: Labels of the node universe.
    :param classes: Node indices of every class, each sorted ascending.
    """

    labels: tuple[str, ...]
    classes: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        members = sorted(i for members in self.classes for i in members)
        if members != list(range(len(self.labels))):
            raise ValueError("classes must partition the node universe")
        if any(not members for members in self.classes):
            raise ValueError("classes must not be empty")

    @property
    def rank_of(self) -> np.ndarray:
        """1-based class index of every node."""
        ranks = np.zeros(len(self.labels), dtype=np.int64)
        for k, members in enumerate(self.classes, start=1):
            ranks[list(members)] = k
        return ranks

    def __len__(self) -> int:
        return len(self.classes)

    def labels_of(self, k: int) -> list[str]:
        """Labels in class *k* (1-based)."""
        return [self.labels[i] for i in self.classes[k - 1]]

    def rank_of_label(self, label: str) -> int:
        try:
            node = self.labels.index(label)
        except ValueError:
            raise UnknownNodeError(f"unknown node label: {label!r}") from None
        return int(self.rank_of[node])

    def sizes(self) -> list[int]:
        return [len(members) for members in self.classes]


# %%
# =====================================================================
# === Ordinals & dominance
# =====================================================================


def _dense_ordinals(column: np.ndarray, score_tol: float) -> np.ndarray:
    """Dense descending ranks; neighbors within relative *score_tol* share one."""
    out = np.zeros(column.size, dtype=np.int64)
    if column.size == 0:
        return out
    order = np.argsort(-column, kind="stable")
    ordinal = 1
    out[order[0]] = ordinal
    for prev, cur in zip(order[:-1], order[1:]):
        a, b = column[prev], column[cur]
        if a - b > score_tol * max(abs(a), abs(b)):
            ordinal += 1
        out[cur] = ordinal
    return out


def ordinalize(t: ScoreTable, score_tol: float = DEFAULT_SCORE_TOL) -> ImportanceTable:
    """Turn larger-is-better scores into dense ordinals, 1 for the best value.

    Per indicator, values are sorted descending; adjacent values whose
    relative difference is at most *score_tol* share an ordinal.
    """
    if score_tol < 0:
        raise PreconditionError(f"score_tol must be >= 0, got {score_tol}")
    ordinals = np.column_stack(
        [_dense_ordinals(t.scores[:, j], score_tol) for j in range(len(t.names))]
    ).reshape(t.node_count, len(t.names))
    return ImportanceTable(labels=t.labels, names=t.names, ordinals=ordinals)


def dominates(a: Sequence[int], b: Sequence[int]) -> bool:
    """True iff *a* is nowhere worse than *b* and somewhere strictly better.

    :raises PreconditionError: If the vectors differ in length.
    """
    if len(a) != len(b):
        raise PreconditionError(f"vector lengths differ: {len(a)} vs {len(b)}")
    return all(x <= y for x, y in zip(a, b)) and any(x < y for x, y in zip(a, b))


def _dominated_mask(candidates: np.ndarray, pool: np.ndarray) -> np.ndarray:
    """For every candidate row: is any row of *pool* dominating it?"""
    out = np.zeros(candidates.shape[0], dtype=bool)
    if pool.shape[0] == 0 or candidates.shape[0] == 0:
        return out
    m = max(candidates.shape[1], 1)
    step = max(1, _SCAN_CELLS // (pool.shape[0] * m))
    for start in range(0, candidates.shape[0], step):
        c = candidates[start : start + step, None, :]
        p = pool[None, :, :]
        hit = np.all(p <= c, axis=2) & np.any(p < c, axis=2)
        out[start : start + step] = hit.any(axis=1)
    return out


# %%
# =====================================================================
# === Equivalence classes
# =====================================================================


def _layers_reference(ordinals: np.ndarray) -> list[list[int]]:
    """Repeatedly peel off the non-dominated set of the remaining nodes."""
    remaining = np.arange(ordinals.shape[0])
    layers: list[list[int]] = []
    while remaining.size:
        vectors = ordinals[remaining]
        dominated = _dominated_mask(vectors, vectors)
        layers.append(remaining[~dominated].tolist())
        remaining = remaining[dominated]
        logger.debug("layer %d: %d nodes, %d left", len(layers), len(layers[-1]), remaining.size)
    return layers


class _Layer:
    """Growable row buffer of one layer for the sort-based pass."""

    def __init__(self, width: int) -> None:
        self.rows = np.empty((16, width), dtype=np.int64)
        self.size = 0
        self.members: list[int] = []

    def append(self, node: int, vector: np.ndarray) -> None:
        if self.size == self.rows.shape[0]:
            self.rows = np.concatenate([self.rows, np.empty_like(self.rows)])
        self.rows[self.size] = vector
        self.size += 1
        self.members.append(node)

    def dominates(self, vector: np.ndarray) -> bool:
        rows = self.rows[: self.size]
        return bool(np.any(np.all(rows <= vector, axis=1) & np.any(rows < vector, axis=1)))


def _layers_fast(ordinals: np.ndarray) -> list[list[int]]:
    """Sort-based pass: nodes in lexicographic order, placed by binary search.

    A dominator is always lexicographically smaller than what it dominates,
    so every node's dominators are placed before it. If some member of
    layer k dominates a node, so does some member of every earlier layer,
    which makes "first layer with no dominator" binary-searchable.
    """
    n, m = ordinals.shape
    order = np.lexsort(ordinals.T[::-1]) if m else np.arange(n)
    layers: list[_Layer] = []
    for node in order.tolist():
        vector = ordinals[node]
        lo, hi = 0, len(layers)
        while lo < hi:
            mid = (lo + hi) // 2
            if layers[mid].dominates(vector):
                lo = mid + 1
            else:
                hi = mid
        if lo == len(layers):
            layers.append(_Layer(m))
        layers[lo].append(node, vector)
    return [layer.members for layer in layers]


def resolve_method(method: Method, node_count: int) -> Literal["reference", "fast"]:
    """Concrete extraction pass for *method*.

    ``"auto"`` keeps the exhaustive scans for up to :data:`AUTO_FAST_NODES`
    nodes and switches to the sort-based pass above that.
    """
    if method == "auto":
        return "fast" if node_count > AUTO_FAST_NODES else "reference"
    if method in ("reference", "fast"):
        return method
    raise ValueError(f"unknown method {method!r}")


def equivalence_classes(
    vs: ImportanceTable,
    *,
    method: Method = "auto",
    verify: bool = True,
) -> EquivalenceClasses:
    """Partition nodes into successive non-dominated layers.

    :param vs: Importance vectors.
    :param method: ``"reference"`` peels layers by exhaustive dominance
        scans; ``"fast"`` uses the sort-based pass. Both give the same classes.
        ``"auto"`` picks one by node count, see :func:`resolve_method`.
    :param verify: Check the result against every class invariant.
    :return: Classes in extraction order, members sorted by node index.
    """
    method = resolve_method(method, len(vs.labels))
    if method == "reference":
        layers = _layers_reference(vs.ordinals)
    else:
        layers = _layers_fast(vs.ordinals)

    ec = EquivalenceClasses(
        labels=vs.labels,
        classes=tuple(tuple(sorted(layer)) for layer in layers),
    )
    logger.info("%d nodes in %d equivalence classes (%s)", len(vs.labels), len(ec), method)
    if verify:
        verify_classes(ec, vs)
    return ec


def verify_classes(ec: EquivalenceClasses, vs: ImportanceTable) -> None:
    """Check the layering invariants of *ec* against the vectors it came from.

    Within a class no node dominates another, and every node of class k > 1
    is dominated by some node of class k - 1.

    :raises PreconditionError: On the first violated invariant.
    """
    if ec.labels != vs.labels:
        raise PreconditionError("classes and vectors describe different nodes")
    previous: np.ndarray | None = None
    for k, members in enumerate(ec.classes, start=1):
        rows = vs.ordinals[list(members)]
        if _dominated_mask(rows, rows).any():
            raise PreconditionError(f"class {k} holds a node dominated by a class mate")
        if previous is not None and not _dominated_mask(rows, previous).all():
            raise PreconditionError(f"class {k} holds a node no class {k - 1} node dominates")
        previous = rows
