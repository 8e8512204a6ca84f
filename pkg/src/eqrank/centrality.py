"""Per-node indicators: degree, betweenness, closeness and neighbors.

Betweenness and closeness share one all-pairs sweep. Sources are processed
in fixed-size batches; within a batch, shortest-path counts travel outward
one BFS level at a time as a sparse product with the adjacency matrix, and
pair dependencies travel back inward the same way (Brandes' accumulation,
one column per source). Batch results are merged in batch order, so the
output does not depend on the number of worker threads.
"""

from __future__ import annotations

import logging
import time
from collections.abc import Iterator
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import partial
from typing import Literal

import numpy as np
from scipy import sparse

from .errors import DisconnectedGraphError, PreconditionError
from .graph_io import Graph

logger = logging.getLogger(__name__)

INDICATORS: tuple[str, ...] = ("degree", "betweenness", "closeness", "neighbors")
SWEEP_BATCH = 64  # < sources per batch, independent of the thread count

ComponentPolicy = Literal["require-connected", "largest"]


# %%
# =====================================================================
# === Score table
# =====================================================================


@dataclass(frozen=True)
class ScoreTable:
    """Indicator scores of every node, larger is better.

    :param labels: Node label of every row.
    :param names: Indicator name of every column.
    :param scores: ``(len(labels), len(names))`` float matrix.
    """

    labels: tuple[str, ...]
    names: tuple[str, ...]
    scores: np.ndarray

    def __post_init__(self) -> None:
        if self.scores.shape != (len(self.labels), len(self.names)):
            raise ValueError(
                f"score matrix shape {self.scores.shape} does not match "
                f"{len(self.labels)} nodes x {len(self.names)} indicators"
            )
        if not np.all(np.isfinite(self.scores)):
            raise ValueError("score table holds non-finite values")

    @property
    def node_count(self) -> int:
        return len(self.labels)

    def column(self, name: str) -> np.ndarray:
        try:
            return self.scores[:, self.names.index(name)]
        except ValueError:
            raise KeyError(f"no indicator named {name!r}; have {self.names}") from None

    def rows(self) -> Iterator[tuple[str, tuple[float, ...]]]:
        for label, row in zip(self.labels, self.scores.tolist()):
            yield label, tuple(row)


# %%
# =====================================================================
# === Local indicators
# =====================================================================


def degree(g: Graph) -> np.ndarray:
    """Number of neighbors of every node."""
    return g.degrees().astype(np.float64)


def neighbors_score(g: Graph, nk: float = 1.0) -> np.ndarray:
    """Power mean style aggregate of neighbor degrees.

    ``Neighbors(a) = (sum over neighbors i of Degree(i)**nk) ** (1/nk)``;
    with ``nk = 1`` this is the plain sum of neighbor degrees, computed in
    integer arithmetic.

    :raises PreconditionError: If ``nk <= 0``.
    """
    if not nk > 0:
        raise PreconditionError(f"nk must be positive, got {nk}")
    deg = g.degrees()
    adj = g.to_csr()
    if nk == 1:
        return (adj.astype(np.int64) @ deg).astype(np.float64)
    powered = adj @ (deg.astype(np.float64) ** nk)
    return powered ** (1.0 / nk)


# %%
# =====================================================================
# === All-pairs sweep
# =====================================================================


@dataclass(frozen=True)
class PathStatistics:
    """Shortest-path aggregates of every node.

    :param betweenness: Freeman betweenness, each unordered pair once.
    :param distance_sums: Sum of hop distances to every reachable node.
    :param reached: Number of reachable nodes, the node itself included.
    """

    betweenness: np.ndarray
    distance_sums: np.ndarray
    reached: np.ndarray


def _sweep_batch(
    adj: sparse.csr_array, sources: np.ndarray
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Run BFS + dependency accumulation from a batch of sources at once.

    Arrays are laid out nodes x sources. Returns the batch's betweenness
    contribution (ordered pairs), and per-source distance sums and reach.
    """
    n = adj.shape[0]
    cols = np.arange(sources.size)
    sigma = np.zeros((n, sources.size))
    sigma[sources, cols] = 1.0
    depth = np.full((n, sources.size), -1, dtype=np.int64)
    depth[sources, cols] = 0

    frontier = sigma.copy()
    level = 0
    while True:
        arriving = adj @ frontier
        fresh = (arriving > 0) & (depth < 0)
        if not fresh.any():
            break
        level += 1
        depth[fresh] = level
        sigma[fresh] = arriving[fresh]
        frontier = np.where(fresh, arriving, 0.0)

    reached = (depth >= 0).sum(axis=0)
    distance_sums = np.where(depth > 0, depth, 0).sum(axis=0)

    delta = np.zeros((n, sources.size))
    for d in range(level, 0, -1):
        at_d = depth == d
        coeff = np.zeros((n, sources.size))
        coeff[at_d] = (1.0 + delta[at_d]) / sigma[at_d]
        pulled = adj @ coeff
        at_prev = depth == d - 1
        delta[at_prev] += sigma[at_prev] * pulled[at_prev]
    delta[sources, cols] = 0.0

    return delta.sum(axis=1), distance_sums, reached


def path_statistics(
    g: Graph, *, threads: int = 1, batch_size: int = SWEEP_BATCH
) -> PathStatistics:
    """Betweenness, distance sums and reach of every node in one sweep.

    :param g: Graph; may be disconnected.
    :param threads: Worker threads running batches concurrently.
    :param batch_size: Sources per batch.
    :return: Aggregates indexed like ``g``.
    """
    n = g.node_count
    if n == 0:
        empty = np.zeros(0)
        return PathStatistics(empty, empty.astype(np.int64), empty.astype(np.int64))

    adj = g.to_csr()
    batches = [np.arange(s, min(s + batch_size, n)) for s in range(0, n, batch_size)]
    started = time.perf_counter()
    sweep = partial(_sweep_batch, adj)

    if threads > 1 and len(batches) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(sweep, batches))  # < map keeps batch order
    else:
        results = []
        for i, batch in enumerate(batches, start=1):
            results.append(sweep(batch))
            logger.debug("sweep batch %d/%d done", i, len(batches))

    betweenness = np.zeros(n)
    for partial_bc, _, _ in results:
        betweenness += partial_bc
    betweenness /= 2.0  # < every unordered pair was visited from both ends

    logger.info(
        "all-pairs sweep over %d nodes took %.2fs (%d batches, %d threads)",
        n,
        time.perf_counter() - started,
        len(batches),
        threads,
    )
    return PathStatistics(
        betweenness=betweenness,
        distance_sums=np.concatenate([r[1] for r in results]),
        reached=np.concatenate([r[2] for r in results]),
    )


def betweenness(g: Graph, *, threads: int = 1) -> np.ndarray:
    """Freeman betweenness: sum over unordered pairs of the geodesic share through a node."""
    return path_statistics(g, threads=threads).betweenness


def _closeness_from(stats: PathStatistics) -> np.ndarray:
    sums = stats.distance_sums.astype(np.float64)
    out = np.zeros_like(sums)
    # > A lone node has an empty distance sum; its closeness is 0 by convention
    np.divide(1.0, sums, out=out, where=sums > 0)
    return out


def closeness(
    g: Graph, *, restrict_to_largest_component: bool = False, threads: int = 1
) -> np.ndarray:
    """Reciprocal of the summed hop distance to every other node.

    :param g: Graph, connected unless *restrict_to_largest_component*.
    :param restrict_to_largest_component: Compute within the largest
        component; nodes outside it get ``nan``.
    :raises DisconnectedGraphError: If ``g`` is disconnected and no
        restriction was requested.
    """
    comps = g.components()
    if len(comps) <= 1:
        return _closeness_from(path_statistics(g, threads=threads))
    if not restrict_to_largest_component:
        raise DisconnectedGraphError(
            f"closeness undefined: graph has {len(comps)} connected components"
        )
    largest = max(comps, key=len)
    out = np.full(g.node_count, np.nan)
    out[largest] = _closeness_from(path_statistics(g.subgraph(largest), threads=threads))
    return out


# %%
# =====================================================================
# === Table
# =====================================================================


def restrict_to_component(g: Graph, component: ComponentPolicy) -> Graph:
    """Apply the component policy: keep ``g`` or cut it to its largest component.

    :raises DisconnectedGraphError: For ``"require-connected"`` on a
        disconnected graph.
    """
    if component not in ("require-connected", "largest"):
        raise ValueError(f"unknown component policy {component!r}")
    comps = g.components()
    if len(comps) <= 1:
        return g
    if component == "require-connected":
        raise DisconnectedGraphError(
            f"closeness undefined: graph has {len(comps)} connected components "
            "(use the 'largest' component policy to rank the largest one)"
        )
    sub = g.largest_component()
    logger.warning(
        "ranking the largest component only: %d of %d nodes excluded",
        g.node_count - sub.node_count,
        g.node_count,
    )
    return sub


def score_table(
    g: Graph,
    nk: float = 1.0,
    *,
    component: ComponentPolicy = "require-connected",
    threads: int = 1,
) -> ScoreTable:
    """Compute the four indicators, columns in :data:`INDICATORS` order.

    :param g: Graph to score.
    :param nk: Exponent of the neighbors indicator.
    :param component: ``"require-connected"`` or ``"largest"``.
    :param threads: Worker threads for the all-pairs sweep.
    :return: Score table over the ranked nodes.
    """
    ranked = restrict_to_component(g, component)
    stats = path_statistics(ranked, threads=threads)
    scores = np.column_stack(
        [
            degree(ranked),
            stats.betweenness,
            _closeness_from(stats),
            neighbors_score(ranked, nk),
        ]
    ).reshape(ranked.node_count, len(INDICATORS))
    return ScoreTable(labels=ranked.node_labels, names=INDICATORS, scores=scores)
