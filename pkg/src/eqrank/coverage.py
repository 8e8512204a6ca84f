"""Score a ranked sequence against the benchmark equivalence classes.

The distance of a total order to the benchmark is the least number of
adjacent swaps that sorts its benchmark rank numbers ascending, i.e. the
number of pairs placed in the wrong order across classes. Pairs inside one
class never count.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import asdict, dataclass

import numpy as np

from .errors import SequenceMismatchError
from .link_analysis import RankedSequence
from .pareto import EquivalenceClasses

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CoverageReport:
    """Best/worst coverage of a ranked sequence.

    ``best_coverage = 1 - distance_best / max_distance`` (likewise worst);
    ``certratio = best_coverage - worst_coverage``. With ``max_distance == 0``
    both coverages are 1 and the report is flagged degenerate.
    """

    distance_best: int
    distance_worst: int
    max_distance: int
    best_coverage: float
    worst_coverage: float
    certratio: float
    degenerate: bool = False

    def to_dict(self) -> dict[str, int | float | bool]:
        return asdict(self)


# %%
# =====================================================================
# === Distances
# =====================================================================


def count_inversions(values: Sequence[int]) -> int:
    """Number of index pairs ``i < j`` with ``values[i] > values[j]`` (merge sort)."""
    items = list(values)
    buffer = items[:]
    inversions = 0
    width = 1
    n = len(items)
    while width < n:
        for lo in range(0, n, 2 * width):
            mid = min(lo + width, n)
            hi = min(lo + 2 * width, n)
            i, j, k = lo, mid, lo
            while i < mid and j < hi:
                if items[j] < items[i]:
                    buffer[k] = items[j]
                    inversions += mid - i
                    j += 1
                else:
                    buffer[k] = items[i]
                    i += 1
                k += 1
            buffer[k : k + mid - i] = items[i:mid]
            k += mid - i
            buffer[k : k + hi - j] = items[j:hi]
        items, buffer = buffer, items
        width *= 2
    return inversions


def _ranks_along(order: Sequence[int], p: EquivalenceClasses) -> list[int]:
    n = len(p.labels)
    if len(order) != n or sorted(order) != list(range(n)):
        raise SequenceMismatchError(
            f"sequence of {len(order)} nodes is not a permutation of the {n} ranked nodes"
        )
    return p.rank_of[list(order)].tolist()


def sequence_distance(order: Sequence[int], p: EquivalenceClasses) -> int:
    """Least adjacent swaps to bring *order* into benchmark rank order.

    :param order: Node indices of ``p``'s universe, most important first.
    :param p: Benchmark classes.
    :raises SequenceMismatchError: If *order* is not a permutation.
    """
    return count_inversions(_ranks_along(order, p))


def greedy_swap_distance(order: Sequence[int], p: EquivalenceClasses) -> int:
    """Swap-counting procedure over the rank difference array.

    Repeatedly swaps the adjacent pair with the largest positive rank
    difference until no positive difference is left. Quadratic; kept as a
    cross-check of :func:`sequence_distance`.
    """
    ranks_arr = np.asarray(_ranks_along(order, p), dtype=np.int64)
    diff = ranks_arr[:-1] - ranks_arr[1:]
    swaps = 0
    while diff.size and diff.max() > 0:
        i = int(diff.argmax())
        ranks_arr[i], ranks_arr[i + 1] = ranks_arr[i + 1], ranks_arr[i]
        swaps += 1
        for j in (i - 1, i, i + 1):
            if 0 <= j < diff.size:
                diff[j] = ranks_arr[j] - ranks_arr[j + 1]
    return swaps


def max_distance(p: EquivalenceClasses) -> int:
    """Largest possible distance: all cross-class pairs reversed."""
    n = len(p.labels)
    return n * (n - 1) // 2 - sum(s * (s - 1) // 2 for s in p.sizes())


# %%
# =====================================================================
# === Coverage
# =====================================================================


def _aligned_groups(s: RankedSequence, p: EquivalenceClasses) -> list[list[int]]:
    """Map the sequence's groups into ``p``'s node indices by label."""
    if sorted(s.labels) != sorted(p.labels) or len(set(p.labels)) != len(p.labels):
        raise SequenceMismatchError(
            f"sequence covers {len(s.labels)} nodes, benchmark {len(p.labels)}; "
            "node sets differ"
        )
    if s.labels == p.labels:
        return [list(group) for group in s.groups]
    position = {label: i for i, label in enumerate(p.labels)}
    return [[position[s.labels[i]] for i in group] for group in s.groups]


def coverage_report(s: RankedSequence, p: EquivalenceClasses) -> CoverageReport:
    """Best and worst coverage of *s* against the benchmark *p*.

    Tied nodes of *s* are ordered by ascending benchmark rank for the best
    sequence and by descending rank for the worst one.

    :raises SequenceMismatchError: If *s* and *p* rank different nodes.
    """
    groups = _aligned_groups(s, p)
    rank = p.rank_of
    best: list[int] = []
    worst: list[int] = []
    for group in groups:
        best.extend(sorted(group, key=lambda v: (rank[v], v)))
        worst.extend(sorted(group, key=lambda v: (-rank[v], v)))

    d_best = sequence_distance(best, p)
    d_worst = sequence_distance(worst, p)
    d_max = max_distance(p)
    if d_max == 0:
        logger.info("single equivalence class: coverage is 1 by convention")
        return CoverageReport(d_best, d_worst, 0, 1.0, 1.0, 0.0, degenerate=True)

    best_cov = 1.0 - d_best / d_max
    worst_cov = 1.0 - d_worst / d_max
    return CoverageReport(
        distance_best=d_best,
        distance_worst=d_worst,
        max_distance=d_max,
        best_coverage=best_cov,
        worst_coverage=worst_cov,
        certratio=best_cov - worst_cov,
    )
