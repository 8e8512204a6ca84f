"""Published results on the karate club, dolphin and Internet AS networks.

The dolphin and AS archives are downloaded by ``eqrank fetch``; their tests
skip when the archive is not cached yet.
"""

from __future__ import annotations

import time
from collections.abc import Callable

import numpy as np
import pytest

from eqrank.analysis import completeness_check, extract_kernel
from eqrank.centrality import score_table
from eqrank.coverage import coverage_report, max_distance
from eqrank.datasets import is_cached, load_dataset
from eqrank.graph_io import Graph
from eqrank.link_analysis import hits, pagerank, to_ranked_sequence
from eqrank.pareto import EquivalenceClasses, equivalence_classes, ordinalize

ZACHARY_CLASSES = [
    ["1", "34"],
    ["3", "33"],
    ["2", "9", "32"],
    ["4", "14"],
    ["6", "7", "20", "24", "28", "31"],
    ["8", "26", "29", "30"],
    ["5", "10", "11", "15", "16", "19", "21", "23", "25"],
    ["18", "22"],
    ["13"],
    ["12", "27"],
    ["17"],
]

# > ranking: (best, worst, certratio)
ZACHARY_COVERAGE = {
    "degree": (0.991935, 0.866935, 0.125000),
    "betweenness": (0.977823, 0.868952, 0.108871),
    "closeness": (0.943548, 0.913306, 0.030242),
    "neighbors": (0.907258, 0.899194, 0.008064),
}
DOLPHINS_COVERAGE = {
    "degree": (0.926982, 0.848260, 0.078722),
    "betweenness": (0.937250, 0.918426, 0.018824),
    "closeness": (0.881346, 0.869937, 0.011409),
    "neighbors": (0.879064, 0.858528, 0.020536),
}
DOLPHINS_CLASS_SIZES = [5, 7, 9, 6, 7, 6, 3, 3, 3, 3, 4, 2, 2, 1, 1]

needs_dolphins = pytest.mark.skipif(
    not is_cached("dolphins"), reason="run `eqrank fetch dolphins` first"
)
needs_as = pytest.mark.skipif(
    not is_cached("as-22july06"), reason="run `eqrank fetch as-22july06` first"
)


def _benchmark(g: Graph) -> EquivalenceClasses:
    return equivalence_classes(ordinalize(score_table(g)))


def _assert_indicator_coverage(
    g: Graph, p: EquivalenceClasses, expected: dict[str, tuple[float, float, float]]
) -> None:
    table = score_table(g)
    for name, (best, worst, cert) in expected.items():
        report = coverage_report(to_ranked_sequence(table.column(name), g.node_labels), p)
        got = (report.best_coverage, report.worst_coverage, report.certratio)
        assert got == pytest.approx((best, worst, cert), abs=1e-4), name


# %%
# =====================================================================
# === Karate club
# =====================================================================


def test_zachary_classes(zachary: Graph) -> None:
    started = time.perf_counter()
    p = _benchmark(zachary)
    assert time.perf_counter() - started < 1.0
    assert [sorted(p.labels_of(k), key=int) for k in range(1, len(p) + 1)] == ZACHARY_CLASSES


def test_zachary_fast_method_agrees(zachary: Graph) -> None:
    vs = ordinalize(score_table(zachary))
    fast = equivalence_classes(vs, method="fast")
    assert [sorted(fast.labels_of(k), key=int) for k in range(1, len(fast) + 1)] == (
        ZACHARY_CLASSES
    )


def test_zachary_indicator_coverage(zachary: Graph) -> None:
    p = _benchmark(zachary)
    assert max_distance(p) == 496
    _assert_indicator_coverage(zachary, p, ZACHARY_COVERAGE)


@pytest.mark.parametrize(
    ("algorithm", "published"),
    [(pagerank, 0.885081), (hits, 0.895161)],
    ids=["pagerank", "hits"],
)
def test_zachary_link_analysis_coverage(
    zachary: Graph, algorithm: Callable[[Graph], np.ndarray], published: float
) -> None:
    p = _benchmark(zachary)
    report = coverage_report(to_ranked_sequence(algorithm(zachary), zachary.node_labels), p)
    # > tied scores only ever join automorphic nodes, which share a class
    assert report.certratio == 0.0
    assert report.best_coverage == report.worst_coverage
    assert report.best_coverage == pytest.approx(published, abs=0.02)


# %%
# =====================================================================
# === Dolphins
# =====================================================================


@needs_dolphins
def test_dolphins_classes() -> None:
    g = load_dataset("dolphins")
    assert (g.node_count, g.edge_count) == (62, 159)
    p = _benchmark(g)
    assert p.sizes() == DOLPHINS_CLASS_SIZES
    assert "SN100" in p.labels_of(1)


@needs_dolphins
def test_dolphins_indicator_coverage() -> None:
    g = load_dataset("dolphins")
    _assert_indicator_coverage(g, _benchmark(g), DOLPHINS_COVERAGE)


# %%
# =====================================================================
# === Internet autonomous systems
# =====================================================================


@pytest.mark.slow
@needs_as
def test_as_kernel() -> None:
    g = load_dataset("as-22july06", gml_labels="id")
    assert (g.node_count, g.edge_count) == (22963, 48436)
    p = equivalence_classes(ordinalize(score_table(g)), method="fast")
    assert sorted(p.labels_of(1), key=int) == ["4", "15", "23", "27"]
    assert completeness_check(g, p.labels_of(1))

    report = extract_kernel(g, p, 10)
    assert (report.node_count, report.edge_count) == (71, 1102)
    assert report.avg_degree_kernel == pytest.approx(31.0423, abs=0.01)
    assert report.edges_per_node_full == pytest.approx(2.1093, abs=1e-4)
