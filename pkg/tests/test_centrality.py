"""Indicator scores against hand-checked values and independent oracles."""

from __future__ import annotations

import itertools
import logging
from collections import deque

import networkx as nx
import numpy as np
import pytest

from eqrank.centrality import (
    INDICATORS,
    betweenness,
    closeness,
    degree,
    neighbors_score,
    path_statistics,
    score_table,
)
from eqrank.errors import DisconnectedGraphError, PreconditionError
from eqrank.graph_io import Graph, graph_from_edges

from conftest import random_connected_graph


def _bfs_distances(g: Graph, source: int) -> list[int]:
    dist = [-1] * g.node_count
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in g.adjacency[u]:
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def _geodesics(g: Graph, s: int, t: int, dist_to_t: list[int]) -> list[list[int]]:
    """Every shortest path from s to t, enumerated explicitly."""
    if s == t:
        return [[t]]
    return [
        [s, *rest]
        for v in g.adjacency[s]
        if dist_to_t[v] == dist_to_t[s] - 1
        for rest in _geodesics(g, v, t, dist_to_t)
    ]


def _brute_force_betweenness(g: Graph) -> np.ndarray:
    out = np.zeros(g.node_count)
    dist = [_bfs_distances(g, t) for t in range(g.node_count)]
    for s, t in itertools.combinations(range(g.node_count), 2):
        paths = _geodesics(g, s, t, dist[t])
        for path in paths:
            for inner in path[1:-1]:
                out[inner] += 1.0 / len(paths)
    return out


def _to_nx(g: Graph) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(range(g.node_count))
    G.add_edges_from(g.edges())
    return G


# %%
# =====================================================================
# === Hand-checked graphs
# =====================================================================


def test_path3_table(path3: Graph) -> None:
    t = score_table(path3)
    assert t.names == INDICATORS
    assert t.labels == ("1", "2", "3")
    np.testing.assert_allclose(t.column("degree"), [1, 2, 1])
    np.testing.assert_allclose(t.column("betweenness"), [0, 1, 0])
    np.testing.assert_allclose(t.column("closeness"), [1 / 3, 1 / 2, 1 / 3])
    np.testing.assert_allclose(t.column("neighbors"), [2, 2, 2])


def test_star(star5: Graph) -> None:
    center = star5.index_of("c")
    leaf = star5.index_of("l1")
    assert degree(star5)[center] == 5
    assert closeness(star5)[center] == pytest.approx(1 / 5)
    nb = neighbors_score(star5)
    assert nb[center] == 5
    assert nb[leaf] == 5


def test_star_neighbors_with_exponent(star5: Graph) -> None:
    nb = neighbors_score(star5, nk=2.0)
    assert nb[star5.index_of("c")] == pytest.approx(np.sqrt(5))
    assert nb[star5.index_of("l3")] == pytest.approx(5)


@pytest.mark.parametrize("nk", [0.0, -1.0])
def test_neighbors_rejects_nonpositive_exponent(path3: Graph, nk: float) -> None:
    with pytest.raises(PreconditionError):
        neighbors_score(path3, nk)


def test_complete_graph_has_no_betweenness() -> None:
    g = graph_from_edges(itertools.combinations(range(6), 2))
    np.testing.assert_allclose(betweenness(g), np.zeros(6))


def test_cycle5_betweenness_is_one() -> None:
    g = graph_from_edges([(i, (i + 1) % 5) for i in range(5)])
    np.testing.assert_allclose(betweenness(g), np.ones(5))


def test_isolated_node_scores() -> None:
    g = graph_from_edges([(1, 2)], nodes=[3])
    lone = g.index_of("3")
    assert lone == 0
    assert degree(g)[lone] == 0
    assert neighbors_score(g)[lone] == 0
    assert neighbors_score(g, nk=3.0)[lone] == 0
    assert degree(g)[g.index_of("1")] == 1


def test_single_node_closeness_is_zero() -> None:
    g = graph_from_edges([], nodes=["a"])
    t = score_table(g)
    np.testing.assert_array_equal(t.scores, [[0.0, 0.0, 0.0, 0.0]])


def test_zachary_hub_degree(zachary: Graph) -> None:
    assert degree(zachary)[zachary.index_of("34")] == 17


# %%
# =====================================================================
# === Oracles
# =====================================================================


def test_betweenness_matches_geodesic_enumeration() -> None:
    rng = np.random.default_rng(11)
    for _ in range(30):
        g = random_connected_graph(rng, int(rng.integers(2, 11)), int(rng.integers(0, 12)))
        np.testing.assert_allclose(betweenness(g), _brute_force_betweenness(g), atol=1e-9)


def test_betweenness_and_closeness_match_networkx(zachary: Graph) -> None:
    G = _to_nx(zachary)
    nx_bc = nx.betweenness_centrality(G, normalized=False)
    nx_cc = nx.closeness_centrality(G)
    n = zachary.node_count
    np.testing.assert_allclose(betweenness(zachary), [nx_bc[i] for i in range(n)], atol=1e-9)
    np.testing.assert_allclose(
        closeness(zachary) * (n - 1), [nx_cc[i] for i in range(n)], atol=1e-12
    )


def test_zachary_closeness_against_floyd_warshall(zachary: Graph) -> None:
    dist = nx.floyd_warshall_numpy(_to_nx(zachary))
    np.testing.assert_allclose(closeness(zachary), 1.0 / dist.sum(axis=1))


def test_closeness_bounds_on_random_graphs() -> None:
    rng = np.random.default_rng(3)
    for _ in range(10):
        n = int(rng.integers(3, 40))
        c = closeness(random_connected_graph(rng, n, n))
        assert np.all(c > 0)
        assert np.all(c <= 1.0 / (n - 1) + 1e-15)


def test_neighbors_is_integer_row_sum(zachary: Graph) -> None:
    deg = zachary.degrees()
    expected = [sum(int(deg[v]) for v in nbrs) for nbrs in zachary.adjacency]
    np.testing.assert_array_equal(neighbors_score(zachary), expected)


def test_scores_follow_labels_not_input_order(zachary: Graph) -> None:
    edges = [(zachary.node_labels[u], zachary.node_labels[v]) for u, v in zachary.edges()]
    shuffled = graph_from_edges(reversed(edges))
    a, b = score_table(zachary), score_table(shuffled)
    order = shuffled.indices_of(zachary.node_labels)
    np.testing.assert_allclose(b.scores[order], a.scores, rtol=1e-12, atol=1e-12)


# %%
# =====================================================================
# === Sweep
# =====================================================================


def test_sweep_is_identical_for_any_thread_count() -> None:
    g = random_connected_graph(np.random.default_rng(5), 150, 300)
    one = path_statistics(g, threads=1, batch_size=16)
    many = path_statistics(g, threads=4, batch_size=16)
    np.testing.assert_array_equal(one.betweenness, many.betweenness)
    np.testing.assert_array_equal(one.distance_sums, many.distance_sums)
    np.testing.assert_array_equal(one.reached, many.reached)


def test_sweep_batch_size_does_not_change_results() -> None:
    g = random_connected_graph(np.random.default_rng(6), 90, 120)
    a = path_statistics(g, batch_size=7)
    b = path_statistics(g, batch_size=64)
    np.testing.assert_allclose(a.betweenness, b.betweenness, rtol=1e-12, atol=1e-12)
    np.testing.assert_array_equal(a.distance_sums, b.distance_sums)


def test_sweep_reach_on_disconnected_graph() -> None:
    g = graph_from_edges([(1, 2), (2, 3), (4, 5)])
    stats = path_statistics(g)
    np.testing.assert_array_equal(stats.reached, [3, 3, 3, 2, 2])
    np.testing.assert_array_equal(stats.distance_sums, [3, 2, 3, 1, 1])


# %%
# =====================================================================
# === Components
# =====================================================================


def test_closeness_rejects_disconnected_graph() -> None:
    g = graph_from_edges([(1, 2), (3, 4), (4, 5)])
    with pytest.raises(DisconnectedGraphError, match="closeness undefined"):
        closeness(g)
    with pytest.raises(DisconnectedGraphError):
        score_table(g)


def test_closeness_restricted_to_largest_component() -> None:
    g = graph_from_edges([(1, 2), (3, 4), (4, 5)])
    c = closeness(g, restrict_to_largest_component=True)
    assert np.isnan(c[:2]).all()
    np.testing.assert_allclose(c[2:], [1 / 3, 1 / 2, 1 / 3])


def test_table_on_largest_component(caplog: pytest.LogCaptureFixture) -> None:
    g = graph_from_edges([(1, 2), (3, 4), (4, 5)])
    with caplog.at_level(logging.WARNING):
        t = score_table(g, component="largest")
    assert t.labels == ("3", "4", "5")
    assert "2 of 5 nodes excluded" in caplog.text
