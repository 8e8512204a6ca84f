"""Shared fixtures: small hand-checkable graphs and random graph factories."""

from __future__ import annotations

from collections.abc import Callable

import numpy as np
import pytest

from eqrank.datasets import load_dataset
from eqrank.graph_io import Graph, graph_from_edges


@pytest.fixture(scope="session")
def zachary() -> Graph:
    return load_dataset("zachary")


@pytest.fixture()
def path3() -> Graph:
    return graph_from_edges([(1, 2), (2, 3)])


@pytest.fixture()
def star5() -> Graph:
    """Center ``c`` with leaves ``l1`` .. ``l5``."""
    return graph_from_edges([("c", f"l{i}") for i in range(1, 6)])


def random_connected_graph(rng: np.random.Generator, n: int, extra: int) -> Graph:
    """Random spanning tree on ``0 .. n-1`` plus up to *extra* random edges."""
    edges = [(i, int(rng.integers(0, i))) for i in range(1, n)]
    for _ in range(extra):
        u, v = rng.integers(0, n, size=2)
        edges.append((int(u), int(v)))  # < self-loops and repeats are normalized away
    return graph_from_edges(edges, nodes=range(n))


@pytest.fixture()
def make_graph() -> Callable[[np.random.Generator, int, int], Graph]:
    return random_connected_graph
