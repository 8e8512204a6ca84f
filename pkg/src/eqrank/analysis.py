"""Kernel extraction: the induced subgraph on the top equivalence classes."""

from __future__ import annotations

import logging
from collections.abc import Iterable
from dataclasses import dataclass

from .errors import PreconditionError
from .graph_io import Graph
from .pareto import EquivalenceClasses

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class KernelReport:
    """Kernel of a graph plus the statistics reported for it.

    :param kernel: Induced subgraph on the nodes of the top classes.
    :param avg_degree_kernel: ``2E/N`` of the kernel.
    :param edges_per_node_full: ``E/N`` of the whole graph.
    :param avg_degree_full: ``2E/N`` of the whole graph.
    :param classes_included: Number of classes merged into the kernel.
    """

    kernel: Graph
    node_count: int
    edge_count: int
    avg_degree_kernel: float
    edges_per_node_full: float
    avg_degree_full: float
    classes_included: int

    def to_dict(self) -> dict[str, int | float]:
        return {
            "classes_included": self.classes_included,
            "nodes": self.node_count,
            "edges": self.edge_count,
            "avg_degree_kernel": self.avg_degree_kernel,
            "avg_degree_full": self.avg_degree_full,
            "edges_per_node_full": self.edges_per_node_full,
        }


def _kernel_indices(g: Graph, p: EquivalenceClasses, top_k: int) -> list[int]:
    if not 1 <= top_k <= len(p):
        raise PreconditionError(f"top_k must lie in [1, {len(p)}], got {top_k}")
    labels = [label for k in range(1, top_k + 1) for label in p.labels_of(k)]
    return g.indices_of(labels)


def extract_kernel(g: Graph, p: EquivalenceClasses, top_k: int) -> KernelReport:
    """Induced subgraph of *g* on the union of the first *top_k* classes.

    Classes are matched to *g* by label, so *p* may rank a component of *g*.

    :raises PreconditionError: If *top_k* is outside ``1 .. len(p)``.
    :raises UnknownNodeError: If *p* names a node missing from *g*.
    """
    kernel = g.subgraph(_kernel_indices(g, p, top_k))
    n, e = kernel.node_count, kernel.edge_count
    logger.info("kernel of top %d classes: %d nodes, %d edges", top_k, n, e)
    return KernelReport(
        kernel=kernel,
        node_count=n,
        edge_count=e,
        avg_degree_kernel=2.0 * e / n,
        edges_per_node_full=g.edge_count / g.node_count,
        avg_degree_full=2.0 * g.edge_count / g.node_count,
        classes_included=top_k,
    )


def completeness_check(g: Graph, labels: Iterable[str]) -> bool:
    """True iff every pair of the given nodes is linked in *g*.

    :raises UnknownNodeError: On a label missing from *g*.
    """
    nodes = sorted(set(g.indices_of(labels)))
    return all(
        g.has_edge(u, v) for i, u in enumerate(nodes) for v in nodes[i + 1 :]
    )


def class_link_density(g: Graph, p: EquivalenceClasses, top_k: int) -> list[float]:
    """Per kernel class: mean share of the other kernel nodes a member links to.

    For a kernel of a single node the share is 0.
    """
    members = _kernel_indices(g, p, top_k)
    in_kernel = set(members)
    others = len(in_kernel) - 1
    densities: list[float] = []
    for k in range(1, top_k + 1):
        nodes = g.indices_of(p.labels_of(k))
        if others == 0:
            densities.append(0.0)
            continue
        shares = [
            sum(1 for v in g.adjacency[u] if v in in_kernel) / others for u in nodes
        ]
        densities.append(sum(shares) / len(shares))
    return densities
