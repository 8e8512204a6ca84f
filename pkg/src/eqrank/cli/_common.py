"""Options and pipeline steps shared by the CLI commands."""

from __future__ import annotations

import argparse
import logging
import time
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any, TextIO

import numpy as np

from .. import utils
from ..centrality import (
    ScoreTable,
    betweenness,
    closeness,
    degree,
    neighbors_score,
    restrict_to_component,
    score_table,
)
from ..config import ALGORITHMS, COMPONENT_POLICIES, METHODS, OUTPUT_FORMATS, RunConfig
from ..datasets import resolve_graph
from ..graph_io import Graph, graph_summary
from ..link_analysis import hits, pagerank
from ..pareto import (
    AUTO_FAST_NODES,
    EquivalenceClasses,
    equivalence_classes,
    ordinalize,
    resolve_method,
)

logger = logging.getLogger(__name__)


# ================================================================== #
# === Options                                                        #
# ================================================================== #


def add_graph_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("graph", help="Network file (edge list, GML, zip) or dataset name.")
    p.add_argument(
        "--input-format",
        choices=["edgelist", "gml"],
        default=None,
        help="Parser to use; default: from the file suffix.",
    )
    p.add_argument(
        "--gml-labels",
        choices=["label", "id"],
        default="label",
        help="Name GML nodes by their label (falling back to id) or by id.",
    )


def add_format_arg(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--format",
        dest="output_format",
        choices=OUTPUT_FORMATS,
        default="table",
        help="Output format (default: table).",
    )


def add_nk_arg(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--nk", type=float, default=None, help="Exponent of the neighbors indicator (default: 1)."
    )


def add_rank_args(p: argparse.ArgumentParser) -> None:
    add_nk_arg(p)
    p.add_argument(
        "--tol",
        dest="score_tol",
        type=float,
        default=None,
        help="Relative score tolerance for ordinal ties (default: 1e-9).",
    )
    p.add_argument(
        "--method",
        choices=METHODS,
        default=None,
        help=f"Class extraction pass (default: auto, sort-based above {AUTO_FAST_NODES} nodes).",
    )
    p.add_argument("--fast", action="store_true", help="Shorthand for --method fast.")
    add_component_args(p)


def add_component_args(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--component",
        choices=COMPONENT_POLICIES,
        default="require-connected",
        help="Fail on disconnected graphs, or rank the largest component only.",
    )
    p.add_argument(
        "--threads",
        type=int,
        default=None,
        help="Worker threads for the all-pairs sweep (default: $EQRANK_THREADS or all cores).",
    )


def add_score_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--jump", type=float, help="PageRank jump probability (default: 0.15).")
    p.add_argument("--iters", type=int, help="PageRank sweeps (default: 200).")
    p.add_argument("--hits-iters", type=int, help="HITS iteration cap (default: 500).")
    p.add_argument("--hits-tol", type=float, help="HITS L1 stop tolerance (default: 1e-8).")
    p.add_argument("--tie-tol", type=float, help="Score tie tolerance (default: 1e-12).")


# ================================================================== #
# === Pipeline                                                       #
# ================================================================== #


@dataclass(frozen=True)
class Benchmark:
    """Ranked graph, its indicator table and its equivalence classes."""

    graph: Graph
    table: ScoreTable
    classes: EquivalenceClasses
    method: str


def load_graph(config: RunConfig) -> Graph:
    assert config.graph is not None
    started = time.perf_counter()
    g = resolve_graph(
        config.graph,
        config.input_format,  # type: ignore[arg-type]
        gml_labels=config.gml_labels,  # type: ignore[arg-type]
    )
    logger.info(
        "loaded %s: %d nodes, %d edges in %.2fs",
        config.graph,
        g.node_count,
        g.edge_count,
        time.perf_counter() - started,
    )
    return g


def build_benchmark(g: Graph, config: RunConfig) -> Benchmark:
    """Indicators, ordinals and equivalence classes under *config*'s settings."""
    ranked = restrict_to_component(g, config.component)
    table = score_table(ranked, config.nk, threads=config.threads)
    method = resolve_method(config.method, ranked.node_count)  # type: ignore[arg-type]
    started = time.perf_counter()
    classes = equivalence_classes(ordinalize(table, config.score_tol), method=method)
    logger.info("class extraction took %.2fs", time.perf_counter() - started)
    return Benchmark(graph=ranked, table=table, classes=classes, method=method)


def algorithm_scores(
    g: Graph, algo: str, config: RunConfig, table: ScoreTable | None = None
) -> np.ndarray:
    """Scores of *algo* on *g*; indicator columns are taken from *table* when given."""
    if algo not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algo!r}")
    if table is not None and algo in table.names:
        return table.column(algo)
    if algo == "pagerank":
        return pagerank(g, config.pagerank.jump, config.pagerank.iterations)
    if algo == "hits":
        return hits(g, config.hits.max_iterations, config.hits.tol)
    if algo == "degree":
        return degree(g)
    if algo == "betweenness":
        return betweenness(g, threads=config.threads)
    if algo == "closeness":
        return closeness(g, threads=config.threads)
    return neighbors_score(g, config.nk)


# ================================================================== #
# === Output                                                         #
# ================================================================== #


def emit(
    config: RunConfig,
    out: TextIO,
    *,
    graph: Graph,
    headers: Sequence[str],
    rows: Sequence[Sequence[Any]],
    payload: dict[str, Any],
) -> None:
    """Write the command result in the configured format."""
    if config.output_format == "json":
        summary = {"source": config.graph, **graph_summary(graph).to_dict()}
        out.write(utils.render_json(config.command, summary, payload))
    elif config.output_format == "tsv":
        out.write(utils.render_tsv(headers, rows))
    else:
        out.write(utils.render_table(headers, rows))
