"""eqrank rank: equivalence classes of the nodes."""

from __future__ import annotations

import argparse
from typing import TextIO

from .. import utils
from ..config import RunConfig
from . import _common

CMD_NAME = "rank"
CMD_ALIASES = ["r"]
DOC = (
    "Sort nodes into equivalence classes by non-dominated sorting of their "
    f"indicator ordinals. Aliases: {CMD_ALIASES}"
)


def _add_my_parser(subparsers: argparse._SubParsersAction) -> None:
    p: argparse.ArgumentParser = subparsers.add_parser(
        name=CMD_NAME,
        aliases=CMD_ALIASES,
        help=DOC,
        description=DOC,
    )
    _common.add_graph_args(p)
    _common.add_rank_args(p)
    _common.add_format_arg(p)
    p.set_defaults(cmd=CMD_NAME, func=_run)


def _run(config: RunConfig, out: TextIO) -> None:
    g = _common.load_graph(config)
    bench = _common.build_benchmark(g, config)
    ec = bench.classes

    rows = []
    for k in range(1, len(ec) + 1):
        members = utils.sorted_labels(ec.labels_of(k))
        rows.append([k, len(members), members])

    payload = {
        "nk": config.nk,
        "score_tol": config.score_tol,
        "method": bench.method,
        "component": config.component,
        "ranked_nodes": len(ec.labels),
        "class_count": len(ec),
        "classes": [{"class": k, "size": size, "nodes": nodes} for k, size, nodes in rows],
    }
    _common.emit(
        config, out, graph=g, headers=["class", "size", "nodes"], rows=rows, payload=payload
    )
