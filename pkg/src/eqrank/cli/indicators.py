"""eqrank indicators: per-node degree, betweenness, closeness and neighbors."""

from __future__ import annotations

import argparse
from typing import TextIO

from ..centrality import score_table
from ..config import RunConfig
from . import _common

CMD_NAME = "indicators"
CMD_ALIASES = ["ind"]
DOC = f"Print the four indicator scores of every node. Aliases: {CMD_ALIASES}"


def _add_my_parser(subparsers: argparse._SubParsersAction) -> None:
    p: argparse.ArgumentParser = subparsers.add_parser(
        name=CMD_NAME,
        aliases=CMD_ALIASES,
        help=DOC,
        description=DOC,
    )
    _common.add_graph_args(p)
    _common.add_nk_arg(p)
    _common.add_component_args(p)
    _common.add_format_arg(p)
    # > Entrypoint, looked up by CMD_NAME in app.run()
    p.set_defaults(cmd=CMD_NAME, func=_run)


def _run(config: RunConfig, out: TextIO) -> None:
    g = _common.load_graph(config)
    table = score_table(g, config.nk, component=config.component, threads=config.threads)

    rows = [
        [label, int(scores[0]), *scores[1:]]
        for label, scores in table.rows()
    ]
    payload = {
        "nk": config.nk,
        "component": config.component,
        "ranked_nodes": table.node_count,
        "indicators": list(table.names),
        "nodes": [dict(zip(["node", *table.names], row)) for row in rows],
    }
    _common.emit(
        config, out, graph=g, headers=["node", *table.names], rows=rows, payload=payload
    )
