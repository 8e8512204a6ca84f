"""eqrank score: rank nodes by a single algorithm."""

from __future__ import annotations

import argparse
from typing import TextIO

from .. import utils
from ..centrality import restrict_to_component
from ..config import ALGORITHMS, RunConfig
from ..link_analysis import to_ranked_sequence
from . import _common

CMD_NAME = "score"
CMD_ALIASES = ["s"]
DOC = f"Score and rank nodes with PageRank, HITS or one indicator. Aliases: {CMD_ALIASES}"


def _add_my_parser(subparsers: argparse._SubParsersAction) -> None:
    p: argparse.ArgumentParser = subparsers.add_parser(
        name=CMD_NAME,
        aliases=CMD_ALIASES,
        help=DOC,
        description=DOC,
    )
    _common.add_graph_args(p)
    p.add_argument("--algo", choices=ALGORITHMS, required=True, help="Ranking algorithm.")
    _common.add_nk_arg(p)
    _common.add_score_args(p)
    _common.add_component_args(p)
    _common.add_format_arg(p)
    p.set_defaults(cmd=CMD_NAME, func=_run)


def _run(config: RunConfig, out: TextIO) -> None:
    assert config.algo is not None
    g = _common.load_graph(config)
    scored = restrict_to_component(g, "largest") if config.component == "largest" else g
    scores = _common.algorithm_scores(scored, config.algo, config)
    seq = to_ranked_sequence(scores, scored.node_labels, config.tie_tol)

    rows = []
    for position, group in enumerate(seq.groups, start=1):
        for node in sorted(group, key=lambda i: utils.natural_key(scored.node_labels[i])):
            rows.append([position, scored.node_labels[node], float(scores[node])])

    payload = {
        "algo": config.algo,
        "params": _params(config),
        "tie_tol": config.tie_tol,
        "groups": len(seq.groups),
        "nodes": [{"rank": r, "node": n, "score": s} for r, n, s in rows],
    }
    _common.emit(
        config, out, graph=g, headers=["rank", "node", "score"], rows=rows, payload=payload
    )


def _params(config: RunConfig) -> dict[str, float | int]:
    if config.algo == "pagerank":
        return {"jump": config.pagerank.jump, "iterations": config.pagerank.iterations}
    if config.algo == "hits":
        return {"max_iterations": config.hits.max_iterations, "tol": config.hits.tol}
    if config.algo == "neighbors":
        return {"nk": config.nk}
    return {}
