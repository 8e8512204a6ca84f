"""eqrank compare: coverage of rankings against the equivalence classes."""

from __future__ import annotations

import argparse
import logging
from pathlib import Path
from typing import TextIO

from ..config import ALGORITHMS, SCORE_FILE_PREFIX, RunConfig
from ..coverage import CoverageReport, coverage_report, max_distance
from ..link_analysis import read_score_file, to_ranked_sequence
from . import _common

logger = logging.getLogger(__name__)

CMD_NAME = "compare"
CMD_ALIASES = ["cmp"]
DOC = (
    "Score rankings by their best/worst coverage of the equivalence classes. "
    f"Aliases: {CMD_ALIASES}"
)


def _add_my_parser(subparsers: argparse._SubParsersAction) -> None:
    p: argparse.ArgumentParser = subparsers.add_parser(
        name=CMD_NAME,
        aliases=CMD_ALIASES,
        help=DOC,
        description=DOC,
    )
    _common.add_graph_args(p)
    p.add_argument(
        "--against",
        default=None,
        help=(
            "Comma-separated rankings to score: "
            f"{','.join(ALGORITHMS)} or {SCORE_FILE_PREFIX}PATH "
            "(label<TAB>score lines). Default: all algorithms."
        ),
    )
    _common.add_rank_args(p)
    _common.add_score_args(p)
    _common.add_format_arg(p)
    p.set_defaults(cmd=CMD_NAME, func=_run)


def _run(config: RunConfig, out: TextIO) -> None:
    g = _common.load_graph(config)
    bench = _common.build_benchmark(g, config)
    ranked = bench.graph

    results: list[tuple[str, int, CoverageReport]] = []
    for name in config.against:
        if name.startswith(SCORE_FILE_PREFIX):
            path = Path(name[len(SCORE_FILE_PREFIX) :])
            # > nodes outside the ranked component may be scored; they are left out
            scores = read_score_file(path, ranked.node_labels, ignore=g.node_labels)
        else:
            scores = _common.algorithm_scores(ranked, name, config, bench.table)
        seq = to_ranked_sequence(scores, ranked.node_labels, config.tie_tol)
        report = coverage_report(seq, bench.classes)
        logger.info("%s: %d groups, certratio %.6f", name, len(seq.groups), report.certratio)
        results.append((name, len(seq.groups), report))

    rows = [
        [name, r.best_coverage, r.worst_coverage, r.certratio, groups]
        for name, groups, r in results
    ]
    payload = {
        "benchmark": {
            "class_count": len(bench.classes),
            "ranked_nodes": len(bench.classes.labels),
            "max_distance": max_distance(bench.classes),
            "method": bench.method,
        },
        "rankings": [
            {"ranking": name, "groups": groups, **r.to_dict()} for name, groups, r in results
        ],
    }
    _common.emit(
        config,
        out,
        graph=g,
        headers=["ranking", "best", "worst", "certratio", "groups"],
        rows=rows,
        payload=payload,
    )
