"""eqrank kernel: induced subgraph on the top equivalence classes."""

from __future__ import annotations

import argparse
import sys
from typing import TextIO

from .. import utils
from ..analysis import class_link_density, completeness_check, extract_kernel
from ..config import KERNEL_OUTPUTS, RunConfig
from ..graph_io import write_graph
from . import _common

CMD_NAME = "kernel"
CMD_ALIASES = ["k"]
DOC = f"Extract the kernel spanned by the top K equivalence classes. Aliases: {CMD_ALIASES}"


def _add_my_parser(subparsers: argparse._SubParsersAction) -> None:
    p: argparse.ArgumentParser = subparsers.add_parser(
        name=CMD_NAME,
        aliases=CMD_ALIASES,
        help=DOC,
        description=DOC,
    )
    _common.add_graph_args(p)
    p.add_argument("--top", dest="top_k", type=int, required=True, help="Number of classes K.")
    p.add_argument(
        "--out",
        dest="kernel_output",
        choices=KERNEL_OUTPUTS,
        default="dot",
        help="Format of the kernel file (default: dot).",
    )
    p.add_argument("--out-file", default=None, help="Write the kernel graph to this file.")
    _common.add_rank_args(p)
    _common.add_format_arg(p)
    p.set_defaults(cmd=CMD_NAME, func=_run)


def _run(config: RunConfig, out: TextIO) -> None:
    assert config.top_k is not None
    g = _common.load_graph(config)
    bench = _common.build_benchmark(g, config)
    ec = bench.classes
    report = extract_kernel(g, ec, config.top_k)
    densities = class_link_density(g, ec, config.top_k)
    top_complete = completeness_check(g, ec.labels_of(1))

    if config.out_file is not None:
        config.out_file.write_bytes(write_graph(report.kernel, config.kernel_output, name="kernel"))
        print(f"📂  Kernel written to {config.out_file}", file=sys.stderr)

    stats = report.to_dict()
    classes = [
        {
            "class": k,
            "size": len(ec.classes[k - 1]),
            "link_density": density,
            "nodes": utils.sorted_labels(ec.labels_of(k)),
        }
        for k, density in enumerate(densities, start=1)
    ]
    payload = {
        "top_k": config.top_k,
        "kernel": stats,
        "top_class_complete": top_complete,
        "classes": classes,
    }

    if config.output_format == "json":
        _common.emit(config, out, graph=g, headers=[], rows=[], payload=payload)
        return
    summary_rows = [[key, value] for key, value in stats.items()]
    summary_rows.append(["top_class_complete", top_complete])
    _common.emit(
        config, out, graph=g, headers=["statistic", "value"], rows=summary_rows, payload=payload
    )
    out.write("\n")
    class_rows = [[c["class"], c["size"], c["link_density"], c["nodes"]] for c in classes]
    _common.emit(
        config,
        out,
        graph=g,
        headers=["class", "size", "link_density", "nodes"],
        rows=class_rows,
        payload=payload,
    )
