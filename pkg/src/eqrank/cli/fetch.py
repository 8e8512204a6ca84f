"""eqrank fetch: download benchmark datasets into the cache."""

from __future__ import annotations

import argparse
import sys
from typing import TextIO

from .. import utils
from ..config import RunConfig, cache_dir
from ..datasets import fetch_dataset, is_cached, list_datasets
from ..errors import ConfigError

CMD_NAME = "fetch"
CMD_ALIASES: list[str] = []
DOC = "Download a benchmark dataset into the cache, or list the known ones."


def _add_my_parser(subparsers: argparse._SubParsersAction) -> None:
    p: argparse.ArgumentParser = subparsers.add_parser(
        name=CMD_NAME,
        aliases=CMD_ALIASES,
        help=DOC,
        description=DOC,
    )
    p.add_argument("dataset", nargs="?", default=None, help="Dataset name.")
    p.add_argument("--force", action="store_true", help="Download again even if cached.")
    p.add_argument("--list", dest="list_datasets", action="store_true", help="List datasets.")
    p.set_defaults(cmd=CMD_NAME, func=_run)


def _run(config: RunConfig, out: TextIO) -> None:
    if config.list_datasets:
        rows = [
            [
                ds.name,
                ds.nodes,
                ds.edges,
                "bundled" if ds.bundled else ("cached" if is_cached(ds.name) else "remote"),
                ds.description,
            ]
            for ds in list_datasets()
        ]
        out.write(utils.render_table(["name", "nodes", "edges", "status", "description"], rows))
        return
    if config.dataset is None:
        raise ConfigError("name a dataset to fetch, or pass --list")

    print(f"📂  Cache directory: {cache_dir()}", file=sys.stderr)
    path = fetch_dataset(config.dataset, force=config.force)
    print(f"✓  {config.dataset} ready", file=sys.stderr)
    out.write(f"{path}\n")
