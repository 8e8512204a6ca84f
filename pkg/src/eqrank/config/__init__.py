"""Run configuration of the CLI and environment lookups.

Environment variables:

- ``EQRANK_CACHE``: dataset cache directory, falling back to
  ``$XDG_CACHE_HOME/eqrank`` and then ``~/.cache/eqrank``.
- ``EQRANK_THREADS``: default worker thread count, falling back to the
  number of CPUs.
"""

from __future__ import annotations

import argparse
import os
from typing import TypeVar
from dataclasses import dataclass, field, fields
from pathlib import Path

from ..centrality import INDICATORS, ComponentPolicy
from ..errors import ConfigError
from ..link_analysis import (
    DEFAULT_HITS_MAX_ITERATIONS,
    DEFAULT_HITS_TOL,
    DEFAULT_JUMP,
    DEFAULT_PAGERANK_ITERATIONS,
    DEFAULT_TIE_TOL,
)
from ..pareto import DEFAULT_SCORE_TOL

DEFAULT_NK = 1.0

COMMANDS = ("indicators", "rank", "score", "compare", "kernel", "fetch")
ALGORITHMS = ("pagerank", "hits", *INDICATORS)
OUTPUT_FORMATS = ("table", "tsv", "json")
COMPONENT_POLICIES = ("require-connected", "largest")
METHODS = ("auto", "reference", "fast")
KERNEL_OUTPUTS = ("dot", "edgelist")
SCORE_FILE_PREFIX = "file:"


# %%
# =====================================================================
# === Environment
# =====================================================================


def cache_dir() -> Path:
    """Directory holding downloaded datasets; not created here."""
    env_cache = os.getenv("EQRANK_CACHE")
    if env_cache:
        return Path(env_cache).expanduser()  # !! Early exit
    xdg = os.getenv("XDG_CACHE_HOME")
    base = Path(xdg).expanduser() if xdg else Path.home() / ".cache"
    return base / "eqrank"


def default_threads() -> int:
    """Worker threads from ``EQRANK_THREADS``, else the CPU count.

    :raises ConfigError: If ``EQRANK_THREADS`` is not a positive integer.
    """
    raw = os.getenv("EQRANK_THREADS")
    if not raw:
        return os.cpu_count() or 1
    try:
        threads = int(raw)
    except ValueError:
        raise ConfigError(f"EQRANK_THREADS must be an integer, got {raw!r}") from None
    if threads < 1:
        raise ConfigError(f"EQRANK_THREADS must be >= 1, got {threads}")
    return threads


T = TypeVar("T")


def _option(args: argparse.Namespace, name: str, default: T) -> T:
    value = getattr(args, name, None)
    return default if value is None else value


def _is_score_file(item: str) -> bool:
    return item.startswith(SCORE_FILE_PREFIX) and len(item) > len(SCORE_FILE_PREFIX)


# %%
# =====================================================================
# === Run configuration
# =====================================================================


@dataclass(frozen=True)
class PageRankParams:
    jump: float = DEFAULT_JUMP
    iterations: int = DEFAULT_PAGERANK_ITERATIONS


@dataclass(frozen=True)
class HitsParams:
    max_iterations: int = DEFAULT_HITS_MAX_ITERATIONS
    tol: float = DEFAULT_HITS_TOL


@dataclass(frozen=True)
class RunConfig:
    """Everything one CLI invocation needs; defaults match the published settings.

    :param command: One of :data:`COMMANDS`.
    :param graph: Path of a network file or name of a registered dataset.
    :param against: Rankings compared by ``compare``: algorithm names or
        ``file:PATH`` score files.
    :param top_k: Number of classes merged by ``kernel``.
    """

    command: str
    graph: str | None = None
    input_format: str | None = None
    gml_labels: str = "label"
    nk: float = DEFAULT_NK
    score_tol: float = DEFAULT_SCORE_TOL
    tie_tol: float = DEFAULT_TIE_TOL
    pagerank: PageRankParams = field(default_factory=PageRankParams)
    hits: HitsParams = field(default_factory=HitsParams)
    output_format: str = "table"
    component: ComponentPolicy = "require-connected"
    threads: int = 1
    method: str = "auto"
    algo: str | None = None
    against: tuple[str, ...] = ALGORITHMS
    top_k: int | None = None
    kernel_output: str = "dot"
    out_file: Path | None = None
    dataset: str | None = None
    force: bool = False
    list_datasets: bool = False

    @classmethod
    def from_namespace(cls, args: argparse.Namespace) -> RunConfig:
        """Collect the parsed arguments; options a command lacks keep their default."""
        names = {f.name for f in fields(cls)}
        values = {k: v for k, v in vars(args).items() if k in names and v is not None}

        pagerank = PageRankParams(
            jump=_option(args, "jump", DEFAULT_JUMP),
            iterations=_option(args, "iters", DEFAULT_PAGERANK_ITERATIONS),
        )
        hits = HitsParams(
            max_iterations=_option(args, "hits_iters", DEFAULT_HITS_MAX_ITERATIONS),
            tol=_option(args, "hits_tol", DEFAULT_HITS_TOL),
        )
        if getattr(args, "fast", False):
            values["method"] = "fast"
        against = getattr(args, "against", None)
        if isinstance(against, str):
            values["against"] = tuple(item.strip() for item in against.split(",") if item.strip())
        out_file = getattr(args, "out_file", None)
        if out_file is not None:
            values["out_file"] = Path(out_file)
        if getattr(args, "threads", None) is None and "threads" not in values:
            values["threads"] = default_threads()
        values["command"] = args.cmd
        return cls(**{**values, "pagerank": pagerank, "hits": hits})

    def validate(self) -> RunConfig:
        """Check every value; returns ``self`` so calls can be chained.

        :raises ConfigError: On the first invalid value.
        """
        checks: list[tuple[bool, str]] = [
            (self.command in COMMANDS, f"unknown command {self.command!r}"),
            (self.nk > 0, f"--nk must be positive, got {self.nk}"),
            (self.score_tol >= 0, f"--tol must be >= 0, got {self.score_tol}"),
            (self.tie_tol >= 0, f"--tie-tol must be >= 0, got {self.tie_tol}"),
            (0 < self.pagerank.jump < 1, f"--jump must lie in (0, 1), got {self.pagerank.jump}"),
            (self.pagerank.iterations >= 1, "--iters must be >= 1"),
            (self.hits.max_iterations >= 1, "--hits-iters must be >= 1"),
            (self.hits.tol >= 0, "--hits-tol must be >= 0"),
            (self.threads >= 1, f"--threads must be >= 1, got {self.threads}"),
            (self.output_format in OUTPUT_FORMATS, f"unknown format {self.output_format!r}"),
            (self.component in COMPONENT_POLICIES, f"unknown component policy {self.component!r}"),
            (self.method in METHODS, f"unknown method {self.method!r}"),
            (self.gml_labels in ("label", "id"), f"unknown GML label policy {self.gml_labels!r}"),
            (self.kernel_output in KERNEL_OUTPUTS, f"unknown kernel output {self.kernel_output!r}"),
        ]
        if self.command == "score":
            checks.append((self.algo in ALGORITHMS, f"--algo must be one of {ALGORITHMS}"))
        if self.command == "compare":
            checks.append((bool(self.against), "--against names no ranking"))
            for item in self.against:
                known = item in ALGORITHMS or _is_score_file(item)
                checks.append((known, f"--against: unknown ranking {item!r}"))
        if self.command == "kernel":
            checks.append((self.top_k is not None and self.top_k >= 1, "--top must be >= 1"))
        if self.command != "fetch":
            checks.append((bool(self.graph), "no graph given"))

        for ok, message in checks:
            if not ok:
                raise ConfigError(message)
        return self
