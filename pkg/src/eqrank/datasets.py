"""Benchmark networks: the bundled karate club plus downloadable archives.

Downloads land in :func:`eqrank.config.cache_dir`. When a dataset has no
pinned checksum, the first download writes ``<archive>.sha256`` next to it
and every later load is verified against that file.
"""

from __future__ import annotations

import hashlib
import logging
import shutil
import urllib.error
import urllib.request
import zipfile
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .config import cache_dir
from .errors import DatasetError, InputError
from .graph_io import GmlLabels, Graph, ReadFormat, parse_edge_list, read_graph

logger = logging.getLogger(__name__)

NETDATA_URL = "https://websites.umich.edu/~mejn/netdata"
_DOWNLOAD_TIMEOUT = 60.0


@dataclass(frozen=True)
class Dataset:
    """A registered benchmark network.

    :param name: Registry key, usable wherever a graph path is accepted.
    :param nodes: Expected node count.
    :param edges: Expected edge count after normalization.
    :param url: Archive to download; ``None`` for bundled data.
    :param member: Network file inside the archive.
    :param resource: File name under ``eqrank/data`` for bundled data.
    :param sha256: Pinned archive checksum, if known.
    """

    name: str
    description: str
    nodes: int
    edges: int
    fmt: ReadFormat = "edgelist"
    url: str | None = None
    member: str | None = None
    resource: str | None = None
    sha256: str | None = None

    @property
    def bundled(self) -> bool:
        return self.resource is not None


REGISTRY: dict[str, Dataset] = {
    d.name: d
    for d in (
        Dataset(
            name="zachary",
            description="Zachary karate club, 1-based member numbers",
            nodes=34,
            edges=78,
            resource="zachary.txt",
        ),
        Dataset(
            name="dolphins",
            description="Lusseau's bottlenose dolphin associations, nodes named",
            nodes=62,
            edges=159,
            fmt="gml",
            url=f"{NETDATA_URL}/dolphins.zip",
            member="dolphins.gml",
        ),
        Dataset(
            name="as-22july06",
            description="Internet autonomous systems snapshot of 2006-07-22",
            nodes=22963,
            edges=48436,
            fmt="gml",
            url=f"{NETDATA_URL}/as-22july06.zip",
            member="as-22july06.gml",
        ),
    )
}


def list_datasets() -> list[Dataset]:
    return list(REGISTRY.values())


def get_dataset(name: str) -> Dataset:
    try:
        return REGISTRY[name]
    except KeyError:
        known = ", ".join(REGISTRY)
        raise DatasetError(f"unknown dataset {name!r}; known: {known}") from None


# %%
# =====================================================================
# === Cache
# =====================================================================


def dataset_path(name: str) -> Path:
    """Where the dataset's file lives (bundled) or would be cached (downloaded)."""
    ds = get_dataset(name)
    if ds.resource is not None:
        return Path(str(resources.files("eqrank") / "data" / ds.resource))
    assert ds.url is not None
    return cache_dir() / ds.url.rsplit("/", 1)[-1]


def is_cached(name: str) -> bool:
    return dataset_path(name).is_file()


def _sha256(path: Path) -> str:
    digest = hashlib.sha256()
    with path.open("rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()


def _pin_path(archive: Path) -> Path:
    return archive.with_name(archive.name + ".sha256")


def verify_checksum(name: str) -> str:
    """Check a cached archive against its pin; record the pin if there is none.

    :return: The archive's sha256.
    :raises DatasetError: On a checksum mismatch.
    """
    ds = get_dataset(name)
    archive = dataset_path(name)
    actual = _sha256(archive)
    pin_file = _pin_path(archive)
    expected = ds.sha256
    if expected is None and pin_file.is_file():
        expected = pin_file.read_text(encoding="utf-8").split()[0]
    if expected is None:
        pin_file.write_text(f"{actual}  {archive.name}\n", encoding="utf-8")
        logger.warning("%s: no checksum known, pinned sha256 %s", name, actual)
        return actual
    if actual != expected:
        raise DatasetError(
            f"{archive}: sha256 {actual} does not match pinned {expected}; "
            "delete it and fetch again"
        )
    return actual


def fetch_dataset(name: str, force: bool = False) -> Path:
    """Download the dataset's archive into the cache unless it is there already.

    :param name: Registered dataset.
    :param force: Download again even if cached; the existing pin still applies.
    :return: Path of the cached archive (or of the bundled file).
    :raises DatasetError: On download failure or checksum mismatch.
    """
    ds = get_dataset(name)
    target = dataset_path(name)
    if ds.bundled:
        logger.info("%s is bundled, nothing to fetch", name)
        return target
    if target.is_file() and not force:
        verify_checksum(name)
        return target

    assert ds.url is not None
    target.parent.mkdir(parents=True, exist_ok=True)
    partial = target.with_name(target.name + ".part")
    logger.info("downloading %s", ds.url)
    try:
        with urllib.request.urlopen(ds.url, timeout=_DOWNLOAD_TIMEOUT) as response:
            with partial.open("wb") as fh:
                shutil.copyfileobj(response, fh)
    except (urllib.error.URLError, TimeoutError, OSError) as exc:
        partial.unlink(missing_ok=True)
        raise DatasetError(f"downloading {ds.url} failed: {exc}") from exc
    partial.replace(target)
    verify_checksum(name)
    return target


# %%
# =====================================================================
# === Load
# =====================================================================


def load_dataset(name: str, *, gml_labels: GmlLabels = "label") -> Graph:
    """Parse a registered dataset, fetching it first when it is not cached.

    A node or edge count other than the registered one is logged as a
    warning, not raised.
    """
    ds = get_dataset(name)
    if ds.resource is not None:
        data = (resources.files("eqrank") / "data" / ds.resource).read_bytes()
        g = parse_edge_list(data)
    else:
        path = fetch_dataset(name)
        g = read_graph(path, ds.fmt, gml_labels=gml_labels, member=ds.member)

    if (g.node_count, g.edge_count) != (ds.nodes, ds.edges):
        logger.warning(
            "%s: expected %d nodes / %d edges, got %d / %d",
            name,
            ds.nodes,
            ds.edges,
            g.node_count,
            g.edge_count,
        )
    return g


def resolve_graph(
    arg: str,
    fmt: ReadFormat | None = None,
    *,
    gml_labels: GmlLabels = "label",
) -> Graph:
    """Load *arg* as a file path, or as a dataset name when no such file exists.

    :raises InputError: If *arg* is neither, or the graph has no nodes.
    """
    path = Path(arg)
    if path.is_file():
        try:
            g = read_graph(path, fmt, gml_labels=gml_labels)
        except (OSError, zipfile.BadZipFile) as exc:
            raise InputError(f"cannot read {path}: {exc}") from exc
    elif arg in REGISTRY:
        g = load_dataset(arg, gml_labels=gml_labels)
    else:
        raise InputError(f"{arg!r} is neither a file nor a dataset ({', '.join(REGISTRY)})")
    if g.node_count == 0:
        raise InputError(f"{arg}: graph has no nodes")
    return g
