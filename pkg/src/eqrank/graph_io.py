"""Parse network files into the canonical undirected graph and write them back.

Supported inputs are whitespace-delimited edge lists and the GML subset
``graph [ node [ id N label "..." ] edge [ source N target N ] ]``. Every
input is normalized into a simple undirected :class:`Graph`: duplicate edges
are collapsed, self-loops dropped, and both are reported as warnings.
"""

from __future__ import annotations

import html
import itertools
import logging
import re
import shlex
import zipfile
from bisect import bisect_left
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Literal

import graphviz
from graphviz.quoting import quote
import numpy as np
from scipy import sparse
from scipy.sparse import csgraph

from .errors import GraphParseError, UnknownNodeError, UnwritableLabelError

logger = logging.getLogger(__name__)

ReadFormat = Literal["edgelist", "gml"]
WriteFormat = Literal["edgelist", "dot"]
GmlLabels = Literal["label", "id"]

_FORMAT_ALIASES = {"edge-list": "edgelist", "edge_list": "edgelist"}


# %%
# =====================================================================
# === Graph model
# =====================================================================


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph with stable external labels.

    Internal node indices are contiguous (``0 .. N-1``) and follow the order
    in which nodes were first seen by the parser.

    :param node_labels: External label of every node, indexed by node.
    :param adjacency: Sorted neighbor indices of every node.
    :param edge_count: Number of undirected edges.
    """

    node_labels: tuple[str, ...]
    adjacency: tuple[tuple[int, ...], ...]
    edge_count: int

    def __post_init__(self) -> None:
        if len(self.node_labels) != len(self.adjacency):
            raise ValueError("node_labels and adjacency differ in length")

    @property
    def node_count(self) -> int:
        return len(self.node_labels)

    @cached_property
    def _index(self) -> dict[str, int]:
        return {label: i for i, label in enumerate(self.node_labels)}

    def index_of(self, label: str) -> int:
        """Return the internal index of *label*.

        :raises UnknownNodeError: If the label is not part of the graph.
        """
        try:
            return self._index[str(label)]
        except KeyError:
            raise UnknownNodeError(f"unknown node label: {label!r}") from None

    def indices_of(self, labels: Iterable[str]) -> list[int]:
        return [self.index_of(label) for label in labels]

    def has_edge(self, u: int, v: int) -> bool:
        nbrs = self.adjacency[u]
        pos = bisect_left(nbrs, v)
        return pos < len(nbrs) and nbrs[pos] == v

    def edges(self) -> Iterator[tuple[int, int]]:
        """Yield every edge once as ``(u, v)`` with ``u < v``, in index order."""
        for u, nbrs in enumerate(self.adjacency):
            for v in nbrs:
                if u < v:
                    yield u, v

    def degrees(self) -> np.ndarray:
        return np.fromiter(
            (len(nbrs) for nbrs in self.adjacency), dtype=np.int64, count=self.node_count
        )

    @cached_property
    def _csr(self) -> sparse.csr_array:
        n = self.node_count
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(self.degrees(), out=indptr[1:])
        indices = np.fromiter(
            itertools.chain.from_iterable(self.adjacency),
            dtype=np.int64,
            count=int(indptr[-1]),
        )
        data = np.ones(indices.shape[0], dtype=np.float64)
        return sparse.csr_array((data, indices, indptr), shape=(n, n))

    def to_csr(self) -> sparse.csr_array:
        """Return the symmetric 0/1 adjacency matrix (cached, do not mutate)."""
        return self._csr

    # === Structure ===================================================

    def subgraph(self, indices: Iterable[int]) -> Graph:
        """Return the subgraph induced by *indices*, keeping their relative order."""
        keep = sorted(set(indices))
        remap = {old: new for new, old in enumerate(keep)}
        adjacency = tuple(
            tuple(remap[v] for v in self.adjacency[u] if v in remap) for u in keep
        )
        return Graph(
            node_labels=tuple(self.node_labels[u] for u in keep),
            adjacency=adjacency,
            edge_count=sum(len(nbrs) for nbrs in adjacency) // 2,
        )

    def components(self) -> list[list[int]]:
        """Connected components as sorted index lists, ordered by smallest member."""
        if self.node_count == 0:
            return []
        _, comp_of = csgraph.connected_components(self.to_csr(), directed=False)
        groups: dict[int, list[int]] = {}
        for node, comp in enumerate(comp_of.tolist()):
            groups.setdefault(comp, []).append(node)
        return sorted(groups.values(), key=lambda members: members[0])

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def largest_component(self) -> Graph:
        """Induced subgraph on the largest component (earliest one on ties)."""
        comps = self.components()
        if len(comps) <= 1:
            return self
        largest = max(comps, key=len)  # < max keeps the first of equal sizes
        return self.subgraph(largest)


class GraphBuilder:
    """Accumulate labelled edges and normalize them into a :class:`Graph`."""

    def __init__(self) -> None:
        self._labels: list[str] = []
        self._index: dict[str, int] = {}
        self._nbrs: list[set[int]] = []
        self.self_loops = 0
        self.duplicates = 0

    def add_node(self, label: str) -> int:
        """Return the index of *label*, registering it on first appearance."""
        idx = self._index.get(label)
        if idx is None:
            idx = len(self._labels)
            self._index[label] = idx
            self._labels.append(label)
            self._nbrs.append(set())
        return idx

    def add_edge(self, a: str, b: str) -> None:
        self.add_edge_indices(self.add_node(a), self.add_node(b))

    def add_edge_indices(self, u: int, v: int) -> None:
        if u == v:
            self.self_loops += 1
            return
        if v in self._nbrs[u]:
            self.duplicates += 1
            return
        self._nbrs[u].add(v)
        self._nbrs[v].add(u)

    def build(self, source: str = "input") -> Graph:
        if self.self_loops:
            logger.warning("%s: dropped %d self-loop(s)", source, self.self_loops)
        if self.duplicates:
            logger.warning("%s: collapsed %d duplicate edge(s)", source, self.duplicates)
        adjacency = tuple(tuple(sorted(nbrs)) for nbrs in self._nbrs)
        return Graph(
            node_labels=tuple(self._labels),
            adjacency=adjacency,
            edge_count=sum(len(nbrs) for nbrs in adjacency) // 2,
        )


def graph_from_edges(
    edges: Iterable[tuple[object, object]], nodes: Iterable[object] = ()
) -> Graph:
    """Build a graph from label pairs; labels are converted with ``str``.

    *nodes* are registered first, which fixes their index order and allows
    isolated nodes.
    """
    builder = GraphBuilder()
    for label in nodes:
        builder.add_node(str(label))
    for a, b in edges:
        builder.add_edge(str(a), str(b))
    return builder.build(source="edges")


# %%
# =====================================================================
# === Edge lists
# =====================================================================


def _decode(data: bytes | str) -> str:
    if isinstance(data, bytes):
        try:
            return data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise GraphParseError(f"input is not UTF-8: {exc}") from exc
    return data


_QUOTES = frozenset("'\"")


def _split_quoted(line: str, lineno: int) -> list[str]:
    try:
        return shlex.split(line)
    except ValueError as exc:
        raise GraphParseError(f"{exc}: {line!r}", line=lineno) from exc


def _edge_list_label(label: str) -> str:
    if label.splitlines() != [label]:
        raise UnwritableLabelError(f"cannot write node label {label!r} to an edge list")
    return shlex.quote(label)


def parse_edge_list(
    data: bytes | str,
    *,
    comment_prefix: str = "#",
    delimiter: str | None = None,
) -> Graph:
    """Parse an edge list with one ``<label> <label>`` pair per line.

    Labels holding whitespace or quotes are written shell-quoted, e.g.
    ``'Mr Hi' 34``; a line containing a quote character is split that way.

    :param data: File content.
    :param comment_prefix: Lines starting with this prefix are skipped.
    :param delimiter: Token separator; ``None`` splits on any whitespace.
    :return: The normalized graph, nodes indexed by first appearance.
    :raises GraphParseError: If a line holds anything but two labels.
    """
    builder = GraphBuilder()
    for lineno, raw in enumerate(_decode(data).splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith(comment_prefix):
            continue
        if delimiter is None:
            tokens = _split_quoted(line, lineno) if _QUOTES & set(line) else line.split()
        else:
            tokens = [token.strip() for token in line.split(delimiter)]
        if len(tokens) != 2 or not all(tokens):
            raise GraphParseError(
                f"expected two node labels, got {len(tokens)} token(s): {line!r}",
                line=lineno,
            )
        builder.add_edge(tokens[0], tokens[1])
    return builder.build(source="edge list")


# %%
# =====================================================================
# === GML
# =====================================================================

# > Comments, brackets, quoted strings, bare words; a lone quote is unterminated
_GML_TOKEN = re.compile(r'(?m)^\s*#[^\n]*$|\[|\]|"[^"]*"|[^\s\[\]"]+|"')

_GmlEntry = tuple[str, "str | list[_GmlEntry]", int]


def _line_at(text: str, pos: int) -> int:
    return text.count("\n", 0, pos) + 1


def _gml_tree(text: str) -> list[_GmlEntry]:
    """Tokenize GML into nested ``(key, value, line)`` lists."""
    root: list[_GmlEntry] = []
    stack: list[list[_GmlEntry]] = [root]
    opened_at: list[int] = []
    key: str | None = None
    key_line = 0

    for match in _GML_TOKEN.finditer(text):
        token = match.group().strip()
        if token.startswith("#"):
            continue
        line = _line_at(text, match.start())
        if token == '"':
            raise GraphParseError("unterminated string", line=line)

        if key is None:
            if token == "]":
                if len(stack) == 1:
                    raise GraphParseError("unbalanced brackets: unexpected ']'", line=line)
                stack.pop()
                opened_at.pop()
            elif token == "[" or token.startswith('"'):
                raise GraphParseError(f"expected a key, got {token!r}", line=line)
            else:
                key, key_line = token, line
            continue

        if token == "[":
            child: list[_GmlEntry] = []
            stack[-1].append((key, child, key_line))
            stack.append(child)
            opened_at.append(line)
        elif token == "]":
            raise GraphParseError(f"key {key!r} has no value", line=key_line)
        elif token.startswith('"'):
            stack[-1].append((key, html.unescape(token[1:-1]), key_line))
        else:
            stack[-1].append((key, token, key_line))
        key = None

    if key is not None:
        raise GraphParseError(f"key {key!r} has no value", line=key_line)
    if len(stack) != 1:
        raise GraphParseError("unbalanced brackets: missing ']'", line=opened_at[-1])
    return root


def _gml_scalar(entries: list[_GmlEntry], name: str) -> str | None:
    for key, value, _ in entries:
        if key == name and isinstance(value, str):
            return value
    return None


def _gml_id(raw: str) -> str:
    try:
        return str(int(raw))
    except ValueError:
        return raw


def parse_gml(data: bytes | str, *, labels: GmlLabels = "label") -> Graph:
    """Parse the node/edge subset of GML.

    Keys other than ``id``, ``label``, ``source``, ``target`` and
    ``directed`` are skipped, including nested blocks such as ``graphics``.
    Directed files are read as undirected.

    :param data: File content.
    :param labels: ``"label"`` names nodes by their GML label, falling back
        to the id; ``"id"`` always uses the id.
    :return: The normalized graph, nodes in declaration order.
    :raises GraphParseError: On a missing id, an edge endpoint that was never
        declared, duplicate ids or labels, or unbalanced brackets.
    """
    text = _decode(data)
    tree = _gml_tree(text)
    blocks = [value for key, value, _ in tree if key == "graph" and isinstance(value, list)]
    if not blocks:
        raise GraphParseError("no 'graph [ ... ]' block found")
    entries = blocks[0]

    directed = _gml_scalar(entries, "directed")
    if directed not in (None, "0"):
        logger.warning("GML graph is marked directed; reading it as undirected")

    builder = GraphBuilder()
    index_of_id: dict[str, int] = {}
    for key, value, line in entries:
        if key != "node" or not isinstance(value, list):
            continue
        raw_id = _gml_scalar(value, "id")
        if raw_id is None:
            raise GraphParseError("node without 'id'", line=line)
        node_id = _gml_id(raw_id)
        if node_id in index_of_id:
            raise GraphParseError(f"duplicate node id {node_id}", line=line)
        label = _gml_scalar(value, "label") if labels == "label" else None
        label = node_id if label is None else label
        before = builder.add_node(label)
        if before != len(index_of_id):
            raise GraphParseError(f"duplicate node label {label!r}", line=line)
        index_of_id[node_id] = before

    for key, value, line in entries:
        if key != "edge" or not isinstance(value, list):
            continue
        ends = [_gml_scalar(value, "source"), _gml_scalar(value, "target")]
        if ends[0] is None or ends[1] is None:
            raise GraphParseError("edge without 'source' or 'target'", line=line)
        try:
            u, v = (index_of_id[_gml_id(end)] for end in ends)
        except KeyError as exc:
            raise GraphParseError(
                f"edge references unknown node id {exc.args[0]}", line=line
            ) from None
        builder.add_edge_indices(u, v)

    return builder.build(source="GML")


# %%
# =====================================================================
# === Files
# =====================================================================


def _normalize_format(fmt: str) -> str:
    return _FORMAT_ALIASES.get(fmt, fmt)


def _read_archive(path: Path, member: str | None = None) -> tuple[str, bytes]:
    """Return name and bytes of the network member of a zip archive.

    Without an explicit *member*, a lone ``.gml`` file wins over the other
    network files of the archive.
    """
    with zipfile.ZipFile(path) as archive:
        names = archive.namelist()
        if member is not None:
            if member not in names:
                raise GraphParseError(f"{path.name}: archive has no member {member!r}")
            return member, archive.read(member)
        gml = [name for name in names if name.lower().endswith(".gml")]
        members = gml or [
            name for name in names if name.endswith((".txt", ".edges", ".edgelist"))
        ]
        if len(members) != 1:
            raise GraphParseError(
                f"{path.name}: expected one network file in archive, found {members}"
            )
        return members[0], archive.read(members[0])


def read_graph(
    path: str | Path,
    fmt: ReadFormat | None = None,
    *,
    gml_labels: GmlLabels = "label",
    member: str | None = None,
) -> Graph:
    """Read a network file, choosing the parser from *fmt* or the file suffix.

    ``.gml`` files (also inside ``.zip`` archives) are read as GML,
    everything else as an edge list.

    :param member: Archive member to read from a ``.zip`` file.
    """
    path = Path(path)
    if path.suffix.lower() == ".zip":
        name, data = _read_archive(path, member)
    else:
        name, data = path.name, path.read_bytes()

    chosen = _normalize_format(fmt) if fmt else (
        "gml" if name.lower().endswith(".gml") else "edgelist"
    )
    logger.info("reading %s as %s", name, chosen)
    if chosen == "gml":
        return parse_gml(data, labels=gml_labels)
    if chosen == "edgelist":
        return parse_edge_list(data)
    raise GraphParseError(f"unknown input format {fmt!r}")


def write_graph(g: Graph, fmt: WriteFormat | str = "edgelist", *, name: str = "G") -> bytes:
    """Serialize *g* as an edge list or as an undirected DOT graph.

    The edge list writes each edge once, ``u < v`` in index order, quoting
    labels that need it, so parsing it back yields the same labels and
    edges. Isolated nodes cannot be expressed in an edge list and are
    dropped there; DOT keeps them.

    :param g: Graph to serialize.
    :param fmt: ``"edgelist"`` or ``"dot"``.
    :param name: DOT graph name.
    :return: UTF-8 encoded file content.
    :raises UnwritableLabelError: If an edge-list label is empty or spans lines.
    """
    fmt = _normalize_format(fmt)
    labels = g.node_labels
    if fmt == "edgelist":
        quoted = [_edge_list_label(label) for label in labels]
        return "".join(f"{quoted[u]} {quoted[v]}\n" for u, v in g.edges()).encode()
    if fmt == "dot":
        dot = graphviz.Graph(name=name, strict=True)
        for label in labels:
            dot.node(label)
        # > dot.edge() reads "a:b" as node a, port b; quote endpoints whole
        dot.body.extend(f"\t{quote(labels[u])} -- {quote(labels[v])}\n" for u, v in g.edges())
        return dot.source.encode()
    raise ValueError(f"unknown output format {fmt!r}")


# %%
# =====================================================================
# === Summary
# =====================================================================


@dataclass(frozen=True)
class GraphSummary:
    """Size statistics of a graph.

    ``avg_degree`` is ``2E/N``; ``edges_per_node`` is ``E/N``. Both are 0
    for an empty graph.
    """

    node_count: int
    edge_count: int
    avg_degree: float
    edges_per_node: float
    component_count: int

    def to_dict(self) -> dict[str, int | float]:
        return {
            "nodes": self.node_count,
            "edges": self.edge_count,
            "avg_degree": self.avg_degree,
            "edges_per_node": self.edges_per_node,
            "components": self.component_count,
        }


def graph_summary(g: Graph) -> GraphSummary:
    n, e = g.node_count, g.edge_count
    return GraphSummary(
        node_count=n,
        edge_count=e,
        avg_degree=2.0 * e / n if n else 0.0,
        edges_per_node=e / n if n else 0.0,
        component_count=len(g.components()),
    )
