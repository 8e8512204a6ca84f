"""Parsing, normalization, structure queries and serialization of graphs."""

from __future__ import annotations

import logging
import zipfile
from pathlib import Path

import numpy as np
import pytest

from eqrank.errors import GraphParseError, UnknownNodeError, UnwritableLabelError
from eqrank.graph_io import (
    Graph,
    graph_from_edges,
    graph_summary,
    parse_edge_list,
    parse_gml,
    read_graph,
    write_graph,
)

TWO_NODE_GML = """
graph [
  node [ id 0 label "a" ]
  node [ id 1 label "b" ]
  edge [ source 0 target 1 ]
]
"""


def _label_edges(g: Graph) -> set[frozenset[str]]:
    return {frozenset((g.node_labels[u], g.node_labels[v])) for u, v in g.edges()}


# %%
# =====================================================================
# === Edge lists
# =====================================================================


def test_edge_list_path() -> None:
    g = parse_edge_list(b"1 2\n2 3\n")
    assert g.node_labels == ("1", "2", "3")
    assert g.node_count == 3
    assert g.edge_count == 2
    assert g.adjacency == ((1,), (0, 2), (1,))


def test_edge_list_collapses_duplicates(caplog: pytest.LogCaptureFixture) -> None:
    with caplog.at_level(logging.WARNING):
        g = parse_edge_list(b"a b\na b\nb a\n")
    assert (g.node_count, g.edge_count) == (2, 1)
    assert "collapsed 2 duplicate" in caplog.text


def test_edge_list_drops_self_loops(caplog: pytest.LogCaptureFixture) -> None:
    with caplog.at_level(logging.WARNING):
        g = parse_edge_list("1 1\n1 2\n")
    assert (g.node_count, g.edge_count) == (2, 1)
    assert all(u not in nbrs for u, nbrs in enumerate(g.adjacency))
    assert "dropped 1 self-loop" in caplog.text


def test_edge_list_skips_comments_and_blanks() -> None:
    g = parse_edge_list(b"# header\n\n1 2\n  # indented comment\n2 3\n")
    assert g.edge_count == 2


def test_edge_list_custom_delimiter() -> None:
    g = parse_edge_list("a,b\nb, c\n", delimiter=",")
    assert g.node_labels == ("a", "b", "c")


def test_edge_list_malformed_line_reports_line_number() -> None:
    with pytest.raises(GraphParseError) as info:
        parse_edge_list(b"1 2\n1 2 3\n")
    assert info.value.line == 2
    assert str(info.value).startswith("line 2:")


def test_edge_list_labels_are_verbatim() -> None:
    g = parse_edge_list(b"01 1\n")
    assert g.node_labels == ("01", "1")


def test_zachary_counts(zachary: Graph) -> None:
    assert (zachary.node_count, zachary.edge_count) == (34, 78)


# %%
# =====================================================================
# === GML
# =====================================================================


def test_gml_minimal() -> None:
    g = parse_gml(TWO_NODE_GML)
    assert g.node_labels == ("a", "b")
    assert g.edge_count == 1


def test_gml_id_labels() -> None:
    g = parse_gml(TWO_NODE_GML, labels="id")
    assert g.node_labels == ("0", "1")


def test_gml_label_falls_back_to_id() -> None:
    g = parse_gml("graph [ node [ id 7 ] node [ id 8 label \"x\" ] edge [ source 7 target 8 ] ]")
    assert g.node_labels == ("7", "x")


def test_gml_skips_nested_blocks_and_unknown_keys() -> None:
    text = """
    Creator "someone"
    graph [
      directed 0
      comment "two nodes"
      node [ id 1 label "p" graphics [ x 1.0 y 2.0 ] value 3 ]
      node [ id 2 label "q" ]
      edge [ source 1 target 2 weight 4 ]
      edge [ source 2 target 1 ]
    ]
    """
    g = parse_gml(text)
    assert g.node_labels == ("p", "q")
    assert g.edge_count == 1


def test_gml_directed_is_read_undirected(caplog: pytest.LogCaptureFixture) -> None:
    text = TWO_NODE_GML.replace("graph [", "graph [ directed 1")
    with caplog.at_level(logging.WARNING):
        g = parse_gml(text)
    assert g.has_edge(0, 1) and g.has_edge(1, 0)
    assert "directed" in caplog.text


@pytest.mark.parametrize(
    "text",
    [
        'graph [ node [ label "a" ] ]',  # < missing id
        "graph [ node [ id 0 ] edge [ source 0 target 5 ] ]",  # < unknown endpoint
        "graph [ node [ id 0 ] ",  # < missing ']'
        "graph [ node [ id 0 ] ] ]",  # < stray ']'
        'graph [ node [ id 0 label "a ] ]',  # < unterminated string
        "graph [ node [ id 0 ] node [ id 0 ] ]",  # < duplicate id
        "graph [ node [ id 0 ] edge [ source 0 ] ]",  # < missing target
        "nodes only",
    ],
)
def test_gml_errors(text: str) -> None:
    with pytest.raises(GraphParseError):
        parse_gml(text)


def test_gml_error_carries_line() -> None:
    text = "graph [\n  node [ id 0 ]\n  edge [ source 0 target 9 ]\n]\n"
    with pytest.raises(GraphParseError) as info:
        parse_gml(text)
    assert info.value.line == 3


# %%
# =====================================================================
# === Files
# =====================================================================


def test_read_graph_by_suffix(tmp_path: Path) -> None:
    (tmp_path / "net.gml").write_text(TWO_NODE_GML, encoding="utf-8")
    (tmp_path / "net.txt").write_text("x y\n", encoding="utf-8")
    assert read_graph(tmp_path / "net.gml").node_labels == ("a", "b")
    assert read_graph(tmp_path / "net.txt").node_labels == ("x", "y")
    assert read_graph(tmp_path / "net.txt", "edge-list").edge_count == 1


def test_read_graph_zip_prefers_gml(tmp_path: Path) -> None:
    archive = tmp_path / "net.zip"
    with zipfile.ZipFile(archive, "w") as zf:
        zf.writestr("net.txt", "readme, not an edge list\n")
        zf.writestr("net.gml", TWO_NODE_GML)
    g = read_graph(archive)
    assert g.node_labels == ("a", "b")
    assert read_graph(archive, gml_labels="id").node_labels == ("0", "1")


def test_read_graph_zip_explicit_member(tmp_path: Path) -> None:
    archive = tmp_path / "net.zip"
    with zipfile.ZipFile(archive, "w") as zf:
        zf.writestr("a.gml", TWO_NODE_GML)
        zf.writestr("b.gml", TWO_NODE_GML)
    with pytest.raises(GraphParseError):
        read_graph(archive)
    assert read_graph(archive, member="b.gml").edge_count == 1


def test_write_path_edge_list(path3: Graph) -> None:
    assert write_graph(path3) == b"1 2\n2 3\n"


def test_write_empty_graph() -> None:
    assert write_graph(Graph((), (), 0)) == b""


def test_write_dot(path3: Graph) -> None:
    text = write_graph(path3, "dot", name="P3").decode()
    assert text.startswith("strict graph P3 {")
    assert "1 -- 2" in text
    assert "2 -- 3" in text


def test_edge_list_round_trip_on_random_graphs() -> None:
    rng = np.random.default_rng(7)
    for _ in range(25):
        n = int(rng.integers(2, 40))
        pairs = rng.integers(0, n, size=(int(rng.integers(1, 3 * n)), 2))
        g = graph_from_edges((f"v{u}", f"v{w}") for u, w in pairs.tolist() if u != w)
        back = parse_edge_list(write_graph(g))
        assert set(back.node_labels) == set(g.node_labels)
        assert _label_edges(back) == _label_edges(g)


def test_edge_list_round_trip_quotes_free_text_labels() -> None:
    gml = """
graph [
  node [ id 1 label "Mr Hi" ]
  node [ id 2 label "#a" ]
  node [ id 3 label "O'Brien" ]
  node [ id 4 label "a\\b" ]
  edge [ source 1 target 2 ]
  edge [ source 1 target 3 ]
  edge [ source 3 target 4 ]
]
"""
    g = parse_gml(gml)
    data = write_graph(g)
    assert data.splitlines()[0] == b"'Mr Hi' '#a'"
    back = parse_edge_list(data)
    assert back.node_labels == ("Mr Hi", "#a", "O'Brien", "a\\b")
    assert _label_edges(back) == _label_edges(g)


def test_edge_list_refuses_multiline_labels() -> None:
    with pytest.raises(UnwritableLabelError, match="edge list"):
        write_graph(graph_from_edges([("a\nb", "c")]))
    with pytest.raises(UnwritableLabelError):
        write_graph(graph_from_edges([("", "c")]))


def test_edge_list_unclosed_quote() -> None:
    with pytest.raises(GraphParseError, match="line 2"):
        parse_edge_list(b"1 2\n'a b 3\n")


def test_write_dot_keeps_colons_in_names() -> None:
    text = write_graph(graph_from_edges([("a:b", "c")]), "dot").decode()
    assert '\t"a:b" -- c\n' in text
    assert '\t"a:b"\n' in text


def test_parsing_is_deterministic() -> None:
    data = b"3 1\n2 3\n1 4\n"
    assert parse_edge_list(data) == parse_edge_list(data)


# %%
# =====================================================================
# === Structure
# =====================================================================


def test_index_lookup(path3: Graph) -> None:
    assert path3.index_of("2") == 1
    assert path3.indices_of(["3", "1"]) == [2, 0]
    with pytest.raises(UnknownNodeError):
        path3.index_of("9")


def test_subgraph_keeps_order_and_edges(zachary: Graph) -> None:
    keep = zachary.indices_of(["34", "1", "33", "3"])
    sub = zachary.subgraph(keep)
    assert sub.node_labels == ("1", "3", "33", "34")
    assert _label_edges(sub) == {
        frozenset(p) for p in [("1", "3"), ("3", "33"), ("33", "34")]
    }


def test_components_and_largest() -> None:
    g = graph_from_edges([(1, 2), (3, 4), (4, 5)], nodes=[6])
    assert g.index_of("6") == 0
    assert g.components() == [[0], [1, 2], [3, 4, 5]]
    assert not g.is_connected()
    assert g.largest_component().node_labels == ("3", "4", "5")


def test_largest_component_tie_takes_first() -> None:
    g = graph_from_edges([(1, 2), (3, 4)])
    assert g.largest_component().node_labels == ("1", "2")


def test_csr_is_symmetric(zachary: Graph) -> None:
    adj = zachary.to_csr()
    assert (adj != adj.T).nnz == 0
    assert adj.sum() == 2 * zachary.edge_count


def test_graph_summary(zachary: Graph) -> None:
    s = graph_summary(zachary)
    assert (s.node_count, s.edge_count, s.component_count) == (34, 78, 1)
    assert s.avg_degree == pytest.approx(2 * 78 / 34)
    assert s.edges_per_node == pytest.approx(78 / 34)
    assert graph_summary(Graph((), (), 0)).avg_degree == 0.0
