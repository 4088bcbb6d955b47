from __future__ import annotations

import pytest

from stepcomp.core.arcfile import (
    emit_digraph,
    emit_graph,
    export_dot,
    parse_any,
    parse_digraph,
    parse_graph,
    read_digraph,
    write_text,
)
from stepcomp.core.digraph import Digraph, Graph, PartitionedDigraph
from stepcomp.core.errors import ArcFormatError


def test_parse_plain_digraph_with_comments():
    text = """
    # a directed triangle
    digraph 3
    arc 0 1   # first
    arc 1 2
    arc 2 0
    """
    digraph = parse_digraph(text)
    assert isinstance(digraph, Digraph)
    assert digraph.arcs == frozenset({(0, 1), (1, 2), (2, 0)})


def test_parse_kpartite_returns_partitioned_digraph():
    digraph = parse_digraph("kpartite 2 1\narc 0 2\narc 2 1\n")
    assert isinstance(digraph, PartitionedDigraph)
    assert digraph.partition.sizes == (2, 1)


@pytest.mark.parametrize(
    "text, line_no, fragment",
    [
        ("digraph 3\narc 0 1\narc 1 1\n", 3, "loop"),
        ("digraph 3\narc 0 1\narc 1 0\n", 3, "2-cycle"),
        ("digraph 3\narc 0 1\narc 0 1\n", 3, "duplicate"),
        ("digraph 3\narc 0 5\n", 2, "out of range"),
        ("digraph 3\narc 0\n", 2, "expected 'arc <u> <v>'"),
        ("digraph 3\narc 0 x\n", 2, "integer"),
        ("tournament 3\n", 1, "unknown header"),
        ("kpartite 1 2\n", 1, "non-increasing"),
        ("kpartite 3\n", 1, "at least two"),
    ],
)
def test_parse_errors_carry_line_numbers(text, line_no, fragment):
    with pytest.raises(ArcFormatError, match=fragment) as info:
        parse_digraph(text)
    assert info.value.line_no == line_no
    assert str(info.value).startswith(f"line {line_no}: ")


def test_incomplete_kpartite_orientation_is_rejected():
    with pytest.raises(ArcFormatError, match="not an orientation of K_\\{2,1\\}") as info:
        parse_digraph("kpartite 2 1\narc 0 2\n")
    assert info.value.line_no is None


def test_empty_input_is_rejected():
    with pytest.raises(ArcFormatError, match="empty"):
        parse_digraph("# nothing here\n\n")


def test_emit_is_canonical_and_reparses(d10):
    text = emit_digraph(d10)
    lines = text.splitlines()
    assert lines[0] == "kpartite 1 1 1 1 1"
    assert lines[1:] == [f"arc {u} {v}" for u, v in sorted(d10.digraph.arcs)]
    assert parse_digraph(text) == d10


def test_graph_format():
    graph = parse_graph("graph 4\nedge 1 0\nedge 2 3 # comment\n")
    assert graph == Graph(4, frozenset({(0, 1), (2, 3)}))
    assert emit_graph(graph) == "graph 4\nedge 0 1\nedge 2 3\n"
    with pytest.raises(ArcFormatError, match="duplicate"):
        parse_graph("graph 3\nedge 0 1\nedge 1 0\n")


def test_parse_any_dispatches_on_header():
    assert isinstance(parse_any("graph 2\nedge 0 1\n"), Graph)
    assert isinstance(parse_any("digraph 2\narc 0 1\n"), Digraph)
    assert isinstance(parse_any("kpartite 1 1\narc 1 0\n"), PartitionedDigraph)


def test_export_dot_clusters_partite_sets():
    digraph = parse_digraph("kpartite 2 1\narc 0 2\narc 2 1\n")
    dot = export_dot(digraph)
    assert dot.startswith("digraph D {")
    assert 'subgraph cluster_1 { label="V1"; rank=same; 0; 1; }' in dot
    assert 'subgraph cluster_2 { label="V2"; rank=same; 2; }' in dot
    assert "  0 -> 2;" in dot
    assert "  2 -> 1;" in dot

    undirected = export_dot(Graph(3, frozenset({(0, 1)})), name="C")
    assert undirected.startswith("graph C {")
    assert "  0 -- 1;" in undirected


def test_write_and_read_round_trip(tmp_path, d10):
    target = tmp_path / "nested" / "d10.arcs"
    write_text(target, emit_digraph(d10))
    assert read_digraph(target) == d10
