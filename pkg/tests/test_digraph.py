from __future__ import annotations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stepcomp.core.digraph import (
    Digraph,
    Graph,
    PartitionedDigraph,
    PartitionSpec,
    bounded_distance,
    delete_vertex,
    is_orientation,
    reach_layers,
    underlying_graph,
)
from stepcomp.core.errors import ContractViolation, DigraphError
from stepcomp.services.oracle import random_digraph


def test_digraph_neighborhoods(three_cycle):
    assert three_cycle.size == 3
    assert three_cycle.out_neighbors(0) == (1,)
    assert three_cycle.in_neighbors(0) == (2,)
    assert three_cycle.outdegree(1) == 1
    assert three_cycle.indegree(1) == 1
    assert three_cycle.min_outdegree() == 1
    assert three_cycle.is_tournament()


@pytest.mark.parametrize(
    "n, arcs, fragment",
    [
        (3, {(0, 0)}, "loop"),
        (3, {(0, 1), (1, 0)}, "2-cycle"),
        (3, {(0, 3)}, "out of range"),
        (2, {(-1, 1)}, "out of range"),
    ],
)
def test_digraph_rejects_invalid_arcs(n, arcs, fragment):
    with pytest.raises(DigraphError, match=fragment):
        Digraph(n, frozenset(arcs))


def test_add_arc_refuses_reversal(three_cycle):
    with pytest.raises(DigraphError):
        three_cycle.add_arc(1, 0)
    grown = Digraph(3).add_arc(0, 2)
    assert grown.has_arc(0, 2)


def test_relabel_moves_arcs():
    digraph = Digraph(3, frozenset({(0, 1), (1, 2)}))
    relabeled = digraph.relabel([2, 0, 1])
    # new 0 is old 2, new 1 is old 0, new 2 is old 1
    assert relabeled.arcs == frozenset({(1, 2), (2, 0)})
    with pytest.raises(ContractViolation):
        digraph.relabel([0, 0, 1])


def test_delete_vertex_isolates_and_keeps_numbering(three_cycle):
    reduced = delete_vertex(three_cycle, 1)
    assert reduced.n == 3
    assert reduced.arcs == frozenset({(2, 0)})
    with pytest.raises(DigraphError):
        delete_vertex(three_cycle, 5)


def test_graph_normalises_edges_and_induces():
    graph = Graph(4, frozenset({(2, 0), (0, 1), (3, 2)}))
    assert graph.sorted_edges() == [(0, 1), (0, 2), (2, 3)]
    assert graph.degree(2) == 2
    induced = graph.induced([0, 2, 3])
    assert induced.n == 3
    assert induced.sorted_edges() == [(0, 1), (1, 2)]
    assert Graph.complete(5).size == 10
    assert Graph.cycle(6).min_degree() == 2


def test_partition_spec_sorts_and_labels():
    spec = PartitionSpec.parse("5,10")
    assert spec.sizes == (10, 5)
    assert spec.k == 2
    assert spec.n == 15
    assert spec.size(1) == 10
    assert spec.edge_count == 50
    assert spec.label() == "K_{10,5}"
    assert str(spec) == "10,5"
    assert [list(block) for block in PartitionSpec.of(2, 1).blocks()] == [[0, 1], [2]]


@pytest.mark.parametrize("text", ["4", "3,0", "2,-1", "a,b"])
def test_partition_spec_rejects_bad_input(text):
    with pytest.raises(ContractViolation):
        PartitionSpec.parse(text)


@pytest.mark.parametrize("sizes", [(3, 3), (3, 2, 1), (2, 2, 1, 1), (1, 1, 1, 1, 1)])
def test_partition_graph_matches_networkx(sizes):
    spec = PartitionSpec(sizes)
    ours = spec.graph().to_networkx()
    reference = nx.complete_multipartite_graph(*spec.sizes)
    assert nx.is_isomorphic(ours, reference)
    assert ours.number_of_edges() == spec.edge_count


def test_dominates_needs_same_k():
    assert PartitionSpec.of(4, 4).dominates(PartitionSpec.of(4, 3))
    assert not PartitionSpec.of(4, 2).dominates(PartitionSpec.of(3, 3))
    assert not PartitionSpec.of(4, 4, 1).dominates(PartitionSpec.of(4, 4))


def test_partitioned_digraph_checks_orientation():
    spec = PartitionSpec.of(2, 1)
    good = Digraph(3, frozenset({(0, 2), (2, 1)}))
    wrapped = PartitionedDigraph(good, spec)
    assert wrapped.same_block(0, 1)
    assert wrapped.block_of(2) == 1
    assert list(wrapped.block_vertices(0)) == [0, 1]
    assert is_orientation(good, spec)

    with pytest.raises(DigraphError, match="has no arc"):
        PartitionedDigraph(Digraph(3, frozenset({(0, 2)})), spec)
    with pytest.raises(DigraphError, match="joins two vertices"):
        PartitionedDigraph(Digraph(3, frozenset({(0, 1), (0, 2), (2, 1)})), spec)
    assert not is_orientation(Digraph(4), spec)


def test_reach_layers_and_bounded_distance():
    path = Digraph(4, frozenset({(0, 1), (1, 2), (2, 3)}))
    assert reach_layers(path, 0, 2) == [0b0001, 0b0010, 0b0100]
    assert bounded_distance(path, 0, 2) == {0: 0, 1: 1, 2: 2}
    assert reach_layers(path, 0, 3, avoid=2) == [0b0001, 0b0010]
    with pytest.raises(ContractViolation):
        bounded_distance(path, 0, -1)


@settings(max_examples=150, deadline=None)
@given(
    n=st.integers(min_value=1, max_value=8),
    p=st.floats(min_value=0.0, max_value=1.0),
    seed=st.integers(min_value=0, max_value=10_000),
    bound=st.integers(min_value=0, max_value=5),
)
def test_bounded_distance_matches_networkx(n, p, seed, bound):
    digraph = random_digraph(n, p, seed)
    reference = nx.DiGraph()
    reference.add_nodes_from(digraph.vertices())
    reference.add_edges_from(digraph.arcs)
    for source in digraph.vertices():
        expected = nx.single_source_shortest_path_length(reference, source, cutoff=bound)
        assert bounded_distance(digraph, source, bound) == dict(expected)


def test_underlying_graph_forgets_direction(three_cycle):
    assert underlying_graph(three_cycle).edges == frozenset({(0, 1), (1, 2), (0, 2)})


@settings(max_examples=300, deadline=None)
@given(
    n=st.integers(min_value=1, max_value=8),
    p=st.floats(min_value=0.0, max_value=1.0),
    seed=st.integers(min_value=0, max_value=10_000),
    data=st.data(),
)
def test_delete_vertex_drops_exactly_the_edges_at_v(n, p, seed, data):
    digraph = random_digraph(n, p, seed)
    v = data.draw(st.integers(min_value=0, max_value=n - 1))
    before = underlying_graph(digraph).edges
    after = underlying_graph(delete_vertex(digraph, v)).edges
    assert after == frozenset(edge for edge in before if v not in edge)
    assert delete_vertex(digraph, v).n == n


@pytest.mark.parametrize("v", range(5))
def test_d10_delete_vertex_leaves_six_arcs(d10, v):
    reduced = delete_vertex(d10.digraph, v)
    assert reduced.size == 6
    assert reduced.outdegree(v) == reduced.indegree(v) == 0


@pytest.mark.parametrize("v", range(5))
def test_d10_bounded_distance_two(d10, v):
    distances = bounded_distance(d10.digraph, v, 2)
    assert distances == {v: 0, (v + 1) % 5: 1, (v + 2) % 5: 1, (v + 3) % 5: 2, (v + 4) % 5: 2}
    assert bounded_distance(d10.digraph, v, 1) == {v: 0, (v + 1) % 5: 1, (v + 2) % 5: 1}
