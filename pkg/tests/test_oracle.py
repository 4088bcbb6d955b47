from __future__ import annotations

import csv
import io

import pytest
from conftest import audit_enabled, exhaustive_enabled

from stepcomp.core.digraph import Graph, PartitionSpec, underlying_graph
from stepcomp.core.errors import ContractViolation, EdgeCapExceeded
from stepcomp.services import synthesis
from stepcomp.services.competition import StepPair, is_competitive
from stepcomp.services.necessary import check_necessary
from stepcomp.services.oracle import (
    CSV_COLUMNS,
    AuditRow,
    OrientationCursor,
    audit_csv,
    brute_force_orientable,
    enumerate_orientations,
    mask_of,
    partitions_up_to,
    random_digraph,
    random_tournament,
    run_audit,
    write_audit_csv,
)
from stepcomp.services.synthesis import Outcome, decide

AGREEMENT_STEPS = [StepPair(1, 2), StepPair(1, 3), StepPair(2, 2), StepPair(3, 3)]


def _k(*sizes: int) -> Graph:
    return PartitionSpec(sizes).graph()


@pytest.mark.parametrize(
    "graph, expected",
    [
        (Graph(2, frozenset({(0, 1)})), 2),
        (Graph.complete(3), 8),
        (_k(3, 3), 512),
    ],
)
def test_enumeration_counts(graph, expected):
    orientations = list(enumerate_orientations(graph))
    assert len(orientations) == expected
    assert len(set(orientations)) == expected
    assert all(underlying_graph(digraph) == graph for digraph in orientations)


def test_triangle_has_two_directed_cycles():
    cycles = [
        digraph
        for digraph in enumerate_orientations(Graph.complete(3))
        if digraph.min_outdegree() == 1 and all(digraph.indegree(v) == 1 for v in digraph.vertices())
    ]
    assert len(cycles) == 2


def test_enumeration_sub_ranges_partition_the_masks():
    graph = Graph.complete(4)
    whole = list(enumerate_orientations(graph))
    pieces = list(enumerate_orientations(graph, stop=20)) + list(
        enumerate_orientations(graph, start=20)
    )
    assert pieces == whole


def test_cursor_decoding_and_inverse(d10):
    graph = underlying_graph(d10.digraph)
    mask = mask_of(graph, d10.digraph)
    cursor = OrientationCursor.for_graph(graph, mask)
    assert cursor.digraph() == d10.digraph
    assert cursor.out_masks() == d10.digraph.out_masks
    assert cursor.total == 1 << 10
    with pytest.raises(ContractViolation):
        cursor.at(1 << 10)


def test_edge_cap_is_enforced():
    with pytest.raises(EdgeCapExceeded, match="--edge-cap"):
        list(enumerate_orientations(_k(3, 3), edge_cap=8))
    with pytest.raises(EdgeCapExceeded, match="STEPCOMP_EDGE_CAP"):
        brute_force_orientable(_k(4, 4), StepPair(1, 2), edge_cap=15)


def test_k33_is_not_orientable_over_all_orientations():
    result = brute_force_orientable(_k(3, 3), StepPair(1, 2), audit=True)
    assert not result.orientable
    assert result.witness_mask is None
    assert result.orientations_checked == 512


def test_k33_is_quick_rejected():
    result = brute_force_orientable(_k(3, 3), StepPair(1, 2))
    assert not result.orientable
    assert result.quick_rejected
    assert 2 in result.rejected_by
    assert result.orientations_checked == 0


def test_k222_has_a_witness(seeds_dir):
    graph = _k(2, 2, 2)
    result = brute_force_orientable(graph, StepPair(1, 2))
    assert result.orientable
    witness = OrientationCursor.for_graph(graph, result.witness_mask).digraph()
    assert is_competitive(witness, StepPair(1, 2))
    assert result.orientations_checked == result.witness_mask + 1
    d5 = synthesis.seed(synthesis.D5, seeds_dir)
    assert result.witness_mask <= mask_of(graph, d5.digraph)


def test_k53_is_not_two_two_orientable():
    result = brute_force_orientable(_k(5, 3), StepPair(2, 2), audit=True)
    assert not result.orientable
    assert result.orientations_checked == 1 << 15


def test_k44_one_two_versus_two_two():
    counted = brute_force_orientable(_k(4, 4), StepPair(1, 2), count=True)
    assert not counted.orientable
    assert counted.competitive_count == 0
    assert counted.orientations_checked == 1 << 16
    assert brute_force_orientable(_k(4, 4), StepPair(2, 2)).orientable
    assert brute_force_orientable(_k(4, 4), StepPair(1, 3)).orientable


def test_counting_mode_counts_every_competitive_orientation():
    graph = Graph.complete(5)
    result = brute_force_orientable(graph, StepPair(1, 2), count=True)
    expected = sum(
        1 for digraph in enumerate_orientations(graph) if is_competitive(digraph, StepPair(1, 2))
    )
    assert result.competitive_count == expected
    assert expected > 0


@pytest.mark.parametrize("count", [False, True])
def test_parallel_runs_match_sequential(count):
    graph = Graph.complete(5)
    steps = StepPair(1, 2)
    sequential = brute_force_orientable(graph, steps, count=count, jobs=1)
    parallel = brute_force_orientable(graph, steps, count=count, jobs=2, chunk_size=64)
    assert parallel.witness_mask == sequential.witness_mask
    assert parallel.competitive_count == sequential.competitive_count
    assert parallel.orientations_checked == sequential.orientations_checked


def _assert_agreement(spec: PartitionSpec, steps: StepPair) -> None:
    verdict = decide(spec, steps)
    if verdict.outcome is Outcome.UNSUPPORTED:
        return
    result = brute_force_orientable(spec.graph(), steps)
    assert result.orientable == verdict.orientable, (spec, steps)


@pytest.mark.parametrize("steps", AGREEMENT_STEPS)
def test_oracle_agrees_with_decide_small(steps):
    for spec in partitions_up_to(12):
        _assert_agreement(spec, steps)


@pytest.mark.parametrize(
    "sizes, steps, orientable",
    [
        ((4, 3), (1, 2), False),
        ((2, 2, 1), (1, 2), False),
        ((3, 2, 1), (2, 2), False),
        ((2, 1, 1, 1), (1, 2), False),
        ((3, 1, 1, 1), (1, 2), True),
        ((1, 1, 1, 1, 1), (1, 2), True),
    ],
)
def test_named_small_cases(sizes, steps, orientable):
    spec = PartitionSpec(sizes)
    assert brute_force_orientable(spec.graph(), StepPair(*steps), audit=True).orientable is orientable
    assert decide(spec, StepPair(*steps)).orientable is orientable


@pytest.mark.skipif(not exhaustive_enabled(), reason="set STEPCOMP_EXHAUSTIVE=1")
@pytest.mark.parametrize("steps", AGREEMENT_STEPS)
def test_oracle_agrees_with_decide_up_to_sixteen_edges(steps):
    for spec in partitions_up_to(16):
        _assert_agreement(spec, steps)


@pytest.mark.skipif(not audit_enabled(), reason="set STEPCOMP_AUDIT=1")
def test_k63_is_not_one_three_orientable():
    result = brute_force_orientable(_k(6, 3), StepPair(1, 3), audit=True)
    assert not result.orientable
    assert result.orientations_checked == 1 << 18


def test_quick_reject_is_sound():
    graphs = [spec.graph() for spec in partitions_up_to(12)]
    graphs += [Graph.cycle(5), Graph.cycle(6), Graph.complete(4)]
    for seed in range(10):
        digraph = random_digraph(6, 0.6, seed)
        graph = underlying_graph(digraph)
        if graph.size <= 12:
            graphs.append(graph)
    for graph in graphs:
        for steps in (StepPair(1, 2), StepPair(2, 2)):
            if check_necessary(graph, steps).passed:
                continue
            assert not brute_force_orientable(graph, steps, audit=True).orientable


def test_random_digraph_behaviour():
    assert random_digraph(6, 0.0, 1).size == 0
    tournament = random_digraph(5, 1.0, 1)
    assert tournament.is_tournament()
    assert random_digraph(7, 0.4, 99) == random_digraph(7, 0.4, 99)
    assert random_tournament(6, 3).is_tournament()
    with pytest.raises(ContractViolation):
        random_digraph(4, 1.5)


def test_partitions_up_to_respects_edge_bound():
    specs = list(partitions_up_to(9))
    assert PartitionSpec.of(3, 3) in specs
    assert PartitionSpec.of(1, 1) in specs
    assert all(spec.edge_count <= 9 for spec in specs)
    assert len(specs) == len(set(specs))
    assert all(spec.k <= 3 for spec in partitions_up_to(9, max_parts=3))


def test_audit_rows_serialise_in_column_order():
    result = brute_force_orientable(_k(3, 3), StepPair(1, 2), audit=True)
    row = AuditRow.from_result(PartitionSpec.of(3, 3), StepPair(1, 2), result)
    header, fields = list(csv.reader(io.StringIO(audit_csv([row]))))
    assert tuple(header) == CSV_COLUMNS
    assert fields[:5] == ["3,3", "1,2", "false", "", "512"]

    buffer = io.StringIO()
    write_audit_csv([row], buffer, header=False, extra_columns=("decided",))
    assert buffer.getvalue().count("\n") == 1


def test_run_audit_yields_one_result_per_pair():
    specs = [PartitionSpec.of(2, 1), PartitionSpec.of(1, 1, 1)]
    results = list(run_audit(specs, [StepPair(1, 2), StepPair(2, 2)]))
    assert [(spec, str(steps)) for spec, steps, _ in results] == [
        (specs[0], "1,2"),
        (specs[0], "2,2"),
        (specs[1], "1,2"),
        (specs[1], "2,2"),
    ]
    assert not any(result.orientable for _, _, result in results)
