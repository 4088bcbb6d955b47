"""Structural conditions every (i,j)-step competitively orientable graph satisfies.

A failed condition certifies that no orientation is competitive; passing all
of them certifies nothing.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import List, Optional, Tuple

import networkx as nx

from stepcomp.core.digraph import Graph
from stepcomp.core.errors import ContractViolation
from stepcomp.services.competition import StepPair

CONDITION_NAMES = {
    1: "minimum degree at least 2",
    2: "|V| >= 5 and |E| >= 2|V|",
    3: "degree-two reduction stays admissible",
    4: "every pair joined by a walk of length <= i+j avoiding their edge",
    5: "diameter at most i+j",
    6: "2-edge-connected",
}


@dataclass(frozen=True, slots=True)
class ConditionResult:
    number: int
    passed: bool
    counterexample: Optional[str] = None

    @property
    def name(self) -> str:
        return CONDITION_NAMES[self.number]

    def describe(self) -> str:
        status = "pass" if self.passed else "FAIL"
        line = f"({self.number}) {self.name}: {status}"
        if self.counterexample:
            line += f" [{self.counterexample}]"
        return line


@dataclass(frozen=True, slots=True)
class ReductionTrace:
    """Result of deleting degree-2 vertices until none remain."""

    graph: Graph
    deleted: Tuple[int, ...]
    kept: Tuple[int, ...]


@dataclass(frozen=True, slots=True)
class NecessaryReport:
    steps: StepPair
    conditions: Tuple[ConditionResult, ...]
    reduction: Optional[ReductionTrace] = field(default=None, compare=False)

    @property
    def passed(self) -> bool:
        return all(result.passed for result in self.conditions)

    def failures(self) -> Tuple[ConditionResult, ...]:
        return tuple(result for result in self.conditions if not result.passed)

    def failed_numbers(self) -> Tuple[int, ...]:
        return tuple(result.number for result in self.failures())

    def condition(self, number: int) -> ConditionResult:
        for result in self.conditions:
            if result.number == number:
                return result
        raise KeyError(number)


def _degree_condition(graph: Graph) -> ConditionResult:
    for v in graph.vertices():
        if graph.degree(v) < 2:
            return ConditionResult(1, False, f"vertex {v} has degree {graph.degree(v)}")
    return ConditionResult(1, True)


def _size_condition(graph: Graph) -> ConditionResult:
    n, m = graph.n, graph.size
    if n < 5:
        return ConditionResult(2, False, f"|V| = {n} < 5")
    if m < 2 * n:
        return ConditionResult(2, False, f"|E| = {m} < {2 * n} = 2|V|")
    return ConditionResult(2, True)


def _walk_condition(nx_graph: "nx.Graph", steps: StepPair) -> ConditionResult:
    limit = steps.total
    for u, v in combinations(sorted(nx_graph.nodes), 2):
        view = nx.restricted_view(nx_graph, [], [(u, v)]) if nx_graph.has_edge(u, v) else nx_graph
        try:
            distance: Optional[int] = nx.shortest_path_length(view, u, v)
        except nx.NetworkXNoPath:
            distance = None
        if distance is None or distance > limit:
            found = "none" if distance is None else str(distance)
            return ConditionResult(4, False, f"pair ({u}, {v}): shortest such walk {found} > {limit}")
    return ConditionResult(4, True)


def _diameter_condition(nx_graph: "nx.Graph", steps: StepPair) -> ConditionResult:
    if not nx.is_connected(nx_graph):
        components = sorted(sorted(component) for component in nx.connected_components(nx_graph))
        return ConditionResult(
            5, False, f"disconnected: ({components[0][0]}, {components[1][0]}) unreachable"
        )
    limit = steps.total
    for source, lengths in sorted(nx.all_pairs_shortest_path_length(nx_graph)):
        for target in sorted(lengths):
            if lengths[target] > limit:
                return ConditionResult(
                    5, False, f"d({source}, {target}) = {lengths[target]} > {limit}"
                )
    return ConditionResult(5, True)


def _edge_connectivity_condition(nx_graph: "nx.Graph") -> ConditionResult:
    if not nx.is_connected(nx_graph):
        return ConditionResult(6, False, "graph is disconnected")
    bridges = sorted(tuple(sorted(edge)) for edge in nx.bridges(nx_graph))
    if bridges:
        u, v = bridges[0]
        return ConditionResult(6, False, f"bridge {{{u}, {v}}}")
    return ConditionResult(6, True)


def _core_conditions(graph: Graph, steps: StepPair) -> List[ConditionResult]:
    nx_graph = graph.to_networkx()
    return [
        _degree_condition(graph),
        _size_condition(graph),
        _walk_condition(nx_graph, steps),
        _diameter_condition(nx_graph, steps),
        _edge_connectivity_condition(nx_graph),
    ]


def reduce_degree_two_trace(graph: Graph) -> ReductionTrace:
    """Delete the lowest-numbered degree-2 vertex until none is left."""

    alive = set(graph.vertices())
    adj = {v: set(graph.neighbors(v)) for v in graph.vertices()}
    deleted: List[int] = []
    while True:
        candidate = next((v for v in sorted(alive) if len(adj[v]) == 2), None)
        if candidate is None:
            break
        for neighbor in adj.pop(candidate):
            adj[neighbor].discard(candidate)
        alive.discard(candidate)
        deleted.append(candidate)
    kept = tuple(sorted(alive))
    return ReductionTrace(graph=graph.induced(kept), deleted=tuple(deleted), kept=kept)


def reduce_degree_two(graph: Graph) -> Graph:
    return reduce_degree_two_trace(graph).graph


def _reduction_condition(graph: Graph, steps: StepPair) -> Tuple[ConditionResult, Optional[ReductionTrace]]:
    trace = reduce_degree_two_trace(graph)
    if not trace.deleted:
        return ConditionResult(3, True), None
    reduced = trace.graph
    if reduced.n < 2:
        return ConditionResult(3, True), trace
    failed = [result for result in _core_conditions(reduced, steps) if not result.passed]
    if not failed:
        return ConditionResult(3, True), trace
    detail = (
        f"deleting {list(trace.deleted)} leaves {reduced.n} vertices and {reduced.size} edges "
        f"violating ({failed[0].number})"
    )
    return ConditionResult(3, False, detail), trace


def check_necessary(graph: Graph, steps: StepPair) -> NecessaryReport:
    """Evaluate all six conditions; none short-circuits the others."""

    if graph.n < 2:
        raise ContractViolation("necessary conditions apply to graphs with at least two vertices")
    core = _core_conditions(graph, steps)
    reduction, trace = _reduction_condition(graph, steps)
    ordered = sorted(core + [reduction], key=lambda result: result.number)
    return NecessaryReport(steps=steps, conditions=tuple(ordered), reduction=trace)


def is_sharp(graph: Graph) -> bool:
    """True when both inequalities of condition (2) hold with equality."""

    return graph.n == 5 and graph.size == 2 * graph.n


__all__ = [
    "CONDITION_NAMES",
    "ConditionResult",
    "NecessaryReport",
    "ReductionTrace",
    "check_necessary",
    "reduce_degree_two",
    "reduce_degree_two_trace",
    "is_sharp",
]
