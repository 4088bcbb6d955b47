"""(i,j)-step competition between vertices of a digraph.

Two vertices ``u`` and ``v`` (i,j)-step compete when some ``w`` is reachable
from ``u`` within ``i`` steps in ``D - v`` and from ``v`` within ``j`` steps in
``D - u``, or the same with ``i`` and ``j`` exchanged.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Iterator, List, Literal, Optional, Sequence, Tuple, Union

from stepcomp.core.digraph import (
    Digraph,
    Graph,
    PartitionedDigraph,
    reach_layers,
)
from stepcomp.core.errors import ContractViolation, DigraphError

Pair = Tuple[int, int]
DigraphLike = Union[Digraph, PartitionedDigraph]


@dataclass(frozen=True, slots=True)
class StepPair:
    i: int
    j: int

    def __post_init__(self) -> None:
        for name in ("i", "j"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                raise ContractViolation(f"step {name} must be a positive integer, got {value!r}")

    @classmethod
    def parse(cls, text: str) -> "StepPair":
        parts = [part.strip() for part in text.split(",")]
        if len(parts) != 2:
            raise ContractViolation(f"steps must look like 'i,j', got {text!r}")
        try:
            return cls(int(parts[0]), int(parts[1]))
        except ValueError as exc:
            raise ContractViolation(f"malformed steps {text!r}: {exc}") from exc

    @property
    def total(self) -> int:
        return self.i + self.j

    @property
    def reach(self) -> int:
        return max(self.i, self.j)

    def swapped(self) -> "StepPair":
        return StepPair(self.j, self.i)

    def canonical(self) -> "StepPair":
        return self if self.i <= self.j else self.swapped()

    def dominates(self, other: "StepPair") -> bool:
        return self.i >= other.i and self.j >= other.j

    def __str__(self) -> str:
        return f"{self.i},{self.j}"


@dataclass(frozen=True, slots=True)
class CompeteWitness:
    """An (i,j)-step common out-neighbor ``w`` with both leg lengths."""

    w: int
    len_from_u: int
    len_from_v: int
    clause: Literal["i", "ii"]

    def satisfies(self, steps: StepPair) -> bool:
        if self.clause == "i":
            return self.len_from_u <= steps.i and self.len_from_v <= steps.j
        return self.len_from_u <= steps.j and self.len_from_v <= steps.i


@dataclass(frozen=True, slots=True)
class Verification:
    """Outcome of ``is_competitive``; truthy when the digraph is competitive."""

    competitive: bool
    failing_pair: Optional[Pair] = None

    def __bool__(self) -> bool:
        return self.competitive


def _as_digraph(obj: DigraphLike) -> Digraph:
    return obj.digraph if isinstance(obj, PartitionedDigraph) else obj


def _check_pair(digraph: Digraph, u: int, v: int) -> None:
    for vertex in (u, v):
        if not isinstance(vertex, int) or not 0 <= vertex < digraph.n:
            raise DigraphError(f"vertex {vertex!r} out of range 0..{digraph.n - 1}")
    if u == v:
        raise ContractViolation(f"a vertex does not compete with itself (u = v = {u})")


def cumulative_reach(out_masks: Sequence[int], source: int, avoid: int, bound: int) -> List[int]:
    """``result[d]`` is the bitmask of vertices at distance ``1..d`` from ``source`` in ``D - avoid``."""

    seen = (1 << source) | (1 << avoid)
    frontier = 1 << source
    reached = 0
    result = [0]
    for _ in range(bound):
        step = 0
        mask = frontier
        while mask:
            low = mask & -mask
            step |= out_masks[low.bit_length() - 1]
            mask ^= low
        step &= ~seen
        seen |= step
        reached |= step
        result.append(reached)
        frontier = step
    return result


def competes_masks(out_masks: Sequence[int], u: int, v: int, i: int, j: int) -> bool:
    """Bitset form of the competition predicate on raw out-neighborhood masks."""

    bound = i if i >= j else j
    from_u = cumulative_reach(out_masks, u, v, bound)
    from_v = cumulative_reach(out_masks, v, u, bound)
    return bool((from_u[i] & from_v[j]) or (from_u[j] & from_v[i]))


def competes(digraph: DigraphLike, u: int, v: int, steps: StepPair) -> bool:
    digraph = _as_digraph(digraph)
    _check_pair(digraph, u, v)
    return competes_masks(digraph.out_masks, u, v, steps.i, steps.j)


def _distances_avoiding(digraph: Digraph, source: int, avoid: int, bound: int) -> Dict[int, int]:
    distances: Dict[int, int] = {}
    for depth, layer in enumerate(reach_layers(digraph, source, bound, avoid=avoid)):
        if depth == 0:
            continue
        while layer:
            low = layer & -layer
            distances[low.bit_length() - 1] = depth
            layer ^= low
    return distances


def ij_compete(
    digraph: DigraphLike, u: int, v: int, steps: StepPair
) -> Optional[CompeteWitness]:
    """Return the canonical (i,j)-step common out-neighbor of ``u`` and ``v``, or ``None``.

    Witnesses are ranked by total leg length, then vertex index; clause (i)
    is preferred over clause (ii) when both hold.
    """

    digraph = _as_digraph(digraph)
    _check_pair(digraph, u, v)
    bound = steps.reach
    from_u = _distances_avoiding(digraph, u, v, bound)
    from_v = _distances_avoiding(digraph, v, u, bound)

    best: Optional[CompeteWitness] = None
    for w in sorted(from_u.keys() & from_v.keys()):
        du, dv = from_u[w], from_v[w]
        if du <= steps.i and dv <= steps.j:
            clause: Literal["i", "ii"] = "i"
        elif du <= steps.j and dv <= steps.i:
            clause = "ii"
        else:
            continue
        if best is None or du + dv < best.len_from_u + best.len_from_v:
            best = CompeteWitness(w=w, len_from_u=du, len_from_v=dv, clause=clause)
    return best


def iter_pairs(n: int) -> Iterator[Pair]:
    return combinations(range(n), 2)


def competition_graph(digraph: DigraphLike, steps: StepPair) -> Graph:
    digraph = _as_digraph(digraph)
    out = digraph.out_masks
    return Graph(
        digraph.n,
        frozenset(
            (u, v) for u, v in iter_pairs(digraph.n) if competes_masks(out, u, v, steps.i, steps.j)
        ),
    )


def is_competitive(digraph: DigraphLike, steps: StepPair) -> Verification:
    """Check every pair; stop at the lexicographically least pair that fails."""

    digraph = _as_digraph(digraph)
    if digraph.n < 2:
        raise ContractViolation("competitiveness needs at least two vertices")
    out = digraph.out_masks
    for u, v in iter_pairs(digraph.n):
        if not competes_masks(out, u, v, steps.i, steps.j):
            return Verification(False, (u, v))
    return Verification(True)


def competitive_masks(out_masks: Sequence[int], i: int, j: int) -> bool:
    """Fast yes/no check used by the exhaustive oracle.

    Rejects outright when some vertex has fewer than two out-neighbors, which
    no competitive digraph on two or more vertices allows.
    """

    for mask in out_masks:
        if not mask & (mask - 1):
            return False
    n = len(out_masks)
    for u in range(n):
        for v in range(u + 1, n):
            if not competes_masks(out_masks, u, v, i, j):
                return False
    return True


@dataclass(frozen=True, slots=True)
class PairReport:
    """Missing competition-graph edges, split by whether the pair shares a partite set."""

    same_block: Tuple[Pair, ...]
    cross_block: Tuple[Pair, ...]

    @property
    def complete(self) -> bool:
        return not self.same_block and not self.cross_block


def competing_pairs_report(digraph: PartitionedDigraph, steps: StepPair) -> PairReport:
    graph = competition_graph(digraph, steps)
    same: List[Pair] = []
    cross: List[Pair] = []
    for u, v in iter_pairs(graph.n):
        if graph.has_edge(u, v):
            continue
        (same if digraph.same_block(u, v) else cross).append((u, v))
    return PairReport(tuple(same), tuple(cross))


def bipartite_cross_competes(digraph: PartitionedDigraph, u: int, v: int) -> bool:
    """(1,2)-step competition across the two sides of a bipartite tournament.

    Holds exactly when each of ``u`` and ``v`` has an out-neighbor other than
    the other one.
    """

    if digraph.partition.k != 2:
        raise ContractViolation("the cross-part criterion applies to bipartite tournaments only")
    if digraph.same_block(u, v):
        raise ContractViolation(f"vertices {u} and {v} lie in the same partite set")
    out = digraph.digraph.out_masks
    return bool(out[u] & ~(1 << v)) and bool(out[v] & ~(1 << u))


__all__ = [
    "StepPair",
    "CompeteWitness",
    "Verification",
    "PairReport",
    "cumulative_reach",
    "competes_masks",
    "competes",
    "ij_compete",
    "iter_pairs",
    "competition_graph",
    "is_competitive",
    "competitive_masks",
    "competing_pairs_report",
    "bipartite_cross_competes",
]
