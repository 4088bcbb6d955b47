"""Digraphs, graphs and complete multipartite partitions on dense integer vertices."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from stepcomp.core.errors import ContractViolation, DigraphError

Arc = Tuple[int, int]
Edge = Tuple[int, int]


def _iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _check_vertex(n: int, v: int, what: str = "vertex") -> None:
    if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < n:
        raise DigraphError(f"{what} {v!r} out of range 0..{n - 1}")


@dataclass(frozen=True, slots=True)
class Digraph:
    """Loop-free, 2-cycle-free digraph on vertices ``0..n-1``."""

    n: int
    arcs: FrozenSet[Arc] = frozenset()
    out_masks: Tuple[int, ...] = field(init=False, repr=False, compare=False)
    in_masks: Tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 0:
            raise DigraphError(f"vertex count must be a non-negative integer, got {self.n!r}")
        arcs = frozenset((int(u), int(v)) for u, v in self.arcs)
        out = [0] * self.n
        inn = [0] * self.n
        for u, v in arcs:
            _check_vertex(self.n, u, "arc tail")
            _check_vertex(self.n, v, "arc head")
            if u == v:
                raise DigraphError(f"loop at vertex {u}")
            if (v, u) in arcs:
                raise DigraphError(f"directed 2-cycle between {min(u, v)} and {max(u, v)}")
            out[u] |= 1 << v
            inn[v] |= 1 << u
        object.__setattr__(self, "arcs", arcs)
        object.__setattr__(self, "out_masks", tuple(out))
        object.__setattr__(self, "in_masks", tuple(inn))

    @property
    def size(self) -> int:
        return len(self.arcs)

    def vertices(self) -> range:
        return range(self.n)

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self.arcs

    def out_neighbors(self, v: int) -> Tuple[int, ...]:
        _check_vertex(self.n, v)
        return tuple(_iter_bits(self.out_masks[v]))

    def in_neighbors(self, v: int) -> Tuple[int, ...]:
        _check_vertex(self.n, v)
        return tuple(_iter_bits(self.in_masks[v]))

    def outdegree(self, v: int) -> int:
        return bin(self.out_masks[v]).count("1")

    def indegree(self, v: int) -> int:
        return bin(self.in_masks[v]).count("1")

    def min_outdegree(self) -> int:
        if not self.n:
            return 0
        return min(self.outdegree(v) for v in self.vertices())

    def sorted_arcs(self) -> List[Arc]:
        return sorted(self.arcs)

    def add_arc(self, u: int, v: int) -> "Digraph":
        """Return a copy with ``(u, v)`` added; reversing an existing arc is refused."""

        if (v, u) in self.arcs:
            raise DigraphError(f"arc ({u}, {v}) would close a 2-cycle")
        return Digraph(self.n, self.arcs | {(u, v)})

    def relabel(self, order: Sequence[int]) -> "Digraph":
        """Return the digraph whose vertex ``k`` is the old vertex ``order[k]``."""

        if sorted(order) != list(range(self.n)):
            raise ContractViolation("relabel order must be a permutation of the vertex set")
        position = {old: new for new, old in enumerate(order)}
        return Digraph(self.n, frozenset((position[u], position[v]) for u, v in self.arcs))

    def is_tournament(self) -> bool:
        return 2 * len(self.arcs) == self.n * (self.n - 1)


@dataclass(frozen=True, slots=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``; edges stored as ``(low, high)``."""

    n: int
    edges: FrozenSet[Edge] = frozenset()
    adj_masks: Tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 0:
            raise DigraphError(f"vertex count must be a non-negative integer, got {self.n!r}")
        edges = set()
        adj = [0] * self.n
        for u, v in self.edges:
            u, v = int(u), int(v)
            _check_vertex(self.n, u, "edge endpoint")
            _check_vertex(self.n, v, "edge endpoint")
            if u == v:
                raise DigraphError(f"loop at vertex {u}")
            edges.add((min(u, v), max(u, v)))
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        object.__setattr__(self, "edges", frozenset(edges))
        object.__setattr__(self, "adj_masks", tuple(adj))

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, frozenset(combinations(range(n), 2)))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls(n, frozenset((v, (v + 1) % n) for v in range(n)))

    @property
    def size(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(self.n)

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def neighbors(self, v: int) -> Tuple[int, ...]:
        _check_vertex(self.n, v)
        return tuple(_iter_bits(self.adj_masks[v]))

    def degree(self, v: int) -> int:
        return bin(self.adj_masks[v]).count("1")

    def min_degree(self) -> int:
        if not self.n:
            return 0
        return min(self.degree(v) for v in self.vertices())

    def sorted_edges(self) -> List[Edge]:
        return sorted(self.edges)

    def is_complete(self) -> bool:
        return 2 * len(self.edges) == self.n * (self.n - 1)

    def induced(self, keep: Iterable[int]) -> "Graph":
        """Subgraph induced by ``keep``, reindexed in ascending order of the kept labels."""

        kept = sorted(set(keep))
        for v in kept:
            _check_vertex(self.n, v)
        position = {old: new for new, old in enumerate(kept)}
        return Graph(
            len(kept),
            frozenset(
                (position[u], position[v])
                for u, v in self.edges
                if u in position and v in position
            ),
        )

    def to_networkx(self):
        import networkx as nx

        graph = nx.Graph()
        graph.add_nodes_from(self.vertices())
        graph.add_edges_from(self.edges)
        return graph


@dataclass(frozen=True, slots=True)
class PartitionSpec:
    """Partite-set sizes of a complete multipartite graph, kept non-increasing."""

    sizes: Tuple[int, ...]

    def __post_init__(self) -> None:
        sizes = tuple(int(size) for size in self.sizes)
        if len(sizes) < 2:
            raise ContractViolation(f"a partition needs at least two parts, got {len(sizes)}")
        if any(size < 1 for size in sizes):
            raise ContractViolation(f"partite-set sizes must be positive, got {sizes}")
        object.__setattr__(self, "sizes", tuple(sorted(sizes, reverse=True)))

    @classmethod
    def of(cls, *sizes: int) -> "PartitionSpec":
        return cls(tuple(sizes))

    @classmethod
    def parse(cls, text: str) -> "PartitionSpec":
        """Parse ``"10,5"``-style text; sizes are sorted non-increasing."""

        parts = [part.strip() for part in text.replace(" ", ",").split(",") if part.strip()]
        try:
            sizes = tuple(int(part) for part in parts)
        except ValueError as exc:
            raise ContractViolation(f"malformed partition {text!r}: {exc}") from exc
        return cls(sizes)

    @property
    def k(self) -> int:
        return len(self.sizes)

    @property
    def n(self) -> int:
        return sum(self.sizes)

    def size(self, index: int) -> int:
        """1-based size accessor, ``size(1) == n_1``."""

        return self.sizes[index - 1]

    @property
    def edge_count(self) -> int:
        total = self.n
        return (total * total - sum(size * size for size in self.sizes)) // 2

    def blocks(self) -> List[range]:
        ranges: List[range] = []
        start = 0
        for size in self.sizes:
            ranges.append(range(start, start + size))
            start += size
        return ranges

    def block_map(self) -> Tuple[int, ...]:
        owner: List[int] = []
        for index, size in enumerate(self.sizes):
            owner.extend([index] * size)
        return tuple(owner)

    def dominates(self, other: "PartitionSpec") -> bool:
        return self.k == other.k and all(a >= b for a, b in zip(self.sizes, other.sizes))

    def graph(self) -> Graph:
        owner = self.block_map()
        return Graph(
            self.n,
            frozenset(
                (u, v) for u, v in combinations(range(self.n), 2) if owner[u] != owner[v]
            ),
        )

    def label(self) -> str:
        return "K_{" + ",".join(str(size) for size in self.sizes) + "}"

    def __str__(self) -> str:
        return ",".join(str(size) for size in self.sizes)


@dataclass(frozen=True, slots=True)
class PartitionedDigraph:
    """Orientation of the complete multipartite graph described by ``partition``."""

    digraph: Digraph
    partition: PartitionSpec
    blocks: Tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.digraph.n != self.partition.n:
            raise DigraphError(
                f"digraph has {self.digraph.n} vertices but partition "
                f"{self.partition.label()} needs {self.partition.n}"
            )
        owner = self.partition.block_map()
        object.__setattr__(self, "blocks", owner)
        problem = _orientation_problem(self.digraph, owner)
        if problem is not None:
            raise DigraphError(problem)

    def block_of(self, v: int) -> int:
        return self.blocks[v]

    def same_block(self, u: int, v: int) -> bool:
        return self.blocks[u] == self.blocks[v]

    def block_vertices(self, index: int) -> range:
        return self.partition.blocks()[index]


def _orientation_problem(digraph: Digraph, owner: Sequence[int]) -> Optional[str]:
    for u, v in digraph.arcs:
        if owner[u] == owner[v]:
            return f"arc ({u}, {v}) joins two vertices of block {owner[u] + 1}"
    for u, v in combinations(range(digraph.n), 2):
        if owner[u] != owner[v] and not ((u, v) in digraph.arcs or (v, u) in digraph.arcs):
            return f"cross-block pair {{{u}, {v}}} has no arc"
    return None


def is_orientation(digraph: Digraph, partition: PartitionSpec) -> bool:
    """True when ``digraph`` orients exactly the edges of ``partition``'s complete multipartite graph."""

    if digraph.n != partition.n:
        return False
    return _orientation_problem(digraph, partition.block_map()) is None


def underlying_graph(digraph: Digraph) -> Graph:
    return Graph(digraph.n, frozenset(digraph.arcs))


def delete_vertex(digraph: Digraph, v: int) -> Digraph:
    """Isolate ``v``: drop every arc at ``v`` but keep the vertex numbering."""

    _check_vertex(digraph.n, v)
    return Digraph(digraph.n, frozenset(arc for arc in digraph.arcs if v not in arc))


def reach_layers(
    digraph: Digraph, source: int, bound: int, *, avoid: Optional[int] = None
) -> List[int]:
    """Breadth-first layers from ``source`` as bitmasks, depth ``0..bound``.

    ``avoid`` is treated as deleted. Layer ``d`` holds the vertices at exact
    distance ``d``; trailing empty layers are dropped.
    """

    out = digraph.out_masks
    seen = 1 << source
    if avoid is not None:
        seen |= 1 << avoid
    frontier = 1 << source
    layers = [frontier]
    for _ in range(bound):
        reached = 0
        for v in _iter_bits(frontier):
            reached |= out[v]
        reached &= ~seen
        if not reached:
            break
        seen |= reached
        layers.append(reached)
        frontier = reached
    return layers


def bounded_distance(digraph: Digraph, source: int, bound: int) -> Dict[int, int]:
    """Shortest-path distances from ``source`` up to ``bound``.

    Vertices farther than ``bound`` (or unreachable) are absent from the map.
    """

    _check_vertex(digraph.n, source, "source")
    if bound < 0:
        raise ContractViolation(f"distance bound must be non-negative, got {bound}")
    distances: Dict[int, int] = {}
    for depth, layer in enumerate(reach_layers(digraph, source, bound)):
        for v in _iter_bits(layer):
            distances[v] = depth
    return distances


__all__ = [
    "Arc",
    "Edge",
    "Digraph",
    "Graph",
    "PartitionSpec",
    "PartitionedDigraph",
    "is_orientation",
    "underlying_graph",
    "delete_vertex",
    "reach_layers",
    "bounded_distance",
]
