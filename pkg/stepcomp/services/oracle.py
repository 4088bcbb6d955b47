"""Brute-force ground truth: try every orientation of a graph.

Orientations are indexed by a mask over the lexicographically sorted edge
list: bit ``b`` clear orients edge ``b`` from its lower to its higher end.
"""
from __future__ import annotations

import csv
import io
import multiprocessing
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from itertools import combinations
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, TextIO, Tuple

from stepcomp.config import defaults
from stepcomp.core.digraph import Digraph, Edge, Graph, PartitionSpec
from stepcomp.core.errors import ContractViolation, EdgeCapExceeded
from stepcomp.core.log import get_logger
from stepcomp.services.competition import StepPair, competitive_masks
from stepcomp.services.necessary import check_necessary

log = get_logger("oracle")

CSV_COLUMNS = (
    "partition",
    "steps",
    "orientable",
    "witness_mask",
    "orientations_checked",
    "elapsed_ms",
)


@dataclass(frozen=True, slots=True)
class OrientationCursor:
    """A graph, its fixed edge order, and one direction mask."""

    graph: Graph
    edges: Tuple[Edge, ...]
    mask: int = 0

    def __post_init__(self) -> None:
        if not 0 <= self.mask < 1 << len(self.edges):
            raise ContractViolation(f"mask {self.mask} out of range for {len(self.edges)} edges")

    @classmethod
    def for_graph(cls, graph: Graph, mask: int = 0) -> "OrientationCursor":
        return cls(graph, tuple(graph.sorted_edges()), mask)

    @property
    def total(self) -> int:
        return 1 << len(self.edges)

    def at(self, mask: int) -> "OrientationCursor":
        return OrientationCursor(self.graph, self.edges, mask)

    def out_masks(self) -> Tuple[int, ...]:
        return _decode(self.graph.n, self.edges, self.mask)

    def digraph(self) -> Digraph:
        return Digraph(
            self.graph.n,
            frozenset(
                (v, u) if self.mask >> bit & 1 else (u, v) for bit, (u, v) in enumerate(self.edges)
            ),
        )


def mask_of(graph: Graph, digraph: Digraph) -> int:
    """Inverse of decoding: the mask whose orientation of ``graph`` is ``digraph``."""

    mask = 0
    for bit, (u, v) in enumerate(graph.sorted_edges()):
        if digraph.has_arc(v, u):
            mask |= 1 << bit
        elif not digraph.has_arc(u, v):
            raise ContractViolation(f"edge {{{u}, {v}}} is not oriented by the digraph")
    return mask


def _decode(n: int, edges: Sequence[Edge], mask: int) -> Tuple[int, ...]:
    out = [0] * n
    for u, v in edges:
        if mask & 1:
            out[v] |= 1 << u
        else:
            out[u] |= 1 << v
        mask >>= 1
    return tuple(out)


def _check_cap(graph: Graph, edge_cap: Optional[int]) -> None:
    cap = defaults.EDGE_CAP if edge_cap is None else edge_cap
    if graph.size > cap:
        raise EdgeCapExceeded(graph.size, cap)


def enumerate_orientations(
    graph: Graph,
    *,
    edge_cap: Optional[int] = None,
    start: int = 0,
    stop: Optional[int] = None,
) -> Iterator[Digraph]:
    """Yield orientations in mask order; ``start``/``stop`` select a sub-range."""

    _check_cap(graph, edge_cap)
    cursor = OrientationCursor.for_graph(graph)
    end = cursor.total if stop is None else min(stop, cursor.total)
    for mask in range(max(0, start), end):
        yield cursor.at(mask).digraph()


@dataclass(frozen=True, slots=True)
class OracleResult:
    orientable: bool
    witness_mask: Optional[int]
    orientations_checked: int
    competitive_count: Optional[int] = None
    rejected_by: Tuple[int, ...] = ()
    elapsed_ms: float = 0.0

    @property
    def quick_rejected(self) -> bool:
        return bool(self.rejected_by)


# Lowest witness mask found so far by any worker; -1 while none is known.
_BEST = None


def _init_worker(best) -> None:
    global _BEST
    _BEST = best


def _scan(
    n: int, edges: Tuple[Edge, ...], i: int, j: int, start: int, stop: int, count: bool
) -> Tuple[Optional[int], int]:
    """Scan ``[start, stop)``; return the first witness and the competitive count."""

    first: Optional[int] = None
    found = 0
    for mask in range(start, stop):
        if not count and _BEST is not None and mask & 0x3FF == 0:
            best = _BEST.value
            if 0 <= best < start:
                break
        if competitive_masks(_decode(n, edges, mask), i, j):
            if first is None:
                first = mask
                if _BEST is not None:
                    with _BEST.get_lock():
                        if _BEST.value < 0 or mask < _BEST.value:
                            _BEST.value = mask
            found += 1
            if not count:
                break
    return first, found


def _chunks(total: int, size: int) -> List[Tuple[int, int]]:
    return [(start, min(start + size, total)) for start in range(0, total, size)]


def _scan_parallel(
    n: int, edges: Tuple[Edge, ...], steps: StepPair, count: bool, jobs: int, chunk_size: int
) -> Tuple[Optional[int], int]:
    total = 1 << len(edges)
    best = multiprocessing.Value("q", -1)
    witness: Optional[int] = None
    found = 0
    with ProcessPoolExecutor(max_workers=jobs, initializer=_init_worker, initargs=(best,)) as pool:
        futures = [
            pool.submit(_scan, n, edges, steps.i, steps.j, start, stop, count)
            for start, stop in _chunks(total, chunk_size)
        ]
        for future in futures:
            first, chunk_found = future.result()
            found += chunk_found
            if first is not None and witness is None:
                witness = first
                if not count:
                    # Chunks are consumed in mask order, so this is the lowest witness.
                    for pending in futures:
                        pending.cancel()
                    break
    return witness, found


def brute_force_orientable(
    graph: Graph,
    steps: StepPair,
    *,
    count: bool = False,
    edge_cap: Optional[int] = None,
    jobs: Optional[int] = None,
    audit: bool = False,
    chunk_size: Optional[int] = None,
) -> OracleResult:
    """Search every orientation of ``graph`` for an (i,j)-step competitive one.

    Without ``audit``, graphs failing a necessary condition are rejected
    before enumeration. ``count`` disables the early exit and counts every
    competitive orientation. ``orientations_checked`` is the number of masks
    a sequential scan would have examined.
    """

    _check_cap(graph, edge_cap)
    started = time.perf_counter()
    if graph.n < 2:
        raise ContractViolation("orientability is defined here for graphs with at least two vertices")

    if not audit:
        report = check_necessary(graph, steps)
        if not report.passed:
            elapsed = (time.perf_counter() - started) * 1000.0
            log.debug("quick reject: conditions %s fail", report.failed_numbers())
            return OracleResult(
                orientable=False,
                witness_mask=None,
                orientations_checked=0,
                competitive_count=0 if count else None,
                rejected_by=report.failed_numbers(),
                elapsed_ms=elapsed,
            )

    edges = tuple(graph.sorted_edges())
    total = 1 << len(edges)
    workers = defaults.JOBS if jobs is None else max(1, jobs)
    size = defaults.CHUNK_SIZE if chunk_size is None else max(1, chunk_size)

    if workers == 1 or total <= size:
        witness, found = _scan(graph.n, edges, steps.i, steps.j, 0, total, count)
    else:
        try:
            witness, found = _scan_parallel(graph.n, edges, steps, count, workers, size)
        except (OSError, NotImplementedError) as exc:
            log.warning("worker pool unavailable (%s); scanning %d masks sequentially", exc, total)
            witness, found = _scan(graph.n, edges, steps.i, steps.j, 0, total, count)

    checked = total if count or witness is None else witness + 1
    elapsed = (time.perf_counter() - started) * 1000.0
    log.info(
        "brute force: n=%d |E|=%d steps=(%s) orientable=%s checked=%d in %.1f ms",
        graph.n,
        len(edges),
        steps,
        witness is not None,
        checked,
        elapsed,
    )
    return OracleResult(
        orientable=witness is not None,
        witness_mask=witness,
        orientations_checked=checked,
        competitive_count=found if count else None,
        elapsed_ms=elapsed,
    )


def random_digraph(n: int, p: float, seed: Optional[int] = None) -> Digraph:
    """Each pair gets no arc with probability ``1 - p``, else an arc in a uniform direction."""

    if not 0.0 <= p <= 1.0:
        raise ContractViolation(f"arc probability must lie in [0, 1], got {p}")
    rng = random.Random(seed)
    arcs = set()
    for u, v in combinations(range(n), 2):
        if rng.random() < p:
            arcs.add((u, v) if rng.random() < 0.5 else (v, u))
    return Digraph(n, frozenset(arcs))


def random_tournament(n: int, seed: Optional[int] = None) -> Digraph:
    return random_digraph(n, 1.0, seed)


def partitions_up_to(max_edges: int, max_parts: Optional[int] = None) -> Iterator[PartitionSpec]:
    """Every complete multipartite partition (k >= 2) with at most ``max_edges`` edges."""

    def parts_of(total: int, largest: int) -> Iterator[Tuple[int, ...]]:
        if total == 0:
            yield ()
            return
        for first in range(min(total, largest), 0, -1):
            for rest in parts_of(total - first, first):
                yield (first,) + rest

    # K_{n-1,1} has the fewest edges on n vertices.
    for n in range(2, max_edges + 2):
        for sizes in parts_of(n, n - 1):
            if len(sizes) < 2 or (max_parts is not None and len(sizes) > max_parts):
                continue
            spec = PartitionSpec(sizes)
            if spec.edge_count <= max_edges:
                yield spec


@dataclass(frozen=True, slots=True)
class AuditRow:
    partition: str
    steps: str
    orientable: bool
    witness_mask: Optional[int]
    orientations_checked: int
    elapsed_ms: float
    competitive_count: Optional[int] = None
    decided: Optional[str] = None

    @classmethod
    def from_result(
        cls,
        partition: object,
        steps: StepPair,
        result: OracleResult,
        decided: Optional[str] = None,
    ) -> "AuditRow":
        return cls(
            partition=str(partition),
            steps=str(steps),
            orientable=result.orientable,
            witness_mask=result.witness_mask,
            orientations_checked=result.orientations_checked,
            elapsed_ms=round(result.elapsed_ms, 3),
            competitive_count=result.competitive_count,
            decided=decided,
        )

    def serialize(self) -> Dict[str, object]:
        payload = asdict(self)
        payload["orientable"] = "true" if self.orientable else "false"
        for key in ("witness_mask", "competitive_count", "decided"):
            if payload[key] is None:
                payload[key] = ""
        return payload


def write_audit_csv(
    rows: Iterable[AuditRow],
    stream: TextIO,
    *,
    header: bool = True,
    extra_columns: Sequence[str] = (),
) -> None:
    """Write rows in the fixed column order; ``extra_columns`` are appended after it."""

    writer = csv.DictWriter(
        stream,
        fieldnames=CSV_COLUMNS + tuple(extra_columns),
        lineterminator="\n",
        extrasaction="ignore",
    )
    if header:
        writer.writeheader()
    for row in rows:
        writer.writerow(row.serialize())


def audit_csv(rows: Iterable[AuditRow], extra_columns: Sequence[str] = ()) -> str:
    buffer = io.StringIO()
    write_audit_csv(rows, buffer, extra_columns=extra_columns)
    return buffer.getvalue()


def run_audit(
    partitions: Iterable[PartitionSpec],
    steps_list: Sequence[StepPair],
    *,
    edge_cap: Optional[int] = None,
    jobs: Optional[int] = None,
    audit: bool = False,
) -> Iterator[Tuple[PartitionSpec, StepPair, OracleResult]]:
    for partition in partitions:
        graph = partition.graph()
        for steps in steps_list:
            yield partition, steps, brute_force_orientable(
                graph, steps, edge_cap=edge_cap, jobs=jobs, audit=audit
            )


__all__ = [
    "CSV_COLUMNS",
    "OrientationCursor",
    "mask_of",
    "enumerate_orientations",
    "OracleResult",
    "brute_force_orientable",
    "random_digraph",
    "random_tournament",
    "partitions_up_to",
    "AuditRow",
    "write_audit_csv",
    "audit_csv",
    "run_audit",
]
