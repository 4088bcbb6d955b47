"""Seed orientations, clone-extension growth, and the orientability decision.

``decide`` answers whether a complete multipartite graph has an
(i,j)-step competitive orientation and names the clause that settles it;
``construct`` builds one by growing the clause's seed digraph.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from itertools import combinations
from pathlib import Path
from typing import Dict, List, Optional, Set, Tuple

from stepcomp.config import defaults
from stepcomp.core.arcfile import read_digraph
from stepcomp.core.digraph import Digraph, PartitionedDigraph, PartitionSpec
from stepcomp.core.errors import ContractViolation, DigraphError, SelfVerificationError
from stepcomp.core.log import get_logger
from stepcomp.services.competition import StepPair, is_competitive

log = get_logger("synthesis")


class SeedKind(str, Enum):
    D1 = "D1"
    D2 = "D2"
    D3 = "D3"
    D4 = "D4"
    D5 = "D5"
    D6 = "D6"
    D7 = "D7"
    D8 = "D8"
    D9 = "D9"
    D10 = "D10"
    TK = "Tk"


@dataclass(frozen=True, slots=True)
class SeedId:
    kind: SeedKind
    k: Optional[int] = None

    def __post_init__(self) -> None:
        if self.kind is SeedKind.TK:
            if self.k is None or self.k < 5:
                raise ContractViolation(f"tournament seeds need k >= 5, got {self.k!r}")
        elif self.k is not None:
            raise ContractViolation(f"seed {self.kind.value} takes no size parameter")

    @classmethod
    def tournament(cls, k: int) -> "SeedId":
        return cls(SeedKind.TK, k)

    @classmethod
    def parse(cls, text: str) -> "SeedId":
        """Accept ``D1``..``D10``, ``Tk(7)`` or ``T7``."""

        token = text.strip()
        upper = token.upper()
        if upper.startswith("TK(") and upper.endswith(")"):
            return cls.tournament(int(token[3:-1]))
        if upper.startswith("T") and token[1:].isdigit():
            return cls.tournament(int(token[1:]))
        try:
            return cls(SeedKind(upper))
        except ValueError:
            raise ContractViolation(f"unknown seed {text!r}") from None

    def __str__(self) -> str:
        if self.kind is SeedKind.TK:
            return f"Tk({self.k})"
        return self.kind.value


D1, D2, D3, D4, D5, D6, D7, D8, D9, D10 = (
    SeedId(kind) for kind in list(SeedKind)[:10]
)

# Partition of each fixed seed and the step pairs it is competitive at.
SEED_CATALOG: Dict[SeedKind, Tuple[Tuple[int, ...], Tuple[Tuple[int, int], ...]]] = {
    SeedKind.D1: ((6, 6), ((1, 2),)),
    SeedKind.D2: ((10, 5), ((1, 2),)),
    SeedKind.D3: ((4, 4), ((1, 3), (2, 2))),
    SeedKind.D4: ((6, 3), ((2, 2),)),
    SeedKind.D5: ((2, 2, 2), ((1, 2),)),
    SeedKind.D6: ((3, 3, 1), ((1, 2),)),
    SeedKind.D7: ((4, 2, 1), ((2, 2),)),
    SeedKind.D8: ((3, 1, 1, 1), ((1, 2),)),
    SeedKind.D9: ((2, 2, 1, 1), ((1, 2),)),
    SeedKind.D10: ((1, 1, 1, 1, 1), ((1, 2),)),
}


def seed_partition(seed_id: SeedId) -> PartitionSpec:
    if seed_id.kind is SeedKind.TK:
        return PartitionSpec((1,) * int(seed_id.k or 0))
    return PartitionSpec(SEED_CATALOG[seed_id.kind][0])


def seed_path(seed_id: SeedId, seeds_dir: Optional[Path] = None) -> Path:
    if seed_id.kind is SeedKind.TK:
        raise ContractViolation("tournament seeds are generated, not read from disk")
    base = Path(seeds_dir) if seeds_dir is not None else defaults.SEEDS_DIR
    return base / f"{seed_id.kind.value.lower()}.arcs"


def tournament_seed(k: int) -> PartitionedDigraph:
    """Tournament with ``l -> l+1, l+2 (mod k)`` and higher-to-lower on all other pairs."""

    if k < 5:
        raise ContractViolation(f"tournament seeds need k >= 5, got {k}")
    arcs: Set[Tuple[int, int]] = set()
    for low, high in combinations(range(k), 2):
        if (high - low) % k in (1, 2):
            arcs.add((low, high))
        else:
            arcs.add((high, low))
    return PartitionedDigraph(Digraph(k, frozenset(arcs)), PartitionSpec((1,) * k))


@lru_cache(maxsize=None)
def _load_seed_file(path: Path) -> PartitionedDigraph:
    parsed = read_digraph(path)
    if not isinstance(parsed, PartitionedDigraph):
        raise DigraphError(f"seed file {path} must use a kpartite header")
    return parsed


def seed(seed_id: SeedId, seeds_dir: Optional[Path] = None) -> PartitionedDigraph:
    if seed_id.kind is SeedKind.TK:
        return tournament_seed(int(seed_id.k or 0))
    digraph = _load_seed_file(seed_path(seed_id, seeds_dir))
    expected = seed_partition(seed_id)
    if digraph.partition != expected:
        raise DigraphError(
            f"seed {seed_id} is stored as {digraph.partition.label()}, expected {expected.label()}"
        )
    return digraph


def clone_vertex(digraph: Digraph, u: int) -> Digraph:
    """Append a vertex whose out-neighborhood copies ``u``'s."""

    if not 0 <= u < digraph.n:
        raise DigraphError(f"vertex {u} out of range 0..{digraph.n - 1}")
    new = digraph.n
    return Digraph(new + 1, digraph.arcs | {(new, w) for w in digraph.out_neighbors(u)})


def grow(digraph: PartitionedDigraph, target: PartitionSpec) -> PartitionedDigraph:
    """Enlarge the partite sets of ``digraph`` to ``target`` one vertex at a time.

    A vertex added to block ``l`` copies the current out-neighborhood of the
    block's first vertex; every other cross-block edge at it points inward.
    """

    source = digraph.partition
    if target.k != source.k:
        raise ContractViolation(
            f"cannot grow {source.label()} into {target.label()}: different number of parts"
        )
    if not target.dominates(source):
        raise ContractViolation(f"cannot grow {source.label()} into {target.label()}: a part shrinks")
    if target == source:
        return digraph

    current = digraph.digraph
    owner: List[int] = list(digraph.blocks)
    members: List[List[int]] = [list(block) for block in source.blocks()]

    for index, block in enumerate(source.blocks()):
        representative = block.start
        for _ in range(target.sizes[index] - source.sizes[index]):
            cloned = clone_vertex(current, representative)
            new = current.n
            copied = set(cloned.out_neighbors(new))
            inward = {
                (other, new) for other in range(new) if owner[other] != index and other not in copied
            }
            current = Digraph(new + 1, cloned.arcs | inward)
            owner.append(index)
            members[index].append(new)
            log.debug("grow: vertex %d joins block %d copying %s", new, index + 1, sorted(copied))

    order = [v for block_members in members for v in block_members]
    return PartitionedDigraph(current.relabel(order), target)



class Outcome(str, Enum):
    ORIENTABLE = "Orientable"
    NOT_ORIENTABLE = "NotOrientable"
    UNSUPPORTED = "Unsupported"


@dataclass(frozen=True, slots=True)
class GrowthPlan:
    seed: SeedId
    seed_partition: PartitionSpec
    target: PartitionSpec

    @property
    def additions(self) -> Tuple[int, ...]:
        return tuple(t - s for t, s in zip(self.target.sizes, self.seed_partition.sizes))


@dataclass(frozen=True, slots=True)
class Verdict:
    outcome: Outcome
    partition: PartitionSpec
    steps: StepPair
    clause: Optional[str] = None
    plan: Optional[GrowthPlan] = None
    reason: str = field(default="", compare=False)

    @property
    def orientable(self) -> bool:
        return self.outcome is Outcome.ORIENTABLE

    @property
    def seed(self) -> Optional[SeedId]:
        return self.plan.seed if self.plan else None

    def describe(self) -> str:
        if self.outcome is Outcome.ORIENTABLE:
            return f"Orientable [{self.clause}] seed={self.seed}"
        if self.outcome is Outcome.NOT_ORIENTABLE:
            return f"NotOrientable [{self.clause}] {self.reason}".rstrip()
        return f"Unsupported {self.reason}".rstrip()


def _orientable(partition: PartitionSpec, steps: StepPair, clause: str, seed_id: SeedId) -> Verdict:
    plan = GrowthPlan(seed=seed_id, seed_partition=seed_partition(seed_id), target=partition)
    return Verdict(Outcome.ORIENTABLE, partition, steps, clause=clause, plan=plan)


def _not_orientable(partition: PartitionSpec, steps: StepPair, clause: str, reason: str) -> Verdict:
    return Verdict(Outcome.NOT_ORIENTABLE, partition, steps, clause=clause, reason=reason)


def _decide_bipartite(p: PartitionSpec, s: StepPair) -> Verdict:
    n1, n2 = p.sizes
    if s.total == 3:
        if n2 >= 6:
            return _orientable(p, s, "A(a)(i)", D1)
        if n1 >= 10 and n2 == 5:
            return _orientable(p, s, "A(a)(ii)", D2)
        return _not_orientable(p, s, "A(a)", "needs n2 >= 6, or n1 >= 10 and n2 = 5")
    if n2 >= 4:
        return _orientable(p, s, "A(b)", D3)
    if s.i >= 2 and s.j >= 2 and n1 >= 6 and n2 == 3:
        return _orientable(p, s, "A(c)", D4)
    if n2 == 3:
        return _not_orientable(p, s, "A(c)", "n2 = 3 needs i >= 2, j >= 2 and n1 >= 6")
    return _not_orientable(p, s, "A(b)", "i+j >= 4 needs n2 >= 4 (or n2 = 3 under A(c))")


def _decide_tripartite(p: PartitionSpec, s: StepPair) -> Verdict:
    n1, n2, n3 = p.sizes
    if n3 >= 2:
        return _orientable(p, s, "B(a)", D5)
    if n2 >= 3:
        return _orientable(p, s, "B(b)", D6)
    if s.i >= 2 and s.j >= 2 and n1 >= 4 and n2 == 2:
        return _orientable(p, s, "B(c)", D7)
    if n2 == 2:
        return _not_orientable(p, s, "B(c)", "n2 = 2, n3 = 1 needs i >= 2, j >= 2 and n1 >= 4")
    return _not_orientable(p, s, "B(b)", "n3 = 1 needs n2 >= 3 (or n2 = 2 under B(c))")


def _decide_four_part(p: PartitionSpec, s: StepPair) -> Verdict:
    n1, n2 = p.sizes[0], p.sizes[1]
    if n1 >= 3 and n2 == 1:
        return _orientable(p, s, "C(a)(i)", D8)
    if n2 >= 2:
        return _orientable(p, s, "C(a)(ii)", D9)
    return _not_orientable(p, s, "C(a)", "k = 4 needs n1 >= 3, or n2 >= 2")


def decide(partition: PartitionSpec, steps: StepPair) -> Verdict:
    """Decide (i,j)-step competitive orientability of a complete multipartite graph."""

    canonical = steps.canonical()
    if canonical.i == 1 and canonical.j == 1:
        return Verdict(
            Outcome.UNSUPPORTED,
            partition,
            canonical,
            reason="(1,1)-step orientability is outside this characterization",
        )
    if partition.k == 2:
        return _decide_bipartite(partition, canonical)
    if partition.k == 3:
        return _decide_tripartite(partition, canonical)
    if partition.k == 4:
        return _decide_four_part(partition, canonical)
    return _orientable(partition, canonical, "C(b)", SeedId.tournament(partition.k))


@dataclass(frozen=True, slots=True)
class Construction:
    verdict: Verdict
    orientation: Optional[PartitionedDigraph] = None

    @property
    def ok(self) -> bool:
        return self.orientation is not None


def construct(
    partition: PartitionSpec, steps: StepPair, seeds_dir: Optional[Path] = None
) -> Construction:
    """Build a verified competitive orientation when ``decide`` says one exists."""

    verdict = decide(partition, steps)
    if not verdict.orientable or verdict.plan is None:
        return Construction(verdict)

    plan = verdict.plan
    grown = grow(seed(plan.seed, seeds_dir), partition)
    check = is_competitive(grown, steps)
    if not check:
        log.error(
            "construct: %s grown from %s fails at pair %s for steps (%s)",
            partition.label(),
            plan.seed,
            check.failing_pair,
            steps,
        )
        raise SelfVerificationError(
            f"orientation of {partition.label()} grown from {plan.seed} is not "
            f"({steps})-step competitive: pair {check.failing_pair} fails"
        )
    log.info(
        "construct: %s via %s [%s], %d vertices, %d arcs verified",
        partition.label(),
        plan.seed,
        verdict.clause,
        grown.digraph.n,
        grown.digraph.size,
    )
    return Construction(verdict, grown)


__all__ = [
    "SeedKind",
    "SeedId",
    "D1",
    "D2",
    "D3",
    "D4",
    "D5",
    "D6",
    "D7",
    "D8",
    "D9",
    "D10",
    "SEED_CATALOG",
    "seed_partition",
    "seed_path",
    "tournament_seed",
    "seed",
    "clone_vertex",
    "grow",
    "Outcome",
    "GrowthPlan",
    "Verdict",
    "decide",
    "Construction",
    "construct",
]
