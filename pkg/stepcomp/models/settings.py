"""Validated invocation settings shared by every ``stepcomp`` subcommand."""
from __future__ import annotations

from pathlib import Path
from typing import List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from stepcomp.config import defaults
from stepcomp.core.digraph import PartitionSpec
from stepcomp.services.competition import StepPair

Subcommand = Literal[
    "decide",
    "construct",
    "verify",
    "competition-graph",
    "brute-force",
    "necessary",
    "seeds",
    "audit",
    "random",
]
OutputFormat = Literal["text", "csv", "dot"]

_NEEDS_PARTITION = {"decide", "construct"}
_NEEDS_INPUT = {"verify", "competition-graph"}
_EITHER = {"brute-force", "necessary"}
_NEEDS_STEPS = _NEEDS_PARTITION | _NEEDS_INPUT | _EITHER


def _split_ints(value: str, what: str) -> List[int]:
    parts = [part.strip() for part in value.split(",")]
    try:
        return [int(part) for part in parts if part]
    except ValueError:
        raise ValueError(f"{what} must be comma-separated integers, got {value!r}") from None


class CliConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    subcommand: Subcommand
    input_path: Optional[Path] = None
    partition: Optional[Tuple[int, ...]] = None
    steps: Optional[Tuple[int, int]] = None
    output_format: OutputFormat = "text"
    edge_cap: int = Field(default_factory=lambda: defaults.EDGE_CAP)
    jobs: int = Field(default_factory=lambda: defaults.JOBS)
    rng_seed: Optional[int] = None
    vertices: Optional[int] = None
    arc_probability: float = 0.5

    @field_validator("partition", mode="before")
    @classmethod
    def _parse_partition(cls, value):
        if isinstance(value, str):
            value = _split_ints(value, "partition")
        return value

    @field_validator("partition")
    @classmethod
    def _check_partition(cls, value: Optional[Tuple[int, ...]]):
        if value is None:
            return value
        if len(value) < 2:
            raise ValueError("partition needs at least two partite sets")
        if any(size < 1 for size in value):
            raise ValueError("partite-set sizes must be positive")
        return value

    @field_validator("steps", mode="before")
    @classmethod
    def _parse_steps(cls, value):
        if isinstance(value, str):
            value = _split_ints(value, "steps")
            if len(value) != 2:
                raise ValueError("steps must look like 'i,j'")
        return value

    @field_validator("steps")
    @classmethod
    def _check_steps(cls, value: Optional[Tuple[int, int]]):
        if value is not None and min(value) < 1:
            raise ValueError("step counts i and j must be at least 1")
        return value

    @field_validator("arc_probability")
    @classmethod
    def _check_probability(cls, value: float):
        if not 0.0 <= value <= 1.0:
            raise ValueError("arc probability must lie in [0, 1]")
        return value

    @field_validator("edge_cap", "jobs")
    @classmethod
    def _positive(cls, value: int, info):
        if value < 1:
            raise ValueError(f"{info.field_name} must be at least 1")
        return value

    @model_validator(mode="after")
    def _check_sources(self) -> "CliConfig":
        has_partition = self.partition is not None
        has_input = self.input_path is not None
        if self.subcommand in _NEEDS_PARTITION and not has_partition:
            raise ValueError(f"{self.subcommand} needs --partition")
        if self.subcommand in _NEEDS_INPUT and not has_input:
            raise ValueError(f"{self.subcommand} needs an input file")
        if self.subcommand in _EITHER and has_partition == has_input:
            raise ValueError(f"{self.subcommand} needs exactly one of --partition or an input file")
        if self.subcommand == "random" and (self.vertices is None or self.vertices < 0):
            raise ValueError("random needs a non-negative --vertices")
        if self.subcommand in _NEEDS_STEPS and self.steps is None:
            raise ValueError(f"{self.subcommand} needs --steps")
        return self

    @property
    def partition_spec(self) -> Optional[PartitionSpec]:
        return PartitionSpec(self.partition) if self.partition is not None else None

    @property
    def step_pair(self) -> Optional[StepPair]:
        if self.steps is None:
            return None
        return StepPair(*self.steps).canonical()

    def notices(self) -> List[str]:
        """Human-readable notes on inputs that were normalised."""

        notes: List[str] = []
        if self.partition is not None and list(self.partition) != sorted(self.partition, reverse=True):
            spec = PartitionSpec(self.partition)
            notes.append(f"partition sorted to {spec} (sizes must be non-increasing)")
        if self.steps is not None and self.steps[0] > self.steps[1]:
            notes.append(f"steps swapped to {self.steps[1]},{self.steps[0]} (competition is symmetric in i and j)")
        return notes


__all__ = ["CliConfig", "Subcommand", "OutputFormat"]
