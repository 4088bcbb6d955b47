from __future__ import annotations

from typing import Optional


class StepcompError(RuntimeError):
    """Base error raised by stepcomp."""


class DigraphError(StepcompError, ValueError):
    """Raised when a digraph or graph would break its structural invariants."""


class ArcFormatError(DigraphError):
    """Raised when arc-list text cannot be parsed."""

    def __init__(self, message: str, line_no: Optional[int] = None) -> None:
        self.line_no = line_no
        self.reason = message
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)


class ContractViolation(StepcompError, ValueError):
    """Raised when an operation is called outside its precondition."""


class EdgeCapExceeded(StepcompError):
    """Raised when an exhaustive run would enumerate too many orientations."""

    def __init__(self, edges: int, cap: int) -> None:
        self.edges = edges
        self.cap = cap
        super().__init__(
            f"graph has {edges} edges but the edge cap is {cap}; "
            "raise it with --edge-cap or STEPCOMP_EDGE_CAP"
        )


class SelfVerificationError(StepcompError):
    """Raised when a constructed orientation fails its own competitiveness check."""


__all__ = [
    "StepcompError",
    "DigraphError",
    "ArcFormatError",
    "ContractViolation",
    "EdgeCapExceeded",
    "SelfVerificationError",
]
