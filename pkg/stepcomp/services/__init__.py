"""Competition, synthesis and oracle services."""

__all__ = []
