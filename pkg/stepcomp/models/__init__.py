"""Data models shared across stepcomp commands."""

__all__ = []
