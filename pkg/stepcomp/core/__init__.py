"""Core graph types and utilities."""

__all__ = []
