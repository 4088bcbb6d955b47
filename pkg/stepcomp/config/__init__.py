"""Configuration helpers for stepcomp defaults."""

from .defaults import CHUNK_SIZE, EDGE_CAP, JOBS, LOG_FILE, LOG_LEVEL, SEEDS_DIR  # noqa: F401

__all__ = ["EDGE_CAP", "JOBS", "CHUNK_SIZE", "LOG_LEVEL", "LOG_FILE", "SEEDS_DIR"]
