"""Default knobs for exhaustive runs and logging, honoring environment overrides."""
from __future__ import annotations

import os
from pathlib import Path
from typing import Optional


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if not raw:
        return default
    try:
        return int(raw)
    except ValueError:
        return default


def _env_path(name: str) -> Optional[Path]:
    raw = os.getenv(name)
    if not raw or not raw.strip():
        return None
    return Path(raw.strip()).expanduser()


# 2^22 orientations is still desk scale with the outdegree pre-filter.
EDGE_CAP = max(1, _env_int("STEPCOMP_EDGE_CAP", 22))

JOBS = max(1, _env_int("STEPCOMP_JOBS", 1))

CHUNK_SIZE = max(64, _env_int("STEPCOMP_CHUNK", 4096))

LOG_LEVEL = (os.getenv("STEPCOMP_LOG_LEVEL") or "WARNING").strip().upper()

LOG_FILE = _env_path("STEPCOMP_LOG_FILE")

SEEDS_DIR = _env_path("STEPCOMP_SEEDS_DIR") or Path(__file__).resolve().parents[1] / "seeds"

__all__ = ["EDGE_CAP", "JOBS", "CHUNK_SIZE", "LOG_LEVEL", "LOG_FILE", "SEEDS_DIR"]
