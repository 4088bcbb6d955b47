from __future__ import annotations

import os
import sys
from pathlib import Path

import pytest

REPO_ROOT = Path(__file__).resolve().parents[1]
if str(REPO_ROOT) not in sys.path:
    sys.path.insert(0, str(REPO_ROOT))

from stepcomp.core.digraph import Digraph  # noqa: E402
from stepcomp.services import synthesis  # noqa: E402

SEEDS_DIR = REPO_ROOT / "stepcomp" / "seeds"


def exhaustive_enabled() -> bool:
    return os.getenv("STEPCOMP_EXHAUSTIVE", "").strip() == "1"


def audit_enabled() -> bool:
    return os.getenv("STEPCOMP_AUDIT", "").strip() == "1"


@pytest.fixture
def seeds_dir() -> Path:
    return SEEDS_DIR


@pytest.fixture
def d10():
    return synthesis.seed(synthesis.D10, SEEDS_DIR)


@pytest.fixture
def three_cycle() -> Digraph:
    return Digraph(3, frozenset({(0, 1), (1, 2), (2, 0)}))
