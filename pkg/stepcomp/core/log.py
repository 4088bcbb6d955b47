"""Lazily configured loggers for the ``stepcomp`` family."""
from __future__ import annotations

import logging
import sys

from stepcomp.config import defaults

_ROOT = "stepcomp"
_CONFIGURED = False


def _configure_root() -> None:
    global _CONFIGURED
    if _CONFIGURED:
        return

    root = logging.getLogger(_ROOT)
    if not root.handlers:
        level = logging.getLevelName(defaults.LOG_LEVEL)
        root.setLevel(level if isinstance(level, int) else logging.WARNING)
        formatter = logging.Formatter("%(asctime)s [%(levelname)s] %(name)s: %(message)s")

        handler: logging.Handler
        try:
            if defaults.LOG_FILE is None:
                raise OSError("no log file configured")
            defaults.LOG_FILE.parent.mkdir(parents=True, exist_ok=True)
            handler = logging.FileHandler(defaults.LOG_FILE, encoding="utf-8")
        except OSError:
            handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(formatter)
        root.addHandler(handler)

    _CONFIGURED = True


def get_logger(name: str) -> logging.Logger:
    """Return ``stepcomp.<name>``, attaching the shared handler on first use."""

    _configure_root()
    if name == _ROOT or name.startswith(_ROOT + "."):
        return logging.getLogger(name)
    return logging.getLogger(f"{_ROOT}.{name}")


__all__ = ["get_logger"]
