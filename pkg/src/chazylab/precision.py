"""Numeric backend selection for the special-function layer.

Two modes share one interface: ``binary64`` (the fast authored
implementations) and ``extended`` (an mpmath-backed arbitrary-precision
oracle used for cross-checks).  The mode is process-wide; it is read from
the CHAZYLAB_PRECISION environment variable at import time and can be
changed with :func:`set_precision`.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

BINARY64 = "binary64"
EXTENDED = "extended"


@dataclass
class PrecisionConfig:
    mode: str = BINARY64
    digits: int = 30


def _from_env() -> PrecisionConfig:
    mode = os.environ.get("CHAZYLAB_PRECISION", BINARY64).strip().lower()
    if mode not in (BINARY64, EXTENDED):
        mode = BINARY64
    digits = int(os.environ.get("CHAZYLAB_PRECISION_DIGITS", "30"))
    return PrecisionConfig(mode=mode, digits=digits)


_config = _from_env()


def get_precision() -> PrecisionConfig:
    return _config


def set_precision(mode: str, digits: int | None = None) -> PrecisionConfig:
    """Switch the special-function backend; returns the new config."""
    if mode not in (BINARY64, EXTENDED):
        raise ValueError(f"unknown precision mode {mode!r}")
    global _config
    _config = PrecisionConfig(mode=mode, digits=digits or _config.digits)
    return _config


def extended_active() -> bool:
    return _config.mode == EXTENDED
