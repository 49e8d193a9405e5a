"""
rankbound Configuration Module

Logging setup, the numerical tolerance policy and worker configuration.
"""

import logging
import os
from dataclasses import dataclass, replace
from typing import Optional

logger = logging.getLogger(__name__)

THREADS_ENV = "RANKBOUND_THREADS"


def setup_logging(level: int = logging.INFO) -> None:
    """Setup basic logging for rankbound."""
    logging.basicConfig(
        level=level,
        format="%(levelname)s: %(message)s"
    )

    # Set specific logger levels
    logging.getLogger("rankbound").setLevel(level)


@dataclass(frozen=True)
class Tolerances:
    """Single tolerance policy shared by every numerical module"""
    rank_tol: float = 1e-8
    newton_tol: float = 1e-10
    dedupe_tol: float = 1e-6
    validation_tol: float = 1e-8
    condition_limit: float = 1e14

    _ENV = {
        "rank_tol": "RANKBOUND_RANK_TOL",
        "newton_tol": "RANKBOUND_NEWTON_TOL",
        "dedupe_tol": "RANKBOUND_DEDUPE_TOL",
        "validation_tol": "RANKBOUND_VALIDATION_TOL",
    }

    @classmethod
    def from_env(cls) -> "Tolerances":
        """Defaults overridden by RANKBOUND_* environment variables."""
        overrides = {}
        for field_name, env_name in cls._ENV.items():
            raw = os.environ.get(env_name)
            if raw is None:
                continue
            try:
                value = float(raw)
            except ValueError:
                logger.warning(f"Ignoring {env_name}={raw!r}: not a number")
                continue
            if value <= 0:
                logger.warning(f"Ignoring {env_name}={raw!r}: must be positive")
                continue
            overrides[field_name] = value
        return replace(cls(), **overrides)


DEFAULT_TOLERANCES = Tolerances()


def worker_count(override: Optional[int] = None) -> int:
    """Number of path-tracking workers (RANKBOUND_THREADS, default logical cores)."""
    default = os.cpu_count() or 1
    if override is not None:
        return max(1, override)

    raw = os.environ.get(THREADS_ENV)
    if raw is None:
        return default
    try:
        value = int(raw)
    except ValueError:
        logger.warning(f"Ignoring {THREADS_ENV}={raw!r}, using {default} workers")
        return default
    if value < 1:
        logger.warning(f"Ignoring {THREADS_ENV}={raw!r}, using {default} workers")
        return default
    return value
