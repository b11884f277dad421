"""Engine settings resolved from the environment."""

from __future__ import annotations

import os
from dataclasses import dataclass, replace
from typing import Optional

DEFAULT_CHARACTERISTIC = 32003
DEFAULT_TRUNCATION_ORDER = 6
DEFAULT_MASSEY_DEPTH = 3
DEFAULT_THREADS = 1
DEFAULT_MAX_STRAND_DIM = 6000
DEFAULT_LOG_LEVEL = "WARNING"
SCHEMA_VERSION = "1"


@dataclass(frozen=True)
class EngineSettings:
    truncation_order: int = DEFAULT_TRUNCATION_ORDER
    massey_depth: int = DEFAULT_MASSEY_DEPTH
    threads: int = DEFAULT_THREADS
    strand_bound: Optional[int] = None
    max_strand_dimension: int = DEFAULT_MAX_STRAND_DIM
    log_level: str = DEFAULT_LOG_LEVEL
    seed: int = 0

    def with_overrides(self, **changes: object) -> "EngineSettings":
        cleaned = {key: value for key, value in changes.items() if value is not None}
        return replace(self, **cleaned)


def _int_env(name: str, default: Optional[int]) -> Optional[int]:
    raw = os.getenv(name)
    if not raw:
        return default
    return int(raw)


def load_settings() -> EngineSettings:
    threads = _int_env("GOLOD_FORGE_THREADS", DEFAULT_THREADS) or DEFAULT_THREADS
    return EngineSettings(
        threads=max(1, threads),
        strand_bound=_int_env("GOLOD_FORGE_STRAND_BOUND", None),
        max_strand_dimension=_int_env("GOLOD_FORGE_MAX_STRAND_DIM", DEFAULT_MAX_STRAND_DIM)
        or DEFAULT_MAX_STRAND_DIM,
        log_level=os.getenv("GOLOD_FORGE_LOG_LEVEL") or DEFAULT_LOG_LEVEL,
    )
