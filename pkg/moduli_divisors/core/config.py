from __future__ import annotations

import os
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Mapping, Optional, Tuple

from .errors import ConfigError

_LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


@dataclass
class AppConfig:
    output_dir: Path = Path("./output")
    full_basis_cap: int = 12
    jobs: int = 1
    log_level: str = "WARNING"
    excluded_effective: Tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        if self.full_basis_cap < 0:
            raise ConfigError(f"full_basis_cap must be >= 0, got {self.full_basis_cap}")
        if self.jobs < 1:
            raise ConfigError(f"jobs must be >= 1, got {self.jobs}")
        level = self.log_level.upper()
        if level not in _LOG_LEVELS:
            raise ConfigError(f"unknown log level {self.log_level!r}")
        self.log_level = level

    @classmethod
    def from_env(cls, environ: Optional[Mapping[str, str]] = None) -> "AppConfig":
        """Build a config from MODULI_* environment variables over the defaults."""
        env = os.environ if environ is None else environ
        cfg = cls()
        if "MODULI_JOBS" in env:
            cfg = replace(cfg, jobs=_parse_int("MODULI_JOBS", env["MODULI_JOBS"]))
        if "MODULI_FULL_BASIS_CAP" in env:
            cap = _parse_int("MODULI_FULL_BASIS_CAP", env["MODULI_FULL_BASIS_CAP"])
            cfg = replace(cfg, full_basis_cap=cap)
        if "MODULI_LOG_LEVEL" in env:
            cfg = replace(cfg, log_level=env["MODULI_LOG_LEVEL"])
        return cfg


def _parse_int(name: str, raw: str) -> int:
    try:
        return int(raw.strip())
    except ValueError as exc:
        raise ConfigError(f"{name} must be an integer, got {raw!r}") from exc


DEFAULT_CONFIG = AppConfig()
