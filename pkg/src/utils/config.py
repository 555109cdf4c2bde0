"""Configuration management for the rational function audit toolkit."""

import os
from dataclasses import dataclass, field
from typing import Tuple


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError as e:
        raise ValueError(f"{name} must be an integer, got {raw!r}") from e


def _env_float(name: str, default: float) -> float:
    raw = os.getenv(name)
    if raw is None or raw == "":
        return default
    try:
        return float(raw)
    except ValueError as e:
        raise ValueError(f"{name} must be a number, got {raw!r}") from e


@dataclass
class SearchConfig:
    """Grid search and local polish settings shared by every inf/sup."""

    density: int = 48
    polish_starts: int = 10
    polish_tol: float = 1e-10
    max_restarts: int = 4
    polish: bool = True

    def __post_init__(self):
        if self.density < 1:
            raise ValueError(f"density must be >= 1, got {self.density}")
        if self.polish_starts < 0:
            raise ValueError("polish_starts must be >= 0")


@dataclass
class ToleranceConfig:
    """Numerical tolerances surfaced in every report."""

    rank_tol: float = 1e-10
    trim_tol: float = 1e-12
    slack: float = 1e-9
    doublet_threshold: float = 1e-3
    disk_slack: float = 1e-12
    pole_tol: float = 1e-8

    def __post_init__(self):
        if self.doublet_threshold < 0:
            raise ValueError("doublet_threshold must be non-negative")


@dataclass
class AuditConfig:
    """Main audit configuration."""

    search: SearchConfig = field(default_factory=SearchConfig)
    tolerances: ToleranceConfig = field(default_factory=ToleranceConfig)
    ells: Tuple[int, ...] = (1,)
    workers: int = 4
    verify_density: int = 10
    log_level: str = "INFO"

    def __post_init__(self):
        if any(ell < 0 for ell in self.ells):
            raise ValueError(f"ell values must be >= 0, got {self.ells}")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")

    @classmethod
    def from_env(cls) -> "AuditConfig":
        """Create configuration from environment variables."""
        search = SearchConfig(density=_env_int("RFA_DENSITY", SearchConfig.density))
        tolerances = ToleranceConfig(
            doublet_threshold=_env_float(
                "RFA_DOUBLET_THRESHOLD", ToleranceConfig.doublet_threshold
            )
        )
        return cls(
            search=search,
            tolerances=tolerances,
            workers=_env_int("RFA_WORKERS", 4),
            log_level=os.getenv("RFA_LOG_LEVEL", "INFO").upper(),
        )

    def to_dict(self) -> dict:
        """Config echo for reports."""
        return {
            "density": self.search.density,
            "polish_starts": self.search.polish_starts,
            "polish_tol": self.search.polish_tol,
            "polish": self.search.polish,
            "rank_tol": self.tolerances.rank_tol,
            "trim_tol": self.tolerances.trim_tol,
            "slack": self.tolerances.slack,
            "doublet_threshold": self.tolerances.doublet_threshold,
            "ells": list(self.ells),
        }


def get_config() -> AuditConfig:
    """Get audit configuration from the environment."""
    return AuditConfig.from_env()
