"""Utility modules for the rational function audit toolkit."""

from .config import AuditConfig, SearchConfig, ToleranceConfig, get_config
from .errors import (
    AuditError,
    DegeneracyError,
    HypothesisError,
    IndeterminateError,
    InputError,
    PoleNotSimpleError,
    RegionError,
    ZeroPolynomialError,
)
from .logger import setup_logger

__all__ = [
    "AuditConfig",
    "AuditError",
    "DegeneracyError",
    "HypothesisError",
    "IndeterminateError",
    "InputError",
    "PoleNotSimpleError",
    "RegionError",
    "SearchConfig",
    "ToleranceConfig",
    "ZeroPolynomialError",
    "get_config",
    "setup_logger",
]
