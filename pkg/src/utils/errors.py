"""Exception hierarchy for the rational function audit toolkit."""

from typing import Optional


class AuditError(Exception):
    """Base class for every error raised by the toolkit."""


class InputError(AuditError, ValueError):
    """Malformed input: bad JSON, bad arguments, out-of-range parameters."""


class ZeroPolynomialError(InputError):
    """A polynomial that must be nonzero is identically zero."""


class RegionError(InputError):
    """A region cannot be parsed, sampled or used as requested."""


class DegeneracyError(AuditError):
    """A Sylvester-type matrix is rank deficient to working tolerance."""

    def __init__(
        self,
        message: str,
        sigma_min: float,
        sigma_max: Optional[float] = None,
    ):
        super().__init__(f"{message} (sigma_min={sigma_min:.3e})")
        self.sigma_min = sigma_min
        self.sigma_max = sigma_max


class IndeterminateError(AuditError):
    """p and q vanish simultaneously at a point, so p/q has no value there."""

    def __init__(self, point: complex):
        super().__init__(f"numerator and denominator both vanish at z={point}")
        self.point = point


class PoleNotSimpleError(AuditError):
    """The derivative of the denominator vanishes at the requested pole."""


class HypothesisError(AuditError):
    """An inequality was requested outside the hypotheses under which it holds."""
