"""
Sylvester-type matrices S^(l)(p, q).

S^(l) has m+n+l rows and m+n+2l columns. The first n+l columns are
down-shifted copies of the coefficients of p, the last m+l columns
down-shifted copies of the coefficients of q. For l = 0 it is the transpose
of the classical Sylvester matrix.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Dict, NamedTuple

import numpy as np
from scipy import linalg

from ..utils.errors import DegeneracyError, InputError
from ..utils.logger import setup_logger
from .polynomial import Polynomial, evaluate, shifted_block

logger = setup_logger(__name__)

DEFAULT_RANK_TOL = 1e-10
DEFAULT_SLACK = 1e-9


@dataclass(frozen=True, eq=False)
class SylvesterMatrix:
    """Dense S^(l)(p, q) with lazily computed singular values."""

    entries: np.ndarray
    m: int
    n: int
    ell: int
    rank_tol: float = DEFAULT_RANK_TOL

    @property
    def shape(self):
        return self.entries.shape

    @cached_property
    def singular_values(self) -> np.ndarray:
        """All m+n+l singular values, descending."""
        if self.entries.shape[0] == 0:
            return np.zeros(0)
        return linalg.svdvals(self.entries)

    @property
    def sigma_max(self) -> float:
        return float(self.singular_values[0])

    @property
    def sigma_min(self) -> float:
        return float(self.singular_values[-1])

    @property
    def full_row_rank(self) -> bool:
        return self.sigma_min > self.rank_tol * self.sigma_max

    def require_full_rank(self) -> None:
        if not self.full_row_rank:
            raise DegeneracyError(
                f"S^({self.ell}) is rank deficient, p/q is degenerate",
                sigma_min=self.sigma_min,
                sigma_max=self.sigma_max,
            )

    def summary(self) -> Dict[str, object]:
        """Report section; conditioning fields are inf when rank deficient."""
        full = self.full_row_rank
        return {
            "ell": self.ell,
            "sigma_max": self.sigma_max,
            "sigma_min": self.sigma_min,
            "cond2": self.sigma_max / self.sigma_min if full else float("inf"),
            "norm1": op_norm1(self),
            "pinv_norm2": 1.0 / self.sigma_min if full else float("inf"),
            "full_row_rank": full,
            "rank_tol": self.rank_tol,
        }


class NormSandwich(NamedTuple):
    """
    ||S^(0)^-1||_2 (lhs), ||S^(l)^+||_2 (mid) and (1 + sqrt(l)) lhs (rhs).

    `ok` is the upper comparison mid <= rhs. `lower_ok` records lhs <= mid,
    which does not hold in general and is informational only.
    """

    lhs: float
    mid: float
    rhs: float
    ok: bool
    lower_ok: bool


def build(
    p: Polynomial,
    q: Polynomial,
    m: int,
    n: int,
    ell: int,
    rank_tol: float = DEFAULT_RANK_TOL,
) -> SylvesterMatrix:
    """
    Build S^(ell)(p, q) with p, q zero-padded to the degree bounds m, n.

    Entry (i, j) is p_{i-j} for j < n+ell and q_{i-(j-n-ell)} otherwise.
    """
    if ell < 0:
        raise InputError(f"ell must be >= 0, got {ell}")
    if m + n + ell == 0:
        raise InputError("S^(0) of two constants is empty")

    entries = np.hstack([shifted_block(p, m, n + ell), shifted_block(q, n, m + ell)])
    return SylvesterMatrix(entries=entries, m=m, n=n, ell=ell, rank_tol=rank_tol)


def row_identity_residual(
    S: SylvesterMatrix,
    p: Polynomial,
    q: Polynomial,
    z: complex,
) -> float:
    """
    Max-norm of (1, z, ..., z^{m+n+l-1}) S minus the vector of
    z^j p(z) (j < n+l) followed by z^k q(z) (k < m+l).
    """
    rows, _ = S.entries.shape
    powers = np.power(complex(z), np.arange(rows))
    lhs = powers @ S.entries
    pz, qz = evaluate(p, z), evaluate(q, z)
    rhs = np.concatenate(
        [powers[: S.n + S.ell] * pz, powers[: S.m + S.ell] * qz]
    )
    return float(np.max(np.abs(lhs - rhs)))


def singular_values(S: SylvesterMatrix) -> np.ndarray:
    return S.singular_values


def op_norm2(S: SylvesterMatrix) -> float:
    return S.sigma_max


def op_norm1(S: SylvesterMatrix) -> float:
    """Largest column absolute sum, equal to max(||p||_1, ||q||_1) for every l."""
    if S.entries.size == 0:
        return 0.0
    return float(np.abs(S.entries).sum(axis=0).max())


def pinv_norm2(S: SylvesterMatrix) -> float:
    S.require_full_rank()
    return 1.0 / S.sigma_min


def cond2(S: SylvesterMatrix) -> float:
    S.require_full_rank()
    return S.sigma_max / S.sigma_min


def inv_norm1(S: SylvesterMatrix) -> float:
    """1-norm of the inverse of the square matrix S^(0)."""
    if S.ell != 0:
        raise InputError("the 1-norm of the inverse needs the square matrix S^(0)")
    S.require_full_rank()
    return float(np.linalg.norm(linalg.inv(S.entries), 1))


def norms_theorem_check(
    p: Polynomial,
    q: Polynomial,
    m: int,
    n: int,
    ell: int,
    slack: float = DEFAULT_SLACK,
    rank_tol: float = DEFAULT_RANK_TOL,
) -> NormSandwich:
    """
    Check ||S^(l)^+||_2 <= (1 + sqrt(l)) ||S^(0)^-1||_2.

    The reverse comparison ||S^(0)^-1||_2 <= ||S^(l)^+||_2 is reported as
    `lower_ok` but fails for many pairs, e.g. p = z, q = (z - 1)/2 at l = 1
    (2.2882 against 2.2381).

    Raises:
        DegeneracyError: If S^(0) or S^(l) is rank deficient
    """
    lhs = pinv_norm2(build(p, q, m, n, 0, rank_tol))
    mid = lhs if ell == 0 else pinv_norm2(build(p, q, m, n, ell, rank_tol))
    rhs = (1.0 + np.sqrt(ell)) * lhs
    ok = bool(mid <= rhs * (1.0 + slack))
    lower_ok = bool(lhs <= mid * (1.0 + slack))
    if not ok:
        logger.warning(f"pinv norm bound failed at ell={ell}: {mid} > {rhs}")
    return NormSandwich(lhs=lhs, mid=mid, rhs=float(rhs), ok=ok, lower_ok=lower_ok)
