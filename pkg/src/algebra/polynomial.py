"""
Complex polynomials in the monomial basis.

Coefficients are stored in ascending order (c_0 ... c_d). The nominal degree
d = len(coeffs) - 1 is carried separately from the effective degree, since
the Sylvester-type matrices and the coprimeness measures depend on the
nominal degree bounds (m, n) and not on how many leading coefficients happen
to vanish.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Optional, Sequence, Union

import numpy as np
from scipy import linalg

from ..utils.errors import (
    DegeneracyError,
    InputError,
    PoleNotSimpleError,
    ZeroPolynomialError,
)
from ..utils.logger import setup_logger

logger = setup_logger(__name__)

ArrayLike = Union[complex, float, Sequence[complex], np.ndarray]

DEFAULT_TRIM_TOL = 1e-12
DEFAULT_RANK_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class Polynomial:
    """Immutable complex polynomial with a nominal degree bound."""

    coeffs: np.ndarray

    def __post_init__(self):
        arr = np.array(self.coeffs, dtype=np.complex128, ndmin=1)
        if arr.ndim != 1 or arr.size == 0:
            raise InputError("polynomial needs a non-empty 1-D coefficient vector")
        if not np.all(np.isfinite(arr)):
            raise InputError("polynomial coefficients must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)

    @classmethod
    def monomial(cls, k: int, c: complex = 1.0) -> "Polynomial":
        coeffs = np.zeros(k + 1, dtype=np.complex128)
        coeffs[k] = c
        return cls(coeffs)

    @classmethod
    def zero(cls, degree: int = 0) -> "Polynomial":
        return cls(np.zeros(degree + 1, dtype=np.complex128))

    @property
    def nominal_degree(self) -> int:
        return self.coeffs.size - 1

    def effective_degree(self, tol: float = DEFAULT_TRIM_TOL) -> int:
        """
        Degree once trailing coefficients with |c_j| <= tol * max|c_k| are dropped.

        The zero polynomial has effective degree 0.
        """
        mags = np.abs(self.coeffs)
        peak = mags.max()
        if peak == 0.0:
            return 0
        significant = np.nonzero(mags > tol * peak)[0]
        return int(significant[-1])

    def is_zero(self, tol: float = 0.0) -> bool:
        return bool(np.all(np.abs(self.coeffs) <= tol))

    def padded(self, degree: int) -> "Polynomial":
        """Same polynomial with nominal degree raised to `degree`."""
        if degree < self.nominal_degree:
            trailing = self.coeffs[degree + 1 :]
            if np.any(trailing != 0):
                raise InputError(
                    f"cannot fit a degree-{self.nominal_degree} polynomial "
                    f"into degree bound {degree}"
                )
            return Polynomial(self.coeffs[: degree + 1])
        return Polynomial(np.pad(self.coeffs, (0, degree - self.nominal_degree)))

    def trimmed(self, tol: float = DEFAULT_TRIM_TOL) -> "Polynomial":
        return Polynomial(self.coeffs[: self.effective_degree(tol) + 1])

    def __call__(self, z: ArrayLike):
        return evaluate(self, z)

    def __neg__(self) -> "Polynomial":
        return Polynomial(-self.coeffs)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        return add(self, other)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return subtract(self, other)

    def __mul__(self, other: Union["Polynomial", complex, float]) -> "Polynomial":
        if isinstance(other, Polynomial):
            return multiply(self, other)
        return scale(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        return power(self, k)

    def __repr__(self) -> str:
        return f"Polynomial({self.coeffs.tolist()})"


class Roots(NamedTuple):
    """Finite roots plus the multiplicity of the root at infinity."""

    finite: np.ndarray
    at_infinity: int


class BezoutSolution(NamedTuple):
    u: Polynomial
    v: Polynomial
    residual: float


def _horner(coeffs: np.ndarray, z: np.ndarray) -> np.ndarray:
    acc = np.full_like(z, coeffs[-1])
    for c in coeffs[-2::-1]:
        acc = acc * z + c
    return acc


def evaluate(poly: Polynomial, z: ArrayLike):
    """
    Evaluate `poly` at z (scalar or array), highest power first.

    Points with |z| > 1 go through z^d * reverse(p)(1/z), which keeps the
    Horner recursion bounded.
    """
    scalar = np.ndim(z) == 0
    zs = np.atleast_1d(np.asarray(z, dtype=np.complex128))
    out = np.empty_like(zs)
    inside = np.abs(zs) <= 1.0
    out[inside] = _horner(poly.coeffs, zs[inside])
    outside = ~inside
    if np.any(outside):
        zo = zs[outside]
        out[outside] = zo**poly.nominal_degree * _horner(poly.coeffs[::-1], 1.0 / zo)
    return complex(out[0]) if scalar else out


def derivative(poly: Polynomial) -> Polynomial:
    """Formal derivative; a constant maps to the zero polynomial of degree 0."""
    if poly.nominal_degree == 0:
        return Polynomial.zero()
    j = np.arange(1, poly.coeffs.size)
    return Polynomial(poly.coeffs[1:] * j)


def reverse(poly: Polynomial, degree_bound: int) -> Polynomial:
    """z^degree_bound * p(1/z): the padded coefficient vector read backwards."""
    if degree_bound < poly.nominal_degree:
        raise InputError(
            f"degree bound {degree_bound} is below nominal degree {poly.nominal_degree}"
        )
    return Polynomial(poly.padded(degree_bound).coeffs[::-1])


def coeff_norm(poly: Polynomial, s: int) -> float:
    """1-norm or 2-norm of the coefficient vector."""
    if s == 1:
        return float(np.sum(np.abs(poly.coeffs)))
    if s == 2:
        return float(np.linalg.norm(poly.coeffs))
    raise InputError(f"coefficient norm index must be 1 or 2, got {s}")


def roots(poly: Polynomial, tol: float = DEFAULT_TRIM_TOL) -> Roots:
    """
    Roots via eigenvalues of the companion matrix of the trimmed polynomial.

    LAPACK balances the companion matrix before the QR iteration. Leading
    coefficients dropped by the trim become roots at infinity.

    Raises:
        ZeroPolynomialError: If every coefficient is zero
    """
    if poly.is_zero():
        raise ZeroPolynomialError("roots of the zero polynomial are undefined")

    eff = poly.effective_degree(tol)
    at_infinity = poly.nominal_degree - eff
    if eff == 0:
        return Roots(np.zeros(0, dtype=np.complex128), at_infinity)

    descending = poly.coeffs[: eff + 1][::-1]
    finite = linalg.eigvals(linalg.companion(descending))
    return Roots(np.sort_complex(finite.astype(np.complex128)), at_infinity)


def add(a: Polynomial, b: Polynomial) -> Polynomial:
    d = max(a.nominal_degree, b.nominal_degree)
    return Polynomial(a.padded(d).coeffs + b.padded(d).coeffs)


def subtract(a: Polynomial, b: Polynomial) -> Polynomial:
    d = max(a.nominal_degree, b.nominal_degree)
    return Polynomial(a.padded(d).coeffs - b.padded(d).coeffs)


def multiply(a: Polynomial, b: Polynomial) -> Polynomial:
    return Polynomial(np.convolve(a.coeffs, b.coeffs))


def scale(poly: Polynomial, c: complex) -> Polynomial:
    return Polynomial(poly.coeffs * c)


def power(poly: Polynomial, k: int) -> Polynomial:
    """poly**k by repeated squaring; k = 0 gives the constant 1."""
    if k < 0:
        raise InputError(f"polynomial power must be >= 0, got {k}")
    result = Polynomial([1.0])
    base = poly
    while k:
        if k & 1:
            result = multiply(result, base)
        k >>= 1
        if k:
            base = multiply(base, base)
    return result


def shifted_block(poly: Polynomial, degree: int, count: int) -> np.ndarray:
    """
    (degree + count) x count matrix whose column j holds the coefficients
    of z^j * poly, with poly padded to `degree`.
    """
    coeffs = poly.padded(degree).coeffs
    if count == 0:
        return np.zeros((degree, 0), dtype=np.complex128)
    return linalg.convolution_matrix(coeffs, count, mode="full").astype(np.complex128)


def diophantine_solve(
    p: Polynomial,
    q: Polynomial,
    m: int,
    n: int,
    target: Polynomial,
    rank_tol: float = DEFAULT_RANK_TOL,
) -> BezoutSolution:
    """
    Solve p*u + q*v = target with deg u <= n-1 and deg v <= m-1.

    The unknowns are stacked as w = (u, v) and the square system is the
    Sylvester-type matrix S^(0)(p, q) acting on w.

    Args:
        p: Polynomial of degree at most m
        q: Polynomial of degree at most n
        m: Degree bound of p
        n: Degree bound of q
        target: Right-hand side of degree at most m+n-1
        rank_tol: Relative singular value threshold for degeneracy

    Returns:
        BezoutSolution with u, v and the coefficient residual norm

    Raises:
        DegeneracyError: If S^(0)(p, q) is singular to working tolerance
    """
    size = m + n
    if size == 0:
        raise InputError("diophantine system is empty for m = n = 0")

    system = np.hstack([shifted_block(p, m, n), shifted_block(q, n, m)])
    rhs = target.padded(size - 1).coeffs

    singular = linalg.svdvals(system)
    if singular[-1] <= rank_tol * singular[0]:
        logger.warning(
            f"S^(0) is numerically singular: sigma_min={singular[-1]:.3e}, "
            f"sigma_max={singular[0]:.3e}"
        )
        raise DegeneracyError(
            "p/q is degenerate, the Bezout system has no stable solution",
            sigma_min=float(singular[-1]),
            sigma_max=float(singular[0]),
        )

    w = linalg.solve(system, rhs)
    u = Polynomial(w[:n]) if n > 0 else Polynomial.zero()
    v = Polynomial(w[n:]) if m > 0 else Polynomial.zero()
    residual = coeff_norm(p * u + q * v - target, 2)
    return BezoutSolution(u=u, v=v, residual=residual)


@dataclass(frozen=True, eq=False)
class PolynomialPair:
    """A numerator/denominator pair with the product-space norms."""

    p: Polynomial
    q: Polynomial

    @cached_property
    def norm1(self) -> float:
        return max(coeff_norm(self.p, 1), coeff_norm(self.q, 1))

    @cached_property
    def norm2(self) -> float:
        return float(np.hypot(coeff_norm(self.p, 2), coeff_norm(self.q, 2)))

    def norm(self, s: int) -> float:
        if s == 1:
            return self.norm1
        if s == 2:
            return self.norm2
        raise InputError(f"pair norm index must be 1 or 2, got {s}")

    def __sub__(self, other: "PolynomialPair") -> "PolynomialPair":
        return PolynomialPair(self.p - other.p, self.q - other.q)


@dataclass(frozen=True, eq=False)
class RationalFunction:
    """
    r = p/q in R_{m,n}, a map of the Riemann sphere.

    p and q are padded to their degree bounds m and n. A deficiency
    n - effective_degree(q) > 0 is that many poles at infinity, likewise
    for zeros.
    """

    p: Polynomial
    q: Polynomial
    m: int
    n: int

    def __post_init__(self):
        if self.m < 0 or self.n < 0:
            raise InputError(f"degree bounds must be >= 0, got m={self.m}, n={self.n}")
        if self.q.is_zero():
            raise ZeroPolynomialError("denominator q is identically zero")
        object.__setattr__(self, "p", self.p.padded(self.m))
        object.__setattr__(self, "q", self.q.padded(self.n))

    @classmethod
    def from_coeffs(
        cls,
        p: ArrayLike,
        q: ArrayLike,
        m: Optional[int] = None,
        n: Optional[int] = None,
    ) -> "RationalFunction":
        pp, qq = Polynomial(p), Polynomial(q)
        return cls(
            pp,
            qq,
            pp.nominal_degree if m is None else m,
            qq.nominal_degree if n is None else n,
        )

    @cached_property
    def pair(self) -> PolynomialPair:
        return PolynomialPair(self.p, self.q)

    def __call__(self, z: ArrayLike):
        """Value p(z)/q(z); poles map to complex infinity."""
        num = np.atleast_1d(evaluate(self.p, z))
        den = np.atleast_1d(evaluate(self.q, z))
        out = np.full(num.shape, complex(np.inf, 0.0))
        finite = den != 0
        out[finite] = num[finite] / den[finite]
        return complex(out[0]) if np.ndim(z) == 0 else out

    def reversed(self) -> "RationalFunction":
        """(z^m p(1/z)) / (z^n q(1/z)) with the separate degree bounds kept."""
        return RationalFunction(reverse(self.p, self.m), reverse(self.q, self.n), self.m, self.n)

    def inverted(self) -> "RationalFunction":
        """w -> r(1/w), both polynomials reversed at the common degree max(m, n)."""
        d = max(self.m, self.n)
        return RationalFunction(reverse(self.p, d), reverse(self.q, d), d, d)

    def reciprocal(self) -> "RationalFunction":
        return RationalFunction(self.q, self.p, self.n, self.m)

    def power(self, k: int) -> "RationalFunction":
        return RationalFunction(power(self.p, k), power(self.q, k), k * self.m, k * self.n)


def residue_at_simple_pole(
    r: RationalFunction,
    z0: complex,
    tol: float = 1e-8,
) -> complex:
    """
    Residue p(z0)/q'(z0) at a simple pole z0.

    Raises:
        InputError: If q(z0) is not small relative to the size of q near z0
        PoleNotSimpleError: If q'(z0) vanishes to tolerance
    """
    modulus = abs(z0)
    powers = modulus ** np.arange(r.q.coeffs.size)
    q_scale = float(np.sum(np.abs(r.q.coeffs) * powers))
    if abs(evaluate(r.q, z0)) > tol * q_scale:
        raise InputError(f"z0={z0} is not a pole of r")

    dq = derivative(r.q)
    dq_scale = float(np.sum(np.abs(dq.coeffs) * powers[: dq.coeffs.size]))
    dq_value = evaluate(dq, z0)
    if abs(dq_value) <= tol * max(dq_scale, np.finfo(float).tiny):
        raise PoleNotSimpleError(f"q'(z0) vanishes at z0={z0}, pole is not simple")
    return evaluate(r.p, z0) / dq_value
