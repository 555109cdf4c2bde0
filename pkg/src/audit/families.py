"""
The ill-conditioned family p_m = z^m, q_m = ((z - 1)/2)^m.

Every r_m = p_m/q_m is a clean rational function without doublets, but
epsilon_1 of (p_m, q_m) is 3^-m and the Bezout cofactors grow like 8^m.
Perturbing along the cofactors produces r~_m whose chordal distance to r_m
is large while the coefficient distance is tiny, which shows that the ratio
chi_D / d cannot be bounded independently of the conditioning.
"""

from dataclasses import dataclass
from functools import cached_property
from math import comb
from typing import Iterable, Optional

import numpy as np
import pandas as pd

from ..algebra.polynomial import (
    Polynomial,
    PolynomialPair,
    RationalFunction,
    coeff_norm,
    diophantine_solve,
    power,
)
from ..algebra.sylvester import build, inv_norm1
from ..indicators.coprimeness import epsilon_of_power
from ..indicators.metrics import chi_supremum, coeff_distance
from ..indicators.region import SpherePoint, UnitDisk
from ..indicators.spherical import rho_sup
from ..utils.config import SearchConfig
from ..utils.errors import InputError
from ..utils.logger import setup_logger

logger = setup_logger(__name__)

MAX_FAMILY_DEGREE = 12
MAX_GROWTH_DEGREE = 10
FAMILY_RANK_TOL = 1e-14

BASE_P = Polynomial([0.0, 1.0])
BASE_Q = Polynomial([-0.5, 0.5])
EPSILON_POINT = 1.0 / 3.0


def cofactor_norm_asymptotic(m: int) -> float:
    """2^(3m-1) / sqrt(pi m)."""
    return 2.0 ** (3 * m - 1) / np.sqrt(np.pi * m)


def cofactor_norm_exact(m: int) -> float:
    """||u_m||_1 = 2^m binom(2m-1, m-1)."""
    return float(2**m * comb(2 * m - 1, m - 1))


@dataclass(frozen=True, eq=False)
class ExampleFamily:
    """
    Member m of the family with its cofactors and the perturbation along them.

    q_m u_m - p_m v_m = 1, so p_m q~ - p~ q_m = eta identically.
    """

    m: int
    p: Polynomial
    q: Polynomial
    u: Polynomial
    v: Polynomial
    eta: complex
    epsilon: float
    bezout_residual: float

    @cached_property
    def p_tilde(self) -> Polynomial:
        return (self.p - self.u * self.eta).padded(self.m)

    @cached_property
    def q_tilde(self) -> Polynomial:
        return (self.q - self.v * self.eta).padded(self.m)

    @property
    def r(self) -> RationalFunction:
        return RationalFunction(self.p, self.q, self.m, self.m)

    @property
    def r_tilde(self) -> RationalFunction:
        return RationalFunction(self.p_tilde, self.q_tilde, self.m, self.m)

    @property
    def u_norm1(self) -> float:
        return coeff_norm(self.u, 1)

    @property
    def v_norm1(self) -> float:
        return coeff_norm(self.v, 1)

    @property
    def delta_1(self) -> float:
        return PolynomialPair(self.u * self.eta, self.v * self.eta).norm1

    @cached_property
    def identity_residual(self) -> float:
        """Max coefficient error of p q~ - p~ q = eta, relative to the product sizes."""
        cross = self.p * self.q_tilde - self.p_tilde * self.q
        error = cross - Polynomial([self.eta])
        scale = coeff_norm(self.p, 1) * coeff_norm(self.q_tilde, 1) + coeff_norm(
            self.p_tilde, 1
        ) * coeff_norm(self.q, 1)
        return float(np.max(np.abs(error.coeffs)) / scale)

    @cached_property
    def perturbed_norm1(self) -> float:
        return PolynomialPair(self.p_tilde, self.q_tilde).norm1

    @cached_property
    def s0_inv_norm1(self) -> float:
        return inv_norm1(build(self.p, self.q, self.m, self.m, 0, FAMILY_RANK_TOL))

    @property
    def u_asymptotic_ratio(self) -> float:
        return self.u_norm1 / cofactor_norm_asymptotic(self.m)

    @property
    def s0_ratio(self) -> float:
        return self.s0_inv_norm1 / self.u_norm1

    @property
    def norm_ok(self) -> bool:
        return 0.5 <= self.perturbed_norm1 <= 1.5

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "epsilon": self.epsilon,
            "eta": self.eta,
            "u_norm1": self.u_norm1,
            "v_norm1": self.v_norm1,
            "u_norm1_exact": cofactor_norm_exact(self.m),
            "u_asymptotic_ratio": self.u_asymptotic_ratio,
            "s0_inv_norm1": self.s0_inv_norm1,
            "s0_ratio": self.s0_ratio,
            "delta_1": self.delta_1,
            "perturbed_norm1": self.perturbed_norm1,
            "norm_ok": self.norm_ok,
            "bezout_residual": self.bezout_residual,
            "identity_residual": self.identity_residual,
            "u": self.u.coeffs,
            "v": self.v.coeffs,
        }


def example_family(m: int, config: Optional[SearchConfig] = None) -> ExampleFamily:
    """
    Build member m of the family.

    eta is real positive with 2 |eta| ||u_m||_1 = epsilon_1^D(p_m, q_m) = 3^-m.

    Raises:
        InputError: If m is outside [1, 12]
    """
    if not 1 <= m <= MAX_FAMILY_DEGREE:
        raise InputError(f"family degree must lie in [1, {MAX_FAMILY_DEGREE}], got {m}")

    p, q = power(BASE_P, m), power(BASE_Q, m)
    solution = diophantine_solve(q, -p, m, m, Polynomial([1.0]), rank_tol=FAMILY_RANK_TOL)
    epsilon = epsilon_of_power(BASE_P, BASE_Q, 1, 1, m, UnitDisk(), config).value
    u_norm = coeff_norm(solution.u, 1)
    eta = complex(epsilon / (2.0 * u_norm))

    family = ExampleFamily(
        m=m,
        p=p,
        q=q,
        u=solution.u,
        v=solution.v,
        eta=eta,
        epsilon=epsilon,
        bezout_residual=solution.residual,
    )
    if family.identity_residual > 1e-10:
        logger.warning(
            f"family m={m}: identity residual {family.identity_residual:.3e} above 1e-10"
        )
    if not family.norm_ok:
        logger.warning(f"family m={m}: perturbed norm {family.perturbed_norm1} outside [1/2, 3/2]")
    return family


def growth_row(family: ExampleFamily, config: Optional[SearchConfig] = None) -> dict:
    """Distances between r_m and r~_m with the windows they are expected in."""
    config = config or SearchConfig()
    disk = UnitDisk()
    r, rt = family.r, family.r_tilde
    eta, eps = abs(family.eta), family.epsilon

    chi = chi_supremum(r, rt, disk, config, seeds=[SpherePoint(EPSILON_POINT)])
    d = coeff_distance(r, rt)
    delta = family.delta_1
    window_lo = eta / (3.0 * eps**2)
    window_hi = 2.0 * eta / eps**2
    chi_over_d = chi.value / d if d > 0 else float("inf")
    d_bound = 1.0 / (12.0 * family.u_norm1 * eps**2)

    base = RationalFunction(BASE_P, BASE_Q, 1, 1)
    rho_rm = rho_sup(r, disk, config).value
    rho_bound = 2.0 * family.m * rho_sup(base, disk, config).value

    return {
        "m": family.m,
        "epsilon": eps,
        "eta": eta,
        "u_norm1": family.u_norm1,
        "delta_1": delta,
        "chi_D": chi.value,
        "chi_over_delta": chi.value / delta,
        "window_lo": window_lo / delta,
        "window_hi": window_hi / delta,
        "in_window": window_lo <= chi.value <= window_hi,
        "d": d,
        "chi_over_d": chi_over_d,
        "chi_over_d_bound": d_bound,
        "bound_ok": chi_over_d >= d_bound,
        "growth_ratio": chi_over_d / eps,
        "rho_D": rho_rm,
        "rho_power_bound": rho_bound,
        "rho_ok": rho_rm <= rho_bound * (1.0 + 1e-9),
        "identity_residual": family.identity_residual,
    }


def growth_study(
    m_range: Iterable[int], config: Optional[SearchConfig] = None
) -> pd.DataFrame:
    """
    One row per m: chi_D and d for r_m and r~_m, and (chi_D/d)/epsilon.

    Raises:
        InputError: If m_range leaves [1, 10]
    """
    degrees = list(m_range)
    outside = [m for m in degrees if not 1 <= m <= MAX_GROWTH_DEGREE]
    if outside:
        raise InputError(
            f"growth study degrees must lie in [1, {MAX_GROWTH_DEGREE}], got {outside}"
        )

    rows = []
    for m in degrees:
        logger.info(f"Growth study: m={m}")
        rows.append(growth_row(example_family(m, config), config))
    table = pd.DataFrame(rows)
    logger.info(f"Growth study completed for {len(rows)} degree(s)")
    return table
