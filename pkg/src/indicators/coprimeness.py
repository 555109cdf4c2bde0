"""
Numerical coprimeness measures epsilon_1^K and epsilon_2^K.

epsilon_s^K(p, q) is the infimum over z in K of a normalized joint size of
|p(z)| and |q(z)|. It vanishes exactly when p and q share a root in K, and
it is bounded below through the Sylvester-type matrices.
"""

from dataclasses import dataclass
from typing import Iterable, List, Optional, Union

import numpy as np

from ..algebra.polynomial import Polynomial, PolynomialPair, evaluate, reverse, roots
from ..algebra.sylvester import build, cond2, inv_norm1, pinv_norm2
from ..utils.config import SearchConfig, ToleranceConfig
from ..utils.errors import DegeneracyError, InputError
from ..utils.logger import setup_logger
from .region import Region, SpherePoint
from .search import PlaneObjective, discretize, extremize

logger = setup_logger(__name__)


def _check_s(s: int) -> None:
    if s not in (1, 2):
        raise InputError(f"coprimeness index s must be 1 or 2, got {s}")


def _pointwise(p: Polynomial, q: Polynomial, m: int, n: int, s: int):
    """Vectorized objective for |z| <= 1; exact for every finite z."""

    def objective(z: np.ndarray) -> np.ndarray:
        modulus = np.abs(z)
        pz = np.abs(evaluate(p, z))
        qz = np.abs(evaluate(q, z))
        if s == 1:
            return np.maximum(
                pz / np.maximum(1.0, modulus**m), qz / np.maximum(1.0, modulus**n)
            )
        squares = modulus[:, None] ** (2 * np.arange(max(m, n) + 1))[None, :]
        wp = squares[:, : m + 1].sum(axis=1)
        wq = squares[:, : n + 1].sum(axis=1)
        return np.sqrt(pz**2 / wp + qz**2 / wq)

    return objective


def epsilon_objective(
    p: Polynomial, q: Polynomial, m: int, n: int, s: int
) -> PlaneObjective:
    """
    The epsilon integrand on the extended plane.

    At |z| > 1 it equals the integrand of the reversed pair at 1/z, with
    separate degree bounds, which avoids overflow in the weights.
    """
    _check_s(s)
    return PlaneObjective(
        direct=_pointwise(p.padded(m), q.padded(n), m, n, s),
        inverted=_pointwise(reverse(p, m), reverse(q, n), m, n, s),
    )


def epsilon_at(
    p: Polynomial,
    q: Polynomial,
    m: int,
    n: int,
    s: int,
    z: Union[complex, np.ndarray, SpherePoint, None],
):
    """Pointwise integrand; None or an infinite SpherePoint means z = infinity."""
    objective = epsilon_objective(p, q, m, n, s)
    if z is None or isinstance(z, SpherePoint):
        return objective.at_point(SpherePoint.of(z))
    if np.ndim(z) == 0:
        return float(objective.at(np.array([z]))[0])
    return objective.at(np.asarray(z))


@dataclass(frozen=True)
class EpsilonResult:
    value: float
    argmin: SpherePoint
    s: int
    region: str
    method: str
    density: int
    resolution: float
    candidates: int

    def to_dict(self) -> dict:
        return {
            "s": self.s,
            "region": self.region,
            "epsilon": self.value,
            "argmin": self.argmin.to_json(),
            "method": self.method,
            "grid_density": self.density,
            "grid_resolution": self.resolution,
            "candidates": self.candidates,
        }


def root_seeds(*polys: Polynomial, tol: float = 1e-12) -> List[SpherePoint]:
    """Finite roots of every nonzero polynomial, plus infinity when any has one there."""
    seeds: List[SpherePoint] = []
    at_infinity = False
    for poly in polys:
        if poly.is_zero():
            continue
        found = roots(poly, tol)
        seeds.extend(SpherePoint(complex(z)) for z in found.finite)
        at_infinity = at_infinity or found.at_infinity > 0
    if at_infinity:
        seeds.append(SpherePoint.infinity())
    return seeds


def epsilon_region(
    p: Polynomial,
    q: Polynomial,
    m: int,
    n: int,
    s: int,
    region: Region,
    config: Optional[SearchConfig] = None,
    seeds: Iterable = (),
) -> EpsilonResult:
    """
    epsilon_s^K(p, q) as the minimum over region grid, roots and polish points.

    The value is attained at the reported argmin, so it is an upper bound
    on the true infimum and the exact minimum over the finite candidate set.
    """
    config = config or SearchConfig()
    objective = epsilon_objective(p, q, m, n, s)
    candidates = root_seeds(p, q) + [SpherePoint.of(z) for z in seeds]
    result = extremize(objective, region, config, maximize=False, seeds=candidates)
    logger.debug(
        f"epsilon_{s} over {region.describe()} = {result.value:.6e} "
        f"at {result.location} ({result.candidates} candidates)"
    )
    return EpsilonResult(
        value=result.value,
        argmin=result.location,
        s=s,
        region=region.describe(),
        method=result.method,
        density=result.density,
        resolution=result.resolution,
        candidates=result.candidates,
    )


def epsilon_of_power(
    p: Polynomial,
    q: Polynomial,
    m: int,
    n: int,
    k: int,
    region: Region,
    config: Optional[SearchConfig] = None,
) -> EpsilonResult:
    """
    epsilon_1^K(p^k, q^k) = epsilon_1^K(p, q)^k.

    The s = 1 integrand of (p^k, q^k) is the k-th power of the integrand of
    (p, q) pointwise, so the minimizer is shared. The s = 2 weights do not
    factor this way.
    """
    if k < 1:
        raise InputError(f"power must be >= 1, got {k}")
    base = epsilon_region(p, q, m, n, 1, region, config)
    return EpsilonResult(
        value=base.value**k,
        argmin=base.argmin,
        s=1,
        region=base.region,
        method=base.method,
        density=base.density,
        resolution=base.resolution,
        candidates=base.candidates,
    )


def epsilon_lower_bound(
    p: Polynomial,
    q: Polynomial,
    m: int,
    n: int,
    ell: int,
    s: int,
    rank_tol: float = 1e-10,
) -> float:
    """
    Sylvester lower bound on epsilon_s (and so on epsilon_s^K for every K).

    s = 2: 1 / (sqrt(m+n+1) ||S^(ell)^+||_2). s = 1: 1 / ||S^(0)^-1||_1,
    independent of ell.

    Raises:
        DegeneracyError: If the Sylvester-type matrix is rank deficient
    """
    _check_s(s)
    if s == 1:
        return 1.0 / inv_norm1(build(p, q, m, n, 0, rank_tol))
    return 1.0 / (np.sqrt(m + n + 1) * pinv_norm2(build(p, q, m, n, ell, rank_tol)))


@dataclass(frozen=True)
class SensitivityVerdict:
    """Outcome of both perturbation statements; hypotheses may be unmet."""

    s: int
    delta_s: float
    radius_eps: float
    eps_hypothesis: bool
    eps: float
    eps_perturbed: float
    eps_ratio: float
    eps_ok: bool
    delta_2: float
    radius_cond: float
    cond_hypothesis: bool
    cond: float
    cond_perturbed: float
    cond_ratio: float
    cond_ok: bool

    @property
    def ok(self) -> bool:
        return (not self.eps_hypothesis or self.eps_ok) and (
            not self.cond_hypothesis or self.cond_ok
        )

    def to_dict(self) -> dict:
        return {
            "s": self.s,
            "epsilon": {
                "delta": self.delta_s,
                "radius": self.radius_eps,
                "hypothesis": self.eps_hypothesis,
                "value": self.eps,
                "perturbed": self.eps_perturbed,
                "ratio": self.eps_ratio,
                "window": [0.5, 1.5],
                "ok": self.eps_ok,
            },
            "cond2": {
                "delta": self.delta_2,
                "radius": self.radius_cond,
                "hypothesis": self.cond_hypothesis,
                "value": self.cond,
                "perturbed": self.cond_perturbed,
                "ratio": self.cond_ratio,
                "window": [0.5, 2.0],
                "ok": self.cond_ok,
            },
            "ok": self.ok,
        }


def _ratio(numerator: float, denominator: float) -> float:
    if denominator > 0:
        return numerator / denominator
    return 1.0 if numerator == 0 else float("inf")


def sensitivity_certificate(
    p: Polynomial,
    q: Polynomial,
    p_tilde: Polynomial,
    q_tilde: Polynomial,
    m: int,
    n: int,
    s: int,
    region: Region,
    config: Optional[SearchConfig] = None,
    tolerances: Optional[ToleranceConfig] = None,
) -> SensitivityVerdict:
    """
    Stability of epsilon_s^K and of cond2(S^(1)) under a perturbation.

    If ||(p - p~, q - q~)||_s <= epsilon_s^K(p, q) / 2 the ratio
    epsilon_s^K(p~, q~) / epsilon_s^K(p, q) lies in [1/2, 3/2]. If
    ||(p - p~, q - q~)||_2 <= 1 / (3 sqrt(m+n+1) ||S^(1)(p, q)^+||_2) the
    ratio of the condition numbers of S^(1) lies in [1/2, 2]. Both epsilon
    values are taken over one shared finite set K-hat.
    """
    _check_s(s)
    config = config or SearchConfig()
    tolerances = tolerances or ToleranceConfig()
    slack = tolerances.slack
    p, q = p.padded(m), q.padded(n)
    p_tilde, q_tilde = p_tilde.padded(m), q_tilde.padded(n)

    difference = PolynomialPair(p - p_tilde, q - q_tilde)
    delta_s, delta_2 = difference.norm(s), difference.norm2

    anchor = epsilon_region(p, q, m, n, s, region, config)
    shared = discretize(
        region,
        config.density,
        root_seeds(p, q, p_tilde, q_tilde) + [anchor.argmin],
    )
    finite = SearchConfig(density=1, polish=False)
    eps = epsilon_region(p, q, m, n, s, shared, finite).value
    eps_perturbed = epsilon_region(p_tilde, q_tilde, m, n, s, shared, finite).value

    radius_eps = eps / 2.0
    eps_hypothesis = delta_s <= radius_eps
    eps_ratio = _ratio(eps_perturbed, eps)
    eps_ok = 0.5 * (1.0 - slack) <= eps_ratio <= 1.5 * (1.0 + slack)

    cond = cond_perturbed = cond_ratio = float("nan")
    radius_cond = 0.0
    cond_hypothesis = cond_ok = False
    S1 = build(p, q, m, n, 1, tolerances.rank_tol)
    if S1.full_row_rank:
        cond = cond2(S1)
        radius_cond = 1.0 / (3.0 * np.sqrt(m + n + 1) * pinv_norm2(S1))
        cond_hypothesis = delta_2 <= radius_cond
        if cond_hypothesis:
            try:
                cond_perturbed = cond2(build(p_tilde, q_tilde, m, n, 1, tolerances.rank_tol))
                cond_ratio = cond_perturbed / cond
                cond_ok = 0.5 * (1.0 - slack) <= cond_ratio <= 2.0 * (1.0 + slack)
            except DegeneracyError as e:
                logger.warning(f"perturbed S^(1) is rank deficient: {str(e)}")
    else:
        logger.warning("S^(1)(p, q) is rank deficient; condition number check skipped")

    verdict = SensitivityVerdict(
        s=s,
        delta_s=delta_s,
        radius_eps=radius_eps,
        eps_hypothesis=eps_hypothesis,
        eps=eps,
        eps_perturbed=eps_perturbed,
        eps_ratio=eps_ratio,
        eps_ok=eps_ok,
        delta_2=delta_2,
        radius_cond=radius_cond,
        cond_hypothesis=cond_hypothesis,
        cond=cond,
        cond_perturbed=cond_perturbed,
        cond_ratio=cond_ratio,
        cond_ok=cond_ok,
    )
    if not verdict.ok:
        logger.warning(f"sensitivity check failed: {verdict.to_dict()}")
    return verdict
