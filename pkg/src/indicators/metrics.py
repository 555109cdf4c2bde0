"""
Distances between rational functions.

chi_K compares values on the Riemann sphere, d compares normalized
coefficient vectors up to a unimodular factor.
"""

from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from ..algebra.polynomial import RationalFunction, evaluate
from ..algebra.sylvester import build
from ..utils.config import SearchConfig, ToleranceConfig
from ..utils.errors import HypothesisError, IndeterminateError, InputError
from ..utils.logger import setup_logger
from .coprimeness import epsilon_at, epsilon_region
from .region import Region, SpherePoint, UnitDisk
from .search import PlaneObjective, extremize
from .spherical import SupremumResult, Verdict

logger = setup_logger(__name__)


def _cross(r: RationalFunction, rt: RationalFunction):
    def objective(z: np.ndarray) -> np.ndarray:
        p, q = evaluate(r.p, z), evaluate(r.q, z)
        pt, qt = evaluate(rt.p, z), evaluate(rt.q, z)
        n1 = np.sqrt(np.abs(p) ** 2 + np.abs(q) ** 2)
        n2 = np.sqrt(np.abs(pt) ** 2 + np.abs(qt) ** 2)
        bad = (n1 == 0) | (n2 == 0)
        if np.any(bad):
            raise IndeterminateError(complex(z[np.nonzero(bad)[0][0]]))
        return np.abs(p * qt - pt * q) / (n1 * n2)

    return objective


def chi_objective(r: RationalFunction, rt: RationalFunction) -> PlaneObjective:
    """chi(r(z), r~(z)) in the cross form, finite at poles of either function."""
    return PlaneObjective(
        direct=_cross(r, rt),
        inverted=_cross(r.inverted(), rt.inverted()),
    )


def chi_supremum(
    r: RationalFunction,
    rt: RationalFunction,
    region: Region,
    config: Optional[SearchConfig] = None,
    seeds: Iterable = (),
) -> SupremumResult:
    config = config or SearchConfig()
    result = extremize(chi_objective(r, rt), region, config, maximize=True, seeds=seeds)
    return SupremumResult(value=result.value, argmax=result.location, search=result)


def chi_region(
    r: RationalFunction,
    rt: RationalFunction,
    region: Region,
    config: Optional[SearchConfig] = None,
) -> float:
    """
    chi_K(r, r~) = sup over K of chi(r(z), r~(z)), a lower bound from the search.

    Raises:
        IndeterminateError: If either pair has a common root at a searched point
    """
    return chi_supremum(r, rt, region, config).value


def _stacked(r: RationalFunction, m: int, n: int) -> np.ndarray:
    return np.concatenate([r.p.padded(m).coeffs, r.q.padded(n).coeffs])


def coeff_distance(r: RationalFunction, rt: RationalFunction) -> float:
    """
    min over |a| = 1 of || u - a v ||_2 for the normalized stacked coefficients.

    The optimal phase is a = <v, u> / |<v, u>|, which gives
    sqrt(2 - 2 |<u, v>|); the norm is evaluated directly to avoid cancellation.
    """
    m, n = max(r.m, rt.m), max(r.n, rt.n)
    u, v = _stacked(r, m, n), _stacked(rt, m, n)
    nu, nv = np.linalg.norm(u), np.linalg.norm(v)
    if nu == 0 or nv == 0:
        raise InputError("coefficient distance needs two nonzero coefficient pairs")
    u, v = u / nu, v / nv
    inner = np.vdot(v, u)
    phase = inner / abs(inner) if abs(inner) > 0 else 1.0
    return float(min(np.sqrt(2.0), np.linalg.norm(u - phase * v)))


@dataclass(frozen=True)
class DistanceReport:
    chi_K: float
    d: float
    region: str
    argmax: SpherePoint
    epsilon_1: float
    delta_1: float
    distance_rhs: float
    distance_verdict: Verdict
    chi_D: float
    cond2_S1: float
    sandwich_lower: float
    sandwich_upper: float
    sandwich_verdict: Verdict

    @property
    def ok(self) -> bool:
        return self.distance_verdict.ok and self.sandwich_verdict.ok

    def to_dict(self) -> dict:
        return {
            "region": self.region,
            "chi_K": self.chi_K,
            "argmax": self.argmax.to_json(),
            "d": self.d,
            "epsilon_1": self.epsilon_1,
            "delta_1": self.delta_1,
            "bounds": {
                "distance_rhs": self.distance_rhs,
                "sandwich_lower": self.sandwich_lower,
                "sandwich_upper": self.sandwich_upper,
            },
            "chi_D": self.chi_D,
            "cond2_S1": self.cond2_S1,
            "verdicts": [self.distance_verdict.to_dict(), self.sandwich_verdict.to_dict()],
            "ok": self.ok,
        }


def _common_degrees(r: RationalFunction, rt: RationalFunction) -> RationalFunction:
    if rt.m == r.m and rt.n == r.n:
        return rt
    try:
        return RationalFunction(rt.p, rt.q, r.m, r.n)
    except InputError as e:
        raise InputError(
            f"second function must lie in R_{{{r.m},{r.n}}}: {str(e)}"
        ) from e


def distances_inequality_check(
    r: RationalFunction,
    rt: RationalFunction,
    region: Region,
    config: Optional[SearchConfig] = None,
    tolerances: Optional[ToleranceConfig] = None,
) -> DistanceReport:
    """
    epsilon_1^K(p, q) chi_K(r, r~) <= sqrt(2) ||(p - p~, q - q~)||_1, plus the
    two-sided comparison of chi_D / d through cond2(S^(1)(p, q)).

    Epsilon is taken at most at the chi maximizer, so both factors of the
    left-hand side refer to a common point.

    Raises:
        HypothesisError: Unless K lies in the closed unit disk or m = n
    """
    config = config or SearchConfig()
    tolerances = tolerances or ToleranceConfig()
    if not (region.within_unit_disk(tolerances.disk_slack) or r.m == r.n):
        raise HypothesisError(
            f"distance comparison needs K in D or m = n, got K={region.describe()}, "
            f"m={r.m}, n={r.n}"
        )
    rt = _common_degrees(r, rt)
    m, n = r.m, r.n

    chi = chi_supremum(r, rt, region, config)
    eps = epsilon_region(r.p, r.q, m, n, 1, region, config, seeds=[chi.argmax]).value
    eps = min(eps, epsilon_at(r.p, r.q, m, n, 1, chi.argmax))
    delta_1 = (r.pair - rt.pair).norm1
    rhs = np.sqrt(2.0) * delta_1
    lhs = eps * chi.value
    distance_verdict = Verdict(
        check="distances_bound",
        lhs=lhs,
        rhs=float(rhs),
        ok=lhs <= rhs * (1.0 + tolerances.slack),
    )

    d = coeff_distance(r, rt)
    disk = UnitDisk()
    chi_D = chi.value if region.describe() == disk.describe() else chi_region(r, rt, disk, config)
    S1 = build(r.p, r.q, m, n, 1, tolerances.rank_tol)
    if S1.full_row_rank:
        cond = S1.sigma_max / S1.sigma_min
        size = m + n + 1
        sandwich_lower = size**-1.5 / (np.sqrt(2.0) * cond)
        sandwich_upper = np.sqrt(2.0 * size) * cond
        if d > 0:
            ratio = chi_D / d
            sandwich_ok = (
                sandwich_lower * (1.0 - tolerances.slack) <= ratio
                and ratio <= sandwich_upper * (1.0 + tolerances.slack)
            )
            note = ""
        else:
            ratio, sandwich_ok, note = 0.0, chi_D <= tolerances.slack, "d = 0"
        sandwich_verdict = Verdict(
            check="distances_sandwich",
            lhs=float(ratio),
            rhs=float(sandwich_upper),
            ok=sandwich_ok,
            note=note,
        )
    else:
        cond, sandwich_lower, sandwich_upper = float("inf"), 0.0, float("inf")
        sandwich_verdict = Verdict(
            check="distances_sandwich",
            lhs=float("nan"),
            rhs=float("inf"),
            ok=True,
            note="S^(1) rank deficient, sandwich not applicable",
        )

    if not distance_verdict.ok:
        logger.warning(f"distance inequality failed: {lhs} > {rhs}")

    return DistanceReport(
        chi_K=chi.value,
        d=d,
        region=region.describe(),
        argmax=chi.argmax,
        epsilon_1=eps,
        delta_1=delta_1,
        distance_rhs=float(rhs),
        distance_verdict=distance_verdict,
        chi_D=chi_D,
        cond2_S1=cond,
        sandwich_lower=float(sandwich_lower),
        sandwich_upper=float(sandwich_upper),
        sandwich_verdict=sandwich_verdict,
    )
