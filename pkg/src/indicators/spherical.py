"""
Chordal geometry and spherical-derivative indicators.

rho(r)(z) = |r'(z)| / (1 + |r(z)|^2) is evaluated in the pole-safe form
|p'q - pq'| / (|p|^2 + |q|^2). nu(r)(z) = (1 + |z|^2) rho(r)(z) is invariant
under z -> 1/z, so it is the indicator of choice on unbounded regions.
"""

from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..algebra.polynomial import (
    RationalFunction,
    coeff_norm,
    derivative,
    evaluate,
    residue_at_simple_pole,
    roots,
)
from ..utils.config import SearchConfig, ToleranceConfig
from ..utils.errors import (
    HypothesisError,
    IndeterminateError,
    InputError,
    PoleNotSimpleError,
    RegionError,
)
from ..utils.logger import setup_logger
from .coprimeness import epsilon_at, epsilon_region
from .region import Region, SpherePoint
from .search import PlaneObjective, SearchResult, extremize

logger = setup_logger(__name__)

PointLike = Union[complex, float, None, SpherePoint]


def _as_point(x: PointLike) -> SpherePoint:
    return SpherePoint.of(x)


def chordal(x, y):
    """
    Chordal distance |x - y| / (sqrt(1 + |x|^2) sqrt(1 + |y|^2)).

    Scalars and SpherePoints give a float with the infinity limits applied;
    arrays of finite points are handled elementwise.
    """
    if np.ndim(x) == 0 and np.ndim(y) == 0:
        a, b = _as_point(x), _as_point(y)
        if a.is_infinite and b.is_infinite:
            return 0.0
        if a.is_infinite or b.is_infinite:
            finite = b.value if a.is_infinite else a.value
            return float(1.0 / np.hypot(1.0, abs(finite)))
        return float(
            abs(a.value - b.value) / (np.hypot(1.0, abs(a.value)) * np.hypot(1.0, abs(b.value)))
        )
    xa = np.asarray(x, dtype=np.complex128)
    ya = np.asarray(y, dtype=np.complex128)
    return np.abs(xa - ya) / (np.hypot(1.0, np.abs(xa)) * np.hypot(1.0, np.abs(ya)))


def sigma(x, y):
    """Geodesic distance on the sphere of radius 1/2: arcsin of the chordal distance."""
    return np.arcsin(np.minimum(1.0, chordal(x, y)))


def to_sphere(point: PointLike) -> np.ndarray:
    """Stereographic image on the unit sphere; infinity is the north pole."""
    point = _as_point(point)
    if point.is_infinite:
        return np.array([0.0, 0.0, 1.0])
    z = point.value
    scale = 1.0 + abs(z) ** 2
    return np.array([2.0 * z.real / scale, 2.0 * z.imag / scale, (abs(z) ** 2 - 1.0) / scale])


def from_sphere(vector: np.ndarray) -> SpherePoint:
    x1, x2, x3 = vector / np.linalg.norm(vector)
    if x3 >= 1.0 - 1e-15:
        return SpherePoint.infinity()
    return SpherePoint(complex(x1, x2) / (1.0 - x3))


def geodesic_points(a: PointLike, b: PointLike, count: int = 16) -> List[SpherePoint]:
    """`count` points on a shortest spherical path from a to b, endpoints included."""
    va, vb = to_sphere(a), to_sphere(b)
    angle = float(np.arccos(np.clip(va @ vb, -1.0, 1.0)))
    if angle < 1e-15:
        return [_as_point(a)]
    if np.pi - angle < 1e-12:
        helper = np.eye(3)[int(np.argmin(np.abs(va)))]
        axis = np.cross(va, helper)
        axis /= np.linalg.norm(axis)
        direction = np.cross(axis, va)
    else:
        direction = vb - (va @ vb) * va
        direction /= np.linalg.norm(direction)
    ts = np.linspace(0.0, angle, count)
    return [from_sphere(np.cos(t) * va + np.sin(t) * direction) for t in ts]


def segment_points(a: complex, b: complex, count: int = 16) -> List[complex]:
    return list(np.linspace(0.0, 1.0, count) * (complex(b) - complex(a)) + complex(a))


def _rho_values(r: RationalFunction, z: np.ndarray) -> np.ndarray:
    pz, qz = evaluate(r.p, z), evaluate(r.q, z)
    dpz, dqz = evaluate(derivative(r.p), z), evaluate(derivative(r.q), z)
    den = np.abs(pz) ** 2 + np.abs(qz) ** 2
    if np.any(den == 0):
        raise IndeterminateError(complex(z[np.nonzero(den == 0)[0][0]]))
    return np.abs(dpz * qz - pz * dqz) / den


def rho_objective(r: RationalFunction) -> PlaneObjective:
    """rho(r); at 1/w it equals |w|^2 rho(r(1/.))(w), which vanishes at infinity."""
    inverse = r.inverted()
    return PlaneObjective(
        direct=lambda z: _rho_values(r, z),
        inverted=lambda w: np.abs(w) ** 2 * _rho_values(inverse, w),
    )


def nu_objective(r: RationalFunction) -> PlaneObjective:
    inverse = r.inverted()
    return PlaneObjective(
        direct=lambda z: (1.0 + np.abs(z) ** 2) * _rho_values(r, z),
        inverted=lambda w: (1.0 + np.abs(w) ** 2) * _rho_values(inverse, w),
    )


def _pointwise(objective: PlaneObjective, z):
    if z is None or isinstance(z, SpherePoint):
        return objective.at_point(SpherePoint.of(z))
    if np.ndim(z) == 0:
        return float(objective.at(np.array([z]))[0])
    return objective.at(np.asarray(z))


def rho_at(r: RationalFunction, z):
    """
    Spherical derivative of r at z (scalar or array).

    Raises:
        IndeterminateError: If p and q vanish together at z
    """
    return _pointwise(rho_objective(r), z)


def nu_at(r: RationalFunction, z):
    return _pointwise(nu_objective(r), z)


@dataclass(frozen=True)
class SupremumResult:
    value: float
    argmax: SpherePoint
    search: SearchResult


@dataclass(frozen=True)
class SphericalIndicators:
    """rho_K and nu_K with their maximizers; both are lower bounds on the true sup."""

    rho_K: float
    nu_K: float
    argmax_rho: SpherePoint
    argmax_nu: SpherePoint
    metadata: dict

    def to_dict(self) -> dict:
        return {
            "rho_K": self.rho_K,
            "nu_K": self.nu_K,
            "argmax_rho": self.argmax_rho.to_json(),
            "argmax_nu": self.argmax_nu.to_json(),
            **self.metadata,
        }


def _pole_and_zero_seeds(r: RationalFunction) -> List[SpherePoint]:
    seeds: List[SpherePoint] = []
    for poly in (r.p, r.q):
        if poly.is_zero():
            continue
        found = roots(poly)
        seeds.extend(SpherePoint(complex(z)) for z in found.finite)
        if found.at_infinity:
            seeds.append(SpherePoint.infinity())
    return seeds


def rho_sup(
    r: RationalFunction,
    region: Region,
    config: Optional[SearchConfig] = None,
    seeds: Iterable = (),
) -> SupremumResult:
    """
    rho_K(r) over a bounded region.

    Raises:
        RegionError: If the region is unbounded
    """
    if not region.is_bounded or region.includes_infinity:
        raise RegionError(
            f"rho_K is not taken over the unbounded region {region.describe()}; use nu_K"
        )
    config = config or SearchConfig()
    candidates = _pole_and_zero_seeds(r) + [SpherePoint.of(s) for s in seeds]
    result = extremize(rho_objective(r), region, config, maximize=True, seeds=candidates)
    return SupremumResult(value=result.value, argmax=result.location, search=result)


def nu_sup(
    r: RationalFunction,
    region: Region,
    config: Optional[SearchConfig] = None,
    seeds: Iterable = (),
) -> SupremumResult:
    """nu_K(r); unbounded regions are searched through the inversion."""
    config = config or SearchConfig()
    candidates = _pole_and_zero_seeds(r) + [SpherePoint.of(s) for s in seeds]
    result = extremize(nu_objective(r), region, config, maximize=True, seeds=candidates)
    return SupremumResult(value=result.value, argmax=result.location, search=result)


def spherical_indicators(
    r: RationalFunction,
    region: Region,
    config: Optional[SearchConfig] = None,
    rho_seeds: Iterable = (),
    nu_seeds: Iterable = (),
) -> SphericalIndicators:
    """Both suprema; rho_K is nan on unbounded regions."""
    config = config or SearchConfig()
    nu = nu_sup(r, region, config, nu_seeds)
    if region.is_bounded and not region.includes_infinity:
        rho = rho_sup(r, region, config, rho_seeds)
        rho_value, rho_arg = rho.value, rho.argmax
    else:
        rho_value, rho_arg = float("nan"), SpherePoint.infinity()
    return SphericalIndicators(
        rho_K=rho_value,
        nu_K=nu.value,
        argmax_rho=rho_arg,
        argmax_nu=nu.argmax,
        metadata=nu.search.metadata(),
    )


def chordal_values(r: RationalFunction, z1: np.ndarray, z2: np.ndarray) -> np.ndarray:
    """chi(r(z1), r(z2)) through the cross formula, finite at poles."""
    p1, q1 = evaluate(r.p, z1), evaluate(r.q, z1)
    p2, q2 = evaluate(r.p, z2), evaluate(r.q, z2)
    n1 = np.sqrt(np.abs(p1) ** 2 + np.abs(q1) ** 2)
    n2 = np.sqrt(np.abs(p2) ** 2 + np.abs(q2) ** 2)
    return np.abs(p1 * q2 - p2 * q1) / (n1 * n2)


def _pair_sample(
    region: Region,
    pair_samples: int,
    rng: np.random.Generator,
    density: int,
    anchors: Sequence[complex],
) -> Tuple[np.ndarray, np.ndarray]:
    grid = region.sample(density)
    half = pair_samples // 2
    first = grid[rng.integers(0, grid.size, size=half)]
    second = grid[rng.integers(0, grid.size, size=half)]

    local = pair_samples - half
    base = grid[rng.integers(0, grid.size, size=local)]
    steps = region.resolution(density) * 10.0 ** rng.uniform(-4.0, 0.0, size=local)
    near = []
    for z, h in zip(base, steps):
        direction = rng.normal(size=region.chart_dim)
        direction /= np.linalg.norm(direction) or 1.0
        near.append(region.project(region.chart(z) + h * direction))

    pin_a, pin_b = [], []
    for anchor in anchors:
        for k in range(3, 9):
            for direction in np.eye(region.chart_dim):
                pin_a.append(anchor)
                pin_b.append(region.project(region.chart(anchor) + 10.0**-k * direction))
                pin_a.append(anchor)
                pin_b.append(region.project(region.chart(anchor) - 10.0**-k * direction))

    z1 = np.concatenate([first, base, np.array(pin_a, dtype=np.complex128)])
    z2 = np.concatenate(
        [second, np.array(near, dtype=np.complex128), np.array(pin_b, dtype=np.complex128)]
    )
    return z1, z2


def lipschitz_ratio_sup(
    r: RationalFunction,
    region: Region,
    metric: str = "euclid",
    pair_samples: int = 10_000,
    seed: int = 0,
    density: int = 32,
    anchors: Sequence[complex] = (),
) -> float:
    """
    Sup over sampled pairs of chi(r(z1), r(z2)) / d(z1, z2).

    Half of the pairs are drawn uniformly from the grid, half are
    near-diagonal; pairs straddling each anchor (typically the maximizer of
    rho or nu) pin the sup down to the local derivative.

    Raises:
        RegionError: If the region is not convex (euclid) or spherically convex (chordal)
    """
    if metric == "euclid":
        if not region.is_convex:
            raise RegionError(f"{region.describe()} is not convex")
    elif metric == "chordal":
        if not region.is_spherically_convex:
            raise RegionError(f"{region.describe()} is not spherically convex")
    else:
        raise InputError(f"metric must be 'euclid' or 'chordal', got {metric!r}")

    if region.chart_dim == 0:
        return 0.0

    rng = np.random.default_rng(seed)
    finite_anchors = [
        complex(a.value if isinstance(a, SpherePoint) else a)
        for a in anchors
        if not (isinstance(a, SpherePoint) and a.is_infinite)
    ]
    z1, z2 = _pair_sample(region, pair_samples, rng, density, finite_anchors)
    if metric == "euclid":
        d = np.abs(z1 - z2)
    else:
        d = chordal(z1, z2)
    keep = d > 0
    if not np.any(keep):
        return 0.0
    ratios = chordal_values(r, z1[keep], z2[keep]) / d[keep]
    return float(np.max(ratios))


@dataclass(frozen=True)
class Verdict:
    """One checked inequality with both sides."""

    check: str
    lhs: float
    rhs: float
    ok: bool
    note: str = ""

    def to_dict(self) -> dict:
        payload = {"check": self.check, "lhs": self.lhs, "rhs": self.rhs, "ok": self.ok}
        if self.note:
            payload["note"] = self.note
        return payload


def lipschitz_check(
    r: RationalFunction,
    region: Region,
    metric: str = "euclid",
    pair_samples: int = 10_000,
    seed: int = 0,
    config: Optional[SearchConfig] = None,
    tol: float = 1e-6,
) -> Tuple[Verdict, float, float]:
    """
    Sampled Lipschitz ratio against its bound.

    euclid: ratio <= rho_K on convex K. chordal: ratio <= (pi/2) nu_K on
    spherically convex K.

    Returns:
        The verdict, the sampled ratio sup and the polished indicator
    """
    config = config or SearchConfig()
    if metric == "euclid":
        sup = rho_sup(r, region, config)
        bound = sup.value
    else:
        sup = nu_sup(r, region, config)
        bound = np.pi / 2.0 * sup.value
    ratio = lipschitz_ratio_sup(
        r, region, metric, pair_samples, seed, anchors=[sup.argmax]
    )
    verdict = Verdict(
        check=f"lipschitz_{metric}",
        lhs=ratio,
        rhs=float(bound),
        ok=ratio <= bound * (1.0 + tol),
    )
    return verdict, ratio, sup.value


@dataclass(frozen=True)
class ResidueCheck:
    pole: complex
    residue: Optional[complex]
    bound: float
    ok: Optional[bool]
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "pole": self.pole,
            "residue": self.residue if self.residue is not None else "skipped",
            "abs_residue": abs(self.residue) if self.residue is not None else None,
            "bound": self.bound,
            "ok": self.ok,
            "note": self.note,
        }


def residue_bound_check(
    r: RationalFunction,
    region: Region,
    rho_K: Optional[float] = None,
    config: Optional[SearchConfig] = None,
    tolerances: Optional[ToleranceConfig] = None,
) -> List[ResidueCheck]:
    """
    |residue| >= 1/rho_K(r) at every simple pole in K.

    Non-simple poles and poles cancelled by a zero are skipped with a note.
    """
    tolerances = tolerances or ToleranceConfig()
    if rho_K is None:
        rho_K = rho_sup(r, region, config).value
    bound = 1.0 / rho_K if rho_K > 0 else float("inf")

    checks: List[ResidueCheck] = []
    for pole in roots(r.q, tolerances.trim_tol).finite:
        pole = complex(pole)
        if not region.contains(pole, 1e-9):
            continue
        try:
            beta = residue_at_simple_pole(r, pole, tolerances.pole_tol)
        except PoleNotSimpleError as e:
            logger.info(f"Skipping pole {pole}: {str(e)}")
            checks.append(ResidueCheck(pole, None, bound, None, "pole not simple"))
            continue
        except InputError as e:
            logger.info(f"Skipping pole {pole}: {str(e)}")
            checks.append(ResidueCheck(pole, None, bound, None, "root not resolved"))
            continue
        if beta == 0:
            checks.append(ResidueCheck(pole, beta, bound, None, "cancelled by a zero"))
            continue
        ok = abs(beta) >= bound * (1.0 - tolerances.slack)
        if not ok:
            logger.warning(f"residue bound violated at pole {pole}: |{beta}| < {bound}")
        checks.append(ResidueCheck(pole, beta, bound, ok))
    return checks


def power_rule_check(r: RationalFunction, m: int, z) -> Verdict:
    """rho(r^m)(z) <= 2m rho(r)(z); an array of points is checked jointly."""
    if m < 1:
        raise InputError(f"power must be >= 1, got {m}")
    zs = np.atleast_1d(np.asarray(z, dtype=np.complex128))
    lhs = rho_at(r.power(m), zs)
    rhs = 2.0 * m * rho_at(r, zs)
    ok = bool(np.all(lhs <= rhs * (1.0 + 1e-9)))
    worst = int(np.argmax(lhs - rhs))
    return Verdict(check="power_rule", lhs=float(lhs[worst]), rhs=float(rhs[worst]), ok=ok)


@dataclass(frozen=True)
class SphericalCoprimeVerdict:
    bound: float
    sharp_bound: float
    inv_nu: float
    inv_rho: float
    ok: bool
    sharp_ok: bool

    def to_dict(self) -> dict:
        return {
            "bound": self.bound,
            "sharp_bound": self.sharp_bound,
            "inv_nu_K": self.inv_nu,
            "inv_rho_K": self.inv_rho,
            "ok": self.ok,
            "sharp_ok": self.sharp_ok,
        }


def spherical_coprime_check(
    r: RationalFunction,
    region: Region,
    config: Optional[SearchConfig] = None,
    indicators: Optional[SphericalIndicators] = None,
    slack: float = 1e-9,
) -> SphericalCoprimeVerdict:
    """
    epsilon_1^K / (c max(m||p||_1, n||q||_1)) <= 1/nu_K <= 1/rho_K.

    The pointwise estimate nu <= 2 rho on the unit disk with
    rho <= 2 max(m||p||_1, n||q||_1) / max(|p|, |q|) gives c = 4, which
    decides `ok`; c = 2 is reported as `sharp_ok`. Epsilon is taken at most
    at the nu maximizer so both sides refer to the same point.

    Raises:
        HypothesisError: Unless K lies in the closed unit disk or m = n
    """
    if not (region.within_unit_disk() or r.m == r.n):
        raise HypothesisError("the spherical coprimeness bound needs K in D or m = n")
    config = config or SearchConfig()
    if indicators is None:
        indicators = spherical_indicators(r, region, config)

    scale = max(r.m * coeff_norm(r.p, 1), r.n * coeff_norm(r.q, 1))
    eps = epsilon_region(r.p, r.q, r.m, r.n, 1, region, config).value
    eps = min(eps, epsilon_at(r.p, r.q, r.m, r.n, 1, indicators.argmax_nu))

    inv_nu = 1.0 / indicators.nu_K if indicators.nu_K > 0 else float("inf")
    inv_rho = (
        1.0 / indicators.rho_K
        if np.isfinite(indicators.rho_K) and indicators.rho_K > 0
        else float("inf")
    )
    bound = eps / (4.0 * scale) if scale > 0 else 0.0
    sharp = eps / (2.0 * scale) if scale > 0 else 0.0
    ordered = inv_nu <= inv_rho * (1.0 + slack) or not np.isfinite(indicators.rho_K)
    return SphericalCoprimeVerdict(
        bound=bound,
        sharp_bound=sharp,
        inv_nu=inv_nu,
        inv_rho=inv_rho,
        ok=bound <= inv_nu * (1.0 + slack) and ordered,
        sharp_ok=sharp <= inv_nu * (1.0 + slack),
    )
