"""
Zero-pole pairing and Froissart separation certificates.

Each zero-pole pair of r = p/q receives lower bounds on its separation from
three indicator families: the condition number of S^(l) (euclidean distance,
unit disk), the coprimeness measures epsilon_s^K (chordal distance) and the
spherical derivatives rho_K, nu_K. A bound exceeding the observed distance is
a numerical incident and is reported, never clamped.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np

from ..algebra.polynomial import RationalFunction, coeff_norm, roots
from ..algebra.sylvester import build
from ..indicators.coprimeness import epsilon_region
from ..indicators.region import PointSet, Region, SpherePoint, UnitDisk
from ..indicators.search import discretize
from ..indicators.spherical import (
    chordal,
    geodesic_points,
    nu_sup,
    rho_sup,
    segment_points,
)
from ..utils.config import SearchConfig, ToleranceConfig
from ..utils.errors import DegeneracyError
from ..utils.logger import setup_logger

logger = setup_logger(__name__)

DEGENERATE_CHI = 1e-12
PATH_SEEDS = 64


@dataclass(frozen=True)
class ZeroPolePair:
    zero: SpherePoint
    pole: SpherePoint
    chi: float
    euclid: Optional[float]
    degenerate: bool = False

    @property
    def finite(self) -> bool:
        return not (self.zero.is_infinite or self.pole.is_infinite)


def _root_points(poly, tol: float) -> List[SpherePoint]:
    if poly.is_zero():
        return []
    found = roots(poly, tol)
    points = [SpherePoint(complex(z)) for z in found.finite]
    points.extend(SpherePoint.infinity() for _ in range(found.at_infinity))
    return points


def zero_pole_pairs(r: RationalFunction, tol: float = 1e-12) -> List[ZeroPolePair]:
    """
    Every (zero, pole) combination, infinity markers included, by ascending chi.

    A pair closer than 1e-12 in the chordal metric is marked degenerate
    instead of raising.
    """
    zeros = _root_points(r.p, tol)
    poles = _root_points(r.q, tol)
    pairs = []
    for zero in zeros:
        for pole in poles:
            chi = chordal(zero, pole)
            euclid = None
            if not (zero.is_infinite or pole.is_infinite):
                euclid = abs(zero.value - pole.value)
            pairs.append(
                ZeroPolePair(zero, pole, float(chi), euclid, degenerate=chi < DEGENERATE_CHI)
            )
    pairs.sort(key=lambda pr: (pr.chi, pr.zero.sort_key, pr.pole.sort_key))
    return pairs


@dataclass(frozen=True)
class BoundCheck:
    """One separation bound against the distance it controls."""

    name: str
    bound: Optional[float]
    observed: Optional[float]
    metric: str
    ok: Optional[bool]
    note: str = ""

    @property
    def applicable(self) -> bool:
        return self.ok is not None

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "bound": self.bound,
            "observed": self.observed,
            "metric": self.metric,
            "ok": self.ok,
            "note": self.note,
        }


@dataclass
class DoubletCertificate:
    zero: SpherePoint
    pole: SpherePoint
    chi_dist: float
    euclid_dist: Optional[float]
    checks: List[BoundCheck] = field(default_factory=list)
    flagged: bool = False
    degenerate: bool = False

    @property
    def bounds(self) -> Dict[str, Optional[float]]:
        return {check.name: check.bound for check in self.checks}

    @property
    def ok(self) -> bool:
        return all(check.ok for check in self.checks if check.applicable)

    def check(self, name: str) -> BoundCheck:
        for item in self.checks:
            if item.name == name:
                return item
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "zero": self.zero.to_json(),
            "pole": self.pole.to_json(),
            "chi_dist": self.chi_dist,
            "euclid_dist": self.euclid_dist,
            "bounds": self.bounds,
            "checks": [check.to_dict() for check in self.checks],
            "flagged": self.flagged,
            "degenerate": self.degenerate,
            "ok": self.ok,
        }


@dataclass(frozen=True)
class CertificateIndicators:
    """Indicators of (p, q) shared by all pairs of one function."""

    ell: int
    cond2: Optional[float]
    cond_note: str
    epsilon: Dict[int, float]
    coeff_scale: Dict[int, float]
    pair_norm: Dict[int, float]
    min_variant: bool
    rho_K: Optional[float]
    nu_K: Optional[float]
    khat_size: int
    roots_in_region: bool

    def to_dict(self) -> dict:
        return {
            "ell": self.ell,
            "cond2": self.cond2,
            "cond_note": self.cond_note,
            "epsilon": {f"s{s}": v for s, v in self.epsilon.items()},
            "min_variant": self.min_variant,
            "rho_K": self.rho_K,
            "nu_K": self.nu_K,
            "khat_size": self.khat_size,
            "roots_in_region": self.roots_in_region,
        }


def _khat(
    region: Region,
    density: int,
    points: Sequence[SpherePoint],
    extra: Sequence[SpherePoint] = (),
) -> PointSet:
    """Region grid together with the given points, whether or not they lie in K."""
    base = discretize(region, density, extra)
    finite = list(base.points) + [p.value for p in points if not p.is_infinite]
    with_infinity = base.includes_infinity or any(p.is_infinite for p in points)
    return PointSet(finite, includes_infinity=with_infinity)


def _in_region(point: SpherePoint, region: Region) -> bool:
    if point.is_infinite:
        return region.includes_infinity
    return region.contains(point.value, 1e-9)


def certificate_indicators(
    r: RationalFunction,
    region: Region,
    pairs: Sequence[ZeroPolePair],
    ell: int = 1,
    config: Optional[SearchConfig] = None,
    tolerances: Optional[ToleranceConfig] = None,
    extra_points: Sequence[SpherePoint] = (),
    strict: bool = True,
) -> CertificateIndicators:
    """
    Compute cond2(S^(ell)), epsilon_s over K-hat = grid of K with every root,
    and rho_K, nu_K searched along the paths joining the pairs.

    Raises:
        DegeneracyError: If S^(ell) is rank deficient and `strict` is set
    """
    config = config or SearchConfig()
    tolerances = tolerances or ToleranceConfig()
    m, n = r.m, r.n

    cond2: Optional[float] = None
    cond_note = ""
    try:
        S = build(r.p, r.q, m, n, ell, tolerances.rank_tol)
        S.require_full_rank()
        cond2 = S.sigma_max / S.sigma_min
    except DegeneracyError as e:
        if strict:
            logger.error(f"Certificate indicators failed: {str(e)}")
            raise
        cond_note = str(e)

    points = {pair.zero for pair in pairs} | {pair.pole for pair in pairs}
    points |= set(extra_points)
    ordered = sorted(points, key=lambda pt: pt.sort_key)
    anchor = {
        s: epsilon_region(r.p, r.q, m, n, s, region, config).argmin for s in (1, 2)
    }
    khat = _khat(region, config.density, ordered, extra=list(anchor.values()))
    finite = SearchConfig(density=1, polish=False)
    epsilon = {s: epsilon_region(r.p, r.q, m, n, s, khat, finite).value for s in (1, 2)}
    min_variant = khat.within_unit_disk(tolerances.disk_slack) or khat.outside_unit_disk(
        tolerances.disk_slack
    )
    coeff_scale = {}
    pair_norm = {}
    for s in (1, 2):
        weights = (m * coeff_norm(r.p, s), n * coeff_norm(r.q, s))
        coeff_scale[s] = min(weights) if min_variant else max(weights)
        pair_norm[s] = r.pair.norm(s)

    rho_seeds: List[complex] = []
    nu_seeds: List[SpherePoint] = []
    for pair in pairs:
        if pair.finite:
            rho_seeds.extend(segment_points(pair.zero.value, pair.pole.value, PATH_SEEDS))
        nu_seeds.extend(geodesic_points(pair.zero, pair.pole, PATH_SEEDS))

    rho_K: Optional[float] = None
    if region.is_bounded and not region.includes_infinity:
        rho_K = rho_sup(r, region, config, rho_seeds).value
    nu_K = nu_sup(r, region, config, nu_seeds).value

    return CertificateIndicators(
        ell=ell,
        cond2=cond2,
        cond_note=cond_note,
        epsilon=epsilon,
        coeff_scale=coeff_scale,
        pair_norm=pair_norm,
        min_variant=min_variant,
        rho_K=rho_K,
        nu_K=nu_K,
        khat_size=int(khat.points.size + khat.includes_infinity),
        roots_in_region=all(_in_region(pt, region) for pt in ordered),
    )


def _checked(
    name: str,
    bound: Optional[float],
    observed: Optional[float],
    metric: str,
    slack: float,
    note: str = "",
) -> BoundCheck:
    if bound is None or observed is None:
        return BoundCheck(name, bound, observed, metric, None, note)
    ok = observed >= bound * (1.0 - slack)
    if not ok:
        logger.warning(
            f"{name}: observed {metric} distance {observed:.6e} below bound {bound:.6e}"
        )
    return BoundCheck(name, bound, observed, metric, ok, note)


def _in_closed_disk(point: SpherePoint, slack: float) -> bool:
    return not point.is_infinite and abs(point.value) <= 1.0 + slack


def certificates(
    r: RationalFunction,
    region: Region,
    ell: int = 1,
    tol: float = 1e-12,
    config: Optional[SearchConfig] = None,
    tolerances: Optional[ToleranceConfig] = None,
    indicators: Optional[CertificateIndicators] = None,
    threshold: Optional[float] = None,
    strict: bool = True,
) -> List[DoubletCertificate]:
    """
    Separation certificates for every zero-pole pair of r.

    Args:
        r: Rational function under audit
        region: The set K; roots outside K are still certified on K-hat
        ell: Index of the Sylvester-type matrix in the condition bound
        tol: Root trimming tolerance
        config: Search settings
        tolerances: Numerical tolerances
        indicators: Precomputed indicators, computed when omitted
        threshold: Chordal threshold under which a pair is flagged
        strict: Propagate degeneracy of S^(ell) instead of skipping the bound

    Returns:
        One DoubletCertificate per pair, in zero_pole_pairs order
    """
    config = config or SearchConfig()
    tolerances = tolerances or ToleranceConfig()
    threshold = tolerances.doublet_threshold if threshold is None else threshold
    slack = tolerances.slack
    m, n = r.m, r.n

    pairs = zero_pole_pairs(r, tol)
    if not pairs:
        return []
    if indicators is None:
        indicators = certificate_indicators(
            r, region, pairs, ell, config, tolerances, strict=strict
        )

    cond_bound = None
    if indicators.cond2 is not None:
        cond_bound = 1.0 / (3.0 * np.sqrt(2.0) * (m + n + 1) ** 1.5 * indicators.cond2)

    result = []
    for pair in pairs:
        checks = []
        both_in_disk = _in_closed_disk(pair.zero, tolerances.disk_slack) and _in_closed_disk(
            pair.pole, tolerances.disk_slack
        )
        checks.append(
            _checked(
                "cond_bound",
                cond_bound,
                pair.euclid if both_in_disk else None,
                "euclid",
                slack,
                "" if both_in_disk else "pair not in the closed unit disk",
            )
        )

        for s in (1, 2):
            scale = indicators.coeff_scale[s]
            bound = indicators.epsilon[s] / (2.0 * scale) if scale > 0 else None
            checks.append(
                _checked(f"coprime_bound_s{s}", bound, pair.chi, "chordal", slack)
            )
            weak = indicators.epsilon[s] / (2.0 * (m + n) * indicators.pair_norm[s])
            checks.append(
                _checked(f"coprime_weak_bound_s{s}", weak, pair.chi, "chordal", slack)
            )

        inside = _in_region(pair.zero, region) and _in_region(pair.pole, region)
        rho_ok = (
            indicators.rho_K is not None
            and indicators.rho_K > 0
            and region.is_convex
            and inside
            and pair.finite
        )
        checks.append(
            _checked(
                "spherical_rho_bound",
                1.0 / indicators.rho_K if rho_ok else None,
                pair.euclid if rho_ok else None,
                "euclid",
                slack,
                "" if rho_ok else "needs convex bounded K containing the pair",
            )
        )
        nu_ok = (
            indicators.nu_K is not None
            and indicators.nu_K > 0
            and region.is_spherically_convex
            and inside
        )
        checks.append(
            _checked(
                "spherical_nu_bound",
                2.0 / (np.pi * indicators.nu_K) if nu_ok else None,
                pair.chi if nu_ok else None,
                "chordal",
                slack,
                "" if nu_ok else "needs spherically convex K containing the pair",
            )
        )

        result.append(
            DoubletCertificate(
                zero=pair.zero,
                pole=pair.pole,
                chi_dist=pair.chi,
                euclid_dist=pair.euclid,
                checks=checks,
                flagged=pair.chi < threshold,
                degenerate=pair.degenerate,
            )
        )
    return result


def robust_certificates(
    r: RationalFunction,
    r_tilde: RationalFunction,
    region: Region,
    tol: float = 1e-12,
    config: Optional[SearchConfig] = None,
    tolerances: Optional[ToleranceConfig] = None,
) -> List[DoubletCertificate]:
    """
    Certify the zero-pole pairs of a perturbation r~ with indicators of r.

    Within ||(p - p~, q - q~)||_2 <= 1/(3 sqrt(m+n+1) ||S^(1)(p,q)^+||_2) the
    pairs of r~ in the unit disk satisfy
    |z_p - z_q| >= 1/(6 sqrt(2) (m+n+1)^(3/2) cond2(S^(1)(p,q))). Within
    ||(p - p~, q - q~)||_s <= epsilon_s^K(p,q)/2 they satisfy
    chi(z_p, z_q) >= epsilon_s^K(p,q) / (6 (m+n) ||(p,q)||_s).
    """
    config = config or SearchConfig()
    tolerances = tolerances or ToleranceConfig()
    slack = tolerances.slack
    m, n = r.m, r.n
    r_tilde = RationalFunction(r_tilde.p, r_tilde.q, m, n)

    pairs = zero_pole_pairs(r_tilde, tol)
    if not pairs:
        return []

    difference = r.pair - r_tilde.pair
    S1 = build(r.p, r.q, m, n, 1, tolerances.rank_tol)
    S1.require_full_rank()
    cond = S1.sigma_max / S1.sigma_min
    radius_a = S1.sigma_min / (3.0 * np.sqrt(m + n + 1))
    within_a = difference.norm2 <= radius_a
    cond_bound = 1.0 / (6.0 * np.sqrt(2.0) * (m + n + 1) ** 1.5 * cond)

    tilde_roots = {pair.zero for pair in pairs} | {pair.pole for pair in pairs}
    khat = _khat(region, config.density, sorted(tilde_roots, key=lambda pt: pt.sort_key))
    finite = SearchConfig(density=1, polish=False)
    eps = {s: epsilon_region(r.p, r.q, m, n, s, khat, finite).value for s in (1, 2)}

    result = []
    for pair in pairs:
        checks = []
        in_disk = _in_closed_disk(pair.zero, tolerances.disk_slack) and _in_closed_disk(
            pair.pole, tolerances.disk_slack
        )
        applies = within_a and in_disk
        checks.append(
            _checked(
                "robust_cond_bound",
                cond_bound if applies else None,
                pair.euclid if applies else None,
                "euclid",
                slack,
                "" if applies else "perturbation or pair outside the hypothesis",
            )
        )
        for s in (1, 2):
            applies = difference.norm(s) <= eps[s] / 2.0 and m + n > 0
            bound = eps[s] / (6.0 * (m + n) * r.pair.norm(s)) if applies else None
            checks.append(
                _checked(
                    f"robust_coprime_bound_s{s}",
                    bound,
                    pair.chi if applies else None,
                    "chordal",
                    slack,
                    "" if applies else "perturbation exceeds epsilon/2",
                )
            )
        result.append(
            DoubletCertificate(
                zero=pair.zero,
                pole=pair.pole,
                chi_dist=pair.chi,
                euclid_dist=pair.euclid,
                checks=checks,
                flagged=pair.chi < tolerances.doublet_threshold,
                degenerate=pair.degenerate,
            )
        )
    return result


def detect(
    r: RationalFunction,
    threshold: float = 1e-3,
    region: Optional[Region] = None,
    config: Optional[SearchConfig] = None,
    tolerances: Optional[ToleranceConfig] = None,
) -> List[DoubletCertificate]:
    """
    Pairs closer than `threshold` in the chordal metric, with their certificates.

    A rank-deficient Sylvester matrix does not abort detection; the condition
    bound of such pairs is marked not applicable.
    """
    pairs = [pair for pair in zero_pole_pairs(r) if pair.chi < threshold]
    if not pairs:
        return []
    region = region or UnitDisk()
    flagged = certificates(
        r,
        region,
        config=config,
        tolerances=tolerances,
        threshold=threshold,
        strict=False,
    )
    logger.info(f"Detected {sum(c.flagged for c in flagged)} doublet(s) below chi={threshold}")
    return [cert for cert in flagged if cert.flagged]
