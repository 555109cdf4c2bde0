"""
Randomized inequality suite.

Each suite draws its own instances from a generator seeded with
(seed, suite index), so a summary depends only on the seed, the trial count
and the configuration.
"""

from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Optional, Tuple

import numpy as np

from ..algebra.polynomial import Polynomial, PolynomialPair, RationalFunction
from ..algebra.sylvester import build, norms_theorem_check, row_identity_residual
from ..indicators.coprimeness import (
    epsilon_lower_bound,
    epsilon_region,
    sensitivity_certificate,
)
from ..indicators.metrics import distances_inequality_check
from ..indicators.region import Segment, UnitDisk
from ..indicators.spherical import lipschitz_check, power_rule_check, residue_bound_check
from ..utils.config import AuditConfig, SearchConfig, get_config
from ..utils.errors import DegeneracyError, InputError
from ..utils.logger import setup_logger
from .doublets import certificates

logger = setup_logger(__name__)

MAX_DEGREE = 4
LIPSCHITZ_PAIRS = 2000

# (lhs, rhs) with lhs <= rhs expected; None when the hypothesis is unmet
Outcome = Optional[Tuple[float, float]]


def random_polynomial(rng: np.random.Generator, degree: int) -> Polynomial:
    return Polynomial(rng.normal(size=degree + 1) + 1j * rng.normal(size=degree + 1))


def random_pair(
    rng: np.random.Generator, max_degree: int = MAX_DEGREE
) -> RationalFunction:
    """Gaussian complex coefficients; coprime with probability one."""
    m = int(rng.integers(1, max_degree + 1))
    n = int(rng.integers(1, max_degree + 1))
    return RationalFunction(random_polynomial(rng, m), random_polynomial(rng, n), m, n)


def _roots_in_disk(rng: np.random.Generator, count: int) -> np.ndarray:
    radius = np.sqrt(rng.uniform(size=count))
    angle = rng.uniform(0.0, 2.0 * np.pi, size=count)
    return radius * np.exp(1j * angle)


def random_pair_with_roots_in_disk(
    rng: np.random.Generator, max_degree: int = MAX_DEGREE
) -> RationalFunction:
    """Monic-scaled pair whose roots are uniform in the open unit disk."""
    m = int(rng.integers(1, max_degree + 1))
    n = int(rng.integers(1, max_degree + 1))
    lead_p = complex(rng.normal(), rng.normal())
    lead_q = complex(rng.normal(), rng.normal())
    p = np.polynomial.polynomial.polyfromroots(_roots_in_disk(rng, m)) * lead_p
    q = np.polynomial.polynomial.polyfromroots(_roots_in_disk(rng, n)) * lead_q
    return RationalFunction(Polynomial(p), Polynomial(q), m, n)


def _perturbation(rng: np.random.Generator, r: RationalFunction) -> Tuple[Polynomial, Polynomial]:
    return random_polynomial(rng, r.m), random_polynomial(rng, r.n)


@dataclass
class SuiteSummary:
    name: str
    informational: bool = False
    trials: int = 0
    applicable: int = 0
    passed: int = 0
    worst_slack: float = float("inf")

    @property
    def ok(self) -> bool:
        return self.passed == self.applicable

    def record(self, outcomes: Iterable[Outcome]) -> None:
        self.trials += 1
        for outcome in outcomes:
            if outcome is None:
                continue
            lhs, rhs = outcome
            self.applicable += 1
            slack = (rhs - lhs) / max(abs(rhs), np.finfo(float).tiny)
            if lhs <= rhs:
                self.passed += 1
            self.worst_slack = min(self.worst_slack, float(slack))

    def to_dict(self) -> dict:
        return {
            "trials": self.trials,
            "applicable": self.applicable,
            "passed": self.passed,
            "worst_slack": self.worst_slack if self.applicable else None,
            "ok": self.ok,
            "informational": self.informational,
        }


def _relaxed(lhs: float, rhs: float, slack: float) -> Tuple[float, float]:
    return float(lhs), float(rhs) * (1.0 + slack)


def suite_norms(rng, search: SearchConfig, slack: float) -> List[Outcome]:
    r = random_pair(rng, 8)
    outcomes: List[Outcome] = []
    for ell in range(5):
        sandwich = norms_theorem_check(r.p, r.q, r.m, r.n, ell, slack)
        outcomes.append(_relaxed(sandwich.mid, sandwich.rhs, slack))
    return outcomes


def suite_norms_lower(rng, search: SearchConfig, slack: float) -> List[Outcome]:
    """||S^(0)^-1||_2 <= ||S^(l)^+||_2, which does not hold in general."""
    r = random_pair(rng, 8)
    outcomes: List[Outcome] = []
    for ell in range(1, 5):
        sandwich = norms_theorem_check(r.p, r.q, r.m, r.n, ell, slack)
        outcomes.append(_relaxed(sandwich.lhs, sandwich.mid, slack))
    return outcomes


def suite_structure(rng, search: SearchConfig, slack: float) -> List[Outcome]:
    r = random_pair(rng)
    outcomes: List[Outcome] = []
    for ell in range(5):
        S = build(r.p, r.q, r.m, r.n, ell)
        for z in _roots_in_disk(rng, 20):
            scale = max(1.0, float(np.abs(S.entries).sum()))
            outcomes.append((row_identity_residual(S, r.p, r.q, z) / scale, 1e-12))
    return outcomes


def suite_epsilon_bounds(rng, search: SearchConfig, slack: float) -> List[Outcome]:
    r = random_pair(rng)
    outcomes: List[Outcome] = []
    for s in (1, 2):
        eps = epsilon_region(r.p, r.q, r.m, r.n, s, UnitDisk(), search).value
        bound = epsilon_lower_bound(r.p, r.q, r.m, r.n, 1, s)
        outcomes.append(_relaxed(bound, eps, slack))
    return outcomes


def suite_certificates(rng, search: SearchConfig, slack: float) -> List[Outcome]:
    r = random_pair_with_roots_in_disk(rng)
    outcomes: List[Outcome] = []
    for cert in certificates(r, UnitDisk(), config=search):
        for check in cert.checks:
            if check.applicable:
                outcomes.append(_relaxed(check.bound * (1.0 - slack), check.observed, 0.0))
    return outcomes


def suite_lipschitz(rng, search: SearchConfig, slack: float) -> List[Outcome]:
    r = random_pair_with_roots_in_disk(rng)
    verdict, _, _ = lipschitz_check(
        r,
        Segment(0.0, 1.0),
        "euclid",
        pair_samples=LIPSCHITZ_PAIRS,
        seed=int(rng.integers(0, 2**31)),
        config=search,
    )
    return [_relaxed(verdict.lhs, verdict.rhs, 1e-6)]


def suite_residues(rng, search: SearchConfig, slack: float) -> List[Outcome]:
    r = random_pair_with_roots_in_disk(rng)
    outcomes: List[Outcome] = []
    for check in residue_bound_check(r, UnitDisk(), config=search):
        if check.ok is not None:
            outcomes.append(_relaxed(check.bound, abs(check.residue), slack))
    return outcomes


def suite_power_rule(rng, search: SearchConfig, slack: float) -> List[Outcome]:
    r = random_pair(rng, 3)
    k = int(rng.integers(1, 7))
    verdict = power_rule_check(r, k, _roots_in_disk(rng, 100))
    return [_relaxed(verdict.lhs, verdict.rhs, slack)]


def suite_sensitivity(rng, search: SearchConfig, slack: float) -> List[Outcome]:
    r = random_pair(rng)
    s = int(rng.integers(1, 3))
    dp, dq = _perturbation(rng, r)
    direction = PolynomialPair(dp, dq)

    S1 = build(r.p, r.q, r.m, r.n, 1)
    radius_cond = S1.sigma_min / (3.0 * np.sqrt(r.m + r.n + 1))
    eps = epsilon_region(r.p, r.q, r.m, r.n, s, UnitDisk(), search).value
    size = 0.9 * min(eps / (2.0 * direction.norm(s)), radius_cond / direction.norm2)
    verdict = sensitivity_certificate(
        r.p, r.q, r.p + dp * size, r.q + dq * size, r.m, r.n, s, UnitDisk(), search
    )
    outcomes: List[Outcome] = []
    if verdict.eps_hypothesis:
        outcomes.append(_relaxed(0.5, verdict.eps_ratio, slack))
        outcomes.append(_relaxed(verdict.eps_ratio, 1.5, slack))
    if verdict.cond_hypothesis:
        outcomes.append(_relaxed(0.5, verdict.cond_ratio, slack))
        outcomes.append(_relaxed(verdict.cond_ratio, 2.0, slack))
    return outcomes


def suite_distances(rng, search: SearchConfig, slack: float) -> List[Outcome]:
    r = random_pair(rng)
    dp, dq = _perturbation(rng, r)
    size = 10.0 ** rng.uniform(-4.0, -1.0)
    rt = RationalFunction(r.p + dp * size, r.q + dq * size, r.m, r.n)
    report = distances_inequality_check(r, rt, UnitDisk(), search)
    verdict = report.distance_verdict
    outcomes: List[Outcome] = [_relaxed(verdict.lhs, verdict.rhs, slack)]
    if np.isfinite(report.cond2_S1) and report.d > 0:
        ratio = report.chi_D / report.d
        outcomes.append(_relaxed(report.sandwich_lower * (1.0 - slack), ratio, 0.0))
        outcomes.append(_relaxed(ratio, report.sandwich_upper, slack))
    return outcomes


Suite = Callable[[np.random.Generator, SearchConfig, float], List[Outcome]]

SUITES: Dict[str, Suite] = {
    "pinv_norm_sandwich": suite_norms,
    "structural_identity": suite_structure,
    "epsilon_lower_bounds": suite_epsilon_bounds,
    "froissart_certificates": suite_certificates,
    "lipschitz": suite_lipschitz,
    "residue_bound": suite_residues,
    "power_rule": suite_power_rule,
    "sensitivity": suite_sensitivity,
    "distances": suite_distances,
    "pinv_norm_lower": suite_norms_lower,
}

# Reported but left out of the overall verdict
INFORMATIONAL_SUITES = frozenset({"pinv_norm_lower"})


def verify(
    seed: int = 0,
    trials: int = 100,
    config: Optional[AuditConfig] = None,
    suites: Optional[Iterable[str]] = None,
) -> dict:
    """
    Run every suite on `trials` random instances.

    Returns:
        Summary with per-suite pass counts and the worst relative slack

    Raises:
        InputError: If trials < 1 or an unknown suite is requested
    """
    if trials < 1:
        raise InputError(f"trials must be >= 1, got {trials}")
    config = config or get_config()
    names = list(SUITES) if suites is None else list(suites)
    unknown = [name for name in names if name not in SUITES]
    if unknown:
        raise InputError(f"unknown suite(s): {unknown}")

    search = SearchConfig(density=config.verify_density, polish_starts=3)
    slack = config.tolerances.slack
    logger.info(f"Starting verification: seed={seed}, trials={trials}, suites={len(names)}")

    summaries = {}
    for index, name in enumerate(SUITES):
        if name not in names:
            continue
        rng = np.random.default_rng([seed, index])
        summary = SuiteSummary(name, informational=name in INFORMATIONAL_SUITES)
        for _ in range(trials):
            try:
                summary.record(SUITES[name](rng, search, slack))
            except DegeneracyError as e:
                logger.warning(f"{name}: degenerate instance skipped ({str(e)})")
                summary.record([])
        if not summary.ok and not summary.informational:
            logger.warning(f"{name}: {summary.applicable - summary.passed} failure(s)")
        summaries[name] = summary.to_dict()

    result = {
        "seed": seed,
        "trials": trials,
        "suites": summaries,
        "ok": all(s["ok"] for s in summaries.values() if not s["informational"]),
    }
    logger.info(f"Verification completed: ok={result['ok']}")
    return result
