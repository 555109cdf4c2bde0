"""
Full audit of one rational function.

Stages: load the input, compute the independent indicators in a worker pool,
then certify every zero-pole pair and collect the inequality verdicts.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .. import __version__
from ..algebra.codec import load_rational_function, rational_function_to_json
from ..algebra.polynomial import RationalFunction
from ..algebra.sylvester import build, norms_theorem_check
from ..indicators.coprimeness import epsilon_lower_bound, epsilon_region
from ..indicators.region import Region, UnitDisk, parse_region
from ..indicators.spherical import (
    SphericalIndicators,
    Verdict,
    residue_bound_check,
    spherical_coprime_check,
    spherical_indicators,
)
from ..utils.config import AuditConfig, get_config
from ..utils.errors import DegeneracyError, HypothesisError, InputError
from ..utils.logger import setup_logger
from .doublets import DoubletCertificate, certificates

logger = setup_logger(__name__)

CERTIFICATE_ELL = 1


@dataclass
class AuditReport:
    """Everything computed for one rational function on one region."""

    function: RationalFunction
    region: str
    sylvester: List[dict]
    coprimeness: List[dict]
    spherical: dict
    certificates: List[DoubletCertificate]
    verdicts: List[Verdict]
    config: dict
    version: str = __version__
    notes: List[str] = field(default_factory=list)

    @property
    def flagged(self) -> List[DoubletCertificate]:
        return [cert for cert in self.certificates if cert.flagged]

    @property
    def ok(self) -> bool:
        return all(v.ok for v in self.verdicts) and all(c.ok for c in self.certificates)

    @property
    def exit_code(self) -> int:
        return 2 if self.flagged else 0

    def to_dict(self) -> dict:
        return {
            "version": self.version,
            "input": rational_function_to_json(self.function),
            "region": self.region,
            "sylvester": self.sylvester,
            "coprimeness": self.coprimeness,
            "spherical": self.spherical,
            "certificates": [cert.to_dict() for cert in self.certificates],
            "doublets": [
                {"zero": cert.zero.to_json(), "pole": cert.pole.to_json(), "chi": cert.chi_dist}
                for cert in self.flagged
            ],
            "verdicts": [verdict.to_dict() for verdict in self.verdicts],
            "ok": self.ok,
            "notes": self.notes,
            "config": self.config,
        }


def sylvester_section(
    r: RationalFunction, ell: int, config: AuditConfig
) -> Tuple[dict, Optional[Verdict]]:
    """Singular values and conditioning of S^(ell), with the norm comparison."""
    tolerances = config.tolerances
    S = build(r.p, r.q, r.m, r.n, ell, tolerances.rank_tol)
    section = S.summary()
    try:
        sandwich = norms_theorem_check(
            r.p, r.q, r.m, r.n, ell, tolerances.slack, tolerances.rank_tol
        )
        verdict = Verdict(
            check=f"pinv_norm_sandwich_ell{ell}",
            lhs=sandwich.mid,
            rhs=sandwich.rhs,
            ok=sandwich.ok,
            note=f"lower={float(sandwich.lhs):.17g}",
        )
        section["norms_check"] = verdict.to_dict()
        section["norms_check"]["lower_ok"] = sandwich.lower_ok
    except DegeneracyError as e:
        verdict = None
        section["note"] = str(e)
    return section, verdict


def coprimeness_section(
    r: RationalFunction, s: int, region: Region, config: AuditConfig
) -> dict:
    """epsilon_s^K with its Sylvester lower bound for every requested ell."""
    result = epsilon_region(r.p, r.q, r.m, r.n, s, region, config.search)
    section = result.to_dict()
    bounds = {}
    for ell in config.ells:
        try:
            bounds[f"ell{ell}"] = epsilon_lower_bound(
                r.p, r.q, r.m, r.n, ell, s, config.tolerances.rank_tol
            )
        except (DegeneracyError, InputError):
            bounds[f"ell{ell}"] = 0.0
        if s == 1:
            # the 1-norm bound uses S^(0) for every ell
            break
    section["lower_bound_sylvester"] = bounds
    return section


def compute_indicators(
    r: RationalFunction, region: Region, config: AuditConfig
) -> Dict[str, object]:
    """
    Run the independent indicator computations in a thread pool.

    Results are joined in submission order, so the output does not depend on
    scheduling.
    """
    tasks: Dict[str, Callable[[], object]] = {}
    for ell in config.ells:
        tasks[f"sylvester_{ell}"] = lambda ell=ell: sylvester_section(r, ell, config)
    for s in (1, 2):
        tasks[f"coprimeness_{s}"] = lambda s=s: coprimeness_section(r, s, region, config)
    tasks["spherical"] = lambda: spherical_indicators(r, region, config.search)

    logger.info(f"Computing {len(tasks)} indicator(s) with {config.workers} worker(s)")
    with ThreadPoolExecutor(max_workers=config.workers) as pool:
        futures = {name: pool.submit(task) for name, task in tasks.items()}
        return {name: future.result() for name, future in futures.items()}


def _verdicts(
    r: RationalFunction,
    region: Region,
    sylvester: Sequence[Tuple[dict, Optional[Verdict]]],
    coprimeness: Sequence[dict],
    indicators: SphericalIndicators,
    config: AuditConfig,
    notes: List[str],
) -> List[Verdict]:
    slack = config.tolerances.slack
    verdicts: List[Verdict] = []
    for _, verdict in sylvester:
        if verdict is not None:
            verdicts.append(verdict)

    for section in coprimeness:
        eps = section["epsilon"]
        for key, bound in section["lower_bound_sylvester"].items():
            verdicts.append(
                Verdict(
                    check=f"epsilon_{section['s']}_lower_bound_{key}",
                    lhs=float(bound),
                    rhs=float(eps),
                    ok=bound <= eps * (1.0 + slack),
                )
            )

    if np.isfinite(indicators.rho_K):
        verdicts.append(
            Verdict(
                check="rho_below_nu",
                lhs=indicators.rho_K,
                rhs=indicators.nu_K,
                ok=indicators.rho_K <= indicators.nu_K * (1.0 + slack),
            )
        )

    try:
        coprime = spherical_coprime_check(r, region, config.search, indicators, slack)
        verdicts.append(
            Verdict(
                check="spherical_coprime_bound",
                lhs=coprime.bound,
                rhs=coprime.inv_nu,
                ok=coprime.ok,
                note=f"sharp_ok={coprime.sharp_ok}",
            )
        )
    except HypothesisError as e:
        logger.warning(f"Skipping spherical coprimeness comparison: {str(e)}")
        notes.append(str(e))
    return verdicts


def audit_function(
    r: RationalFunction,
    region: Region,
    config: Optional[AuditConfig] = None,
) -> AuditReport:
    """
    Audit an already loaded function.

    Raises:
        DegeneracyError: If S^(1)(p, q) is rank deficient, i.e. p and q share a root
    """
    config = config or get_config()
    tolerances = config.tolerances

    S1 = build(r.p, r.q, r.m, r.n, CERTIFICATE_ELL, tolerances.rank_tol)
    S1.require_full_rank()

    # === INDICATORS ===
    results = compute_indicators(r, region, config)
    sylvester = [results[f"sylvester_{ell}"] for ell in config.ells]
    coprimeness = [results[f"coprimeness_{s}"] for s in (1, 2)]
    indicators = results["spherical"]
    spherical = indicators.to_dict()

    notes: List[str] = []
    if np.isfinite(indicators.rho_K):
        residues = residue_bound_check(r, region, indicators.rho_K, config.search, tolerances)
        spherical["residue_checks"] = [check.to_dict() for check in residues]
    else:
        residues = []
        spherical["residue_checks"] = []
        notes.append(f"rho_K is not defined on {region.describe()}, residue bound skipped")

    # === CERTIFICATES ===
    certs = certificates(
        r,
        region,
        ell=CERTIFICATE_ELL,
        tol=tolerances.trim_tol,
        config=config.search,
        tolerances=tolerances,
        strict=False,
    )

    verdicts = _verdicts(r, region, sylvester, coprimeness, indicators, config, notes)
    for check in residues:
        if check.ok is not None:
            verdicts.append(
                Verdict(
                    check="residue_bound",
                    lhs=float(check.bound),
                    rhs=float(abs(check.residue)),
                    ok=check.ok,
                    note=f"pole={check.pole}",
                )
            )

    report = AuditReport(
        function=r,
        region=region.describe(),
        sylvester=[section for section, _ in sylvester],
        coprimeness=coprimeness,
        spherical=spherical,
        certificates=certs,
        verdicts=verdicts,
        config=config.to_dict(),
        notes=notes,
    )
    failed = [v.check for v in verdicts if not v.ok]
    if failed:
        logger.warning(f"Inequality checks failed: {failed}")
    logger.info(
        f"Audit completed: {len(certs)} pair(s), {len(report.flagged)} flagged, "
        f"{len(verdicts)} verdict(s)"
    )
    return report


def audit(
    input_path: Union[str, Path],
    region_spec: Union[str, Region, None] = None,
    ells: Optional[Sequence[int]] = None,
    threshold: Optional[float] = None,
    config: Optional[AuditConfig] = None,
) -> AuditReport:
    """
    Load a rational function from JSON and audit it.

    Args:
        input_path: File holding {"p": ..., "q": ..., "m": int, "n": int}
        region_spec: Region string (see parse_region) or Region; unit disk by default
        ells: Sylvester indices to report; config.ells when omitted
        threshold: Chordal doublet threshold; config value when omitted
        config: Audit configuration; environment defaults when omitted

    Returns:
        AuditReport; report.exit_code is 2 when doublets are flagged, else 0

    Raises:
        InputError: Malformed input or region
        DegeneracyError: If p and q share a root (sigma_min is reported)
    """
    try:
        config = config or get_config()
        if ells is not None:
            config = replace(config, ells=tuple(ells))
        if threshold is not None:
            config = replace(
                config,
                tolerances=replace(config.tolerances, doublet_threshold=float(threshold)),
            )

        logger.info(f"Starting audit of {input_path}")
        r = load_rational_function(input_path)
        if region_spec is None:
            region = UnitDisk()
        elif isinstance(region_spec, Region):
            region = region_spec
        else:
            region = parse_region(region_spec, base_dir=Path(input_path).parent)
        return audit_function(r, region, config)

    except Exception as e:
        logger.error(f"Audit failed: {str(e)}")
        raise
