"""Indicators layer - regions, coprimeness, spherical derivatives and distances."""

from .coprimeness import (
    EpsilonResult,
    epsilon_at,
    epsilon_lower_bound,
    epsilon_of_power,
    epsilon_region,
    sensitivity_certificate,
)
from .metrics import chi_region, coeff_distance, distances_inequality_check
from .region import (
    Disk,
    FullPlane,
    PointSet,
    Region,
    Segment,
    SpherePoint,
    UnitDisk,
    parse_region,
)
from .spherical import (
    SphericalIndicators,
    chordal,
    lipschitz_ratio_sup,
    nu_at,
    nu_sup,
    power_rule_check,
    residue_bound_check,
    rho_at,
    rho_sup,
    sigma,
)

__all__ = [
    "Disk",
    "EpsilonResult",
    "FullPlane",
    "PointSet",
    "Region",
    "Segment",
    "SphericalIndicators",
    "SpherePoint",
    "UnitDisk",
    "chi_region",
    "chordal",
    "coeff_distance",
    "distances_inequality_check",
    "epsilon_at",
    "epsilon_lower_bound",
    "epsilon_of_power",
    "epsilon_region",
    "lipschitz_ratio_sup",
    "nu_at",
    "nu_sup",
    "parse_region",
    "power_rule_check",
    "residue_bound_check",
    "rho_at",
    "rho_sup",
    "sensitivity_certificate",
    "sigma",
]
