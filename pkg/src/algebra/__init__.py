"""Algebra layer - polynomials, rational functions and Sylvester-type matrices."""

from .polynomial import (
    BezoutSolution,
    Polynomial,
    PolynomialPair,
    RationalFunction,
    Roots,
    coeff_norm,
    derivative,
    diophantine_solve,
    evaluate,
    power,
    residue_at_simple_pole,
    reverse,
    roots,
)
from .sylvester import SylvesterMatrix, build, cond2, norms_theorem_check

__all__ = [
    "BezoutSolution",
    "Polynomial",
    "PolynomialPair",
    "RationalFunction",
    "Roots",
    "SylvesterMatrix",
    "build",
    "coeff_norm",
    "cond2",
    "derivative",
    "diophantine_solve",
    "evaluate",
    "norms_theorem_check",
    "power",
    "residue_at_simple_pole",
    "reverse",
    "roots",
]
