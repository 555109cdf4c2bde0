"""JSON forms of polynomials and rational functions."""

from pathlib import Path
from typing import Any, Union

from ..utils.errors import InputError
from ..utils.logger import setup_logger
from ..utils.serialization import complex_from_json, complex_to_json, read_json
from .polynomial import Polynomial, RationalFunction

logger = setup_logger(__name__)


def polynomial_to_json(poly: Polynomial) -> dict:
    return {
        "coeffs": [complex_to_json(c) for c in poly.coeffs],
        "degree": poly.nominal_degree,
    }


def polynomial_from_json(raw: Any) -> Polynomial:
    """Read {"coeffs": [...], "degree": d}; a bare coefficient list is accepted too."""
    if isinstance(raw, dict):
        if "coeffs" not in raw:
            raise InputError("polynomial object needs a 'coeffs' field")
        coeffs = [complex_from_json(c) for c in raw["coeffs"]]
        if not coeffs:
            raise InputError("polynomial needs at least one coefficient")
        poly = Polynomial(coeffs)
        if "degree" in raw:
            poly = poly.padded(int(raw["degree"]))
        return poly
    if isinstance(raw, list):
        if not raw:
            raise InputError("polynomial needs at least one coefficient")
        return Polynomial([complex_from_json(c) for c in raw])
    raise InputError(f"cannot read a polynomial from {type(raw).__name__}")


def rational_function_to_json(r: RationalFunction) -> dict:
    return {
        "p": polynomial_to_json(r.p),
        "q": polynomial_to_json(r.q),
        "m": r.m,
        "n": r.n,
    }


def rational_function_from_json(raw: Any) -> RationalFunction:
    if not isinstance(raw, dict):
        raise InputError("rational function input must be a JSON object")
    missing = [key for key in ("p", "q") if key not in raw]
    if missing:
        raise InputError(f"rational function input is missing {missing}")
    p = polynomial_from_json(raw["p"])
    q = polynomial_from_json(raw["q"])
    m = int(raw.get("m", p.nominal_degree))
    n = int(raw.get("n", q.nominal_degree))
    return RationalFunction(p, q, m, n)


def load_rational_function(path: Union[str, Path]) -> RationalFunction:
    """Load {"p": Polynomial, "q": Polynomial, "m": int, "n": int} from a file."""
    logger.info(f"Loading rational function from {path}")
    return rational_function_from_json(read_json(path))
