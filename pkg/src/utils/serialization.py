"""
JSON input and output.

Reals are written as decimal strings with 17 significant digits so reports
are byte-stable and round-trip exactly. Complex numbers are [re, im] pairs.
"""

import json
import math
from pathlib import Path
from typing import Any, List, Tuple, Union

import numpy as np

from .errors import InputError
from .logger import setup_logger

logger = setup_logger(__name__)

INFINITY_MARKER = "inf"


def format_real(x: float) -> str:
    """17-significant-digit decimal string; non-finite values by name."""
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.17g}"


def complex_to_json(z: complex) -> List[str]:
    z = complex(z)
    return [format_real(z.real), format_real(z.imag)]


def _parse_real(raw: Any) -> float:
    if isinstance(raw, bool):
        raise InputError(f"expected a number, got {raw!r}")
    try:
        value = float(raw)
    except (TypeError, ValueError) as e:
        raise InputError(f"expected a number, got {raw!r}") from e
    return value


def complex_from_json(raw: Any) -> complex:
    """Accepts [re, im], a bare real, or decimal strings in either slot."""
    if isinstance(raw, (list, tuple)):
        if len(raw) != 2:
            raise InputError(f"complex numbers are [re, im] pairs, got {raw!r}")
        return complex(_parse_real(raw[0]), _parse_real(raw[1]))
    return complex(_parse_real(raw), 0.0)


def read_json(path: Union[str, Path]) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        logger.error(f"Malformed JSON in {path}: {str(e)}")
        raise InputError(f"malformed JSON in {path}: {e.msg}") from e


def load_points(path: Union[str, Path]) -> Tuple[List[complex], bool]:
    """
    Load a point list for a point-set region.

    Returns:
        Finite points and whether the point at infinity is included
    """
    raw = read_json(path)
    if isinstance(raw, dict):
        raw = raw.get("points", [])
    if not isinstance(raw, list):
        raise InputError(f"{path} must hold a list of points")

    points, includes_infinity = [], False
    for item in raw:
        if item == INFINITY_MARKER:
            includes_infinity = True
        else:
            points.append(complex_from_json(item))
    return points, includes_infinity


def to_jsonable(value: Any) -> Any:
    """Recursively convert report payloads; floats become decimal strings."""
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [to_jsonable(v) for v in value.tolist()]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return format_real(value)
    if isinstance(value, (complex, np.complexfloating)):
        return complex_to_json(value)
    if hasattr(value, "to_json"):
        return value.to_json()
    return value


def dump_json(payload: Any) -> str:
    """Stable JSON text (indent 2, newline-terminated)."""
    return json.dumps(to_jsonable(payload), indent=2, ensure_ascii=False) + "\n"


def write_json(payload: Any, path: Union[str, Path]) -> Path:
    output = Path(path)
    output.parent.mkdir(parents=True, exist_ok=True)
    output.write_text(dump_json(payload), encoding="utf-8")
    logger.info(f"Report written to {output}")
    return output
