"""
Regions K of the extended complex plane.

Every region knows how to sample itself on a deterministic grid, how to map
an unconstrained chart vector onto itself for local polishing, and what its
image under z -> 1/z is. FullPlane is never sampled directly: searches split
it into the closed unit disk and the inverted unit disk.
"""

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from ..utils.errors import RegionError
from ..utils.logger import setup_logger
from ..utils.serialization import INFINITY_MARKER, complex_to_json, load_points

logger = setup_logger(__name__)

MEMBERSHIP_TOL = 1e-12


@dataclass(frozen=True)
class SpherePoint:
    """A point of C or the point at infinity (value None)."""

    value: Optional[complex] = None

    @classmethod
    def of(cls, z: Union[complex, float, None, "SpherePoint"]) -> "SpherePoint":
        if isinstance(z, SpherePoint):
            return z
        if z is None:
            return cls(None)
        z = complex(z)
        if math.isinf(z.real) or math.isinf(z.imag):
            return cls(None)
        return cls(z)

    @classmethod
    def infinity(cls) -> "SpherePoint":
        return cls(None)

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def inverse(self) -> "SpherePoint":
        if self.value is None:
            return SpherePoint(0j)
        if self.value == 0:
            return SpherePoint(None)
        return SpherePoint(1.0 / self.value)

    @property
    def sort_key(self) -> Tuple[int, float, float]:
        if self.value is None:
            return (1, 0.0, 0.0)
        return (0, self.value.real, self.value.imag)

    def to_json(self):
        return INFINITY_MARKER if self.value is None else complex_to_json(self.value)

    def __str__(self) -> str:
        return "inf" if self.value is None else f"{self.value:.6g}"


class Region(ABC):
    """A set K of the extended plane on which indicators are taken."""

    is_convex: bool = False
    is_spherically_convex: bool = False
    is_bounded: bool = True
    includes_infinity: bool = False
    chart_dim: int = 0

    @abstractmethod
    def contains(self, z: complex, tol: float = MEMBERSHIP_TOL) -> bool:
        """Membership of a finite point."""

    @abstractmethod
    def sample(self, density: int) -> np.ndarray:
        """Deterministic finite grid covering the region."""

    @abstractmethod
    def invert(self) -> "Region":
        """Image under z -> 1/z."""

    @abstractmethod
    def describe(self) -> str:
        """Region in the command-line syntax."""

    @property
    @abstractmethod
    def min_modulus(self) -> float:
        pass

    @property
    @abstractmethod
    def max_modulus(self) -> float:
        pass

    def resolution(self, density: int) -> float:
        """Grid spacing reported alongside every inf/sup."""
        return 0.0

    def project(self, u: np.ndarray) -> complex:
        """Map a chart vector onto the region."""
        raise RegionError(f"{self.describe()} has no continuous chart")

    def chart(self, z: complex) -> np.ndarray:
        """Chart vector of a region point, inverse of `project` on the region."""
        raise RegionError(f"{self.describe()} has no continuous chart")

    def within_unit_disk(self, slack: float = MEMBERSHIP_TOL) -> bool:
        """K is a subset of the closed unit disk."""
        return not self.includes_infinity and self.max_modulus <= 1.0 + slack

    def outside_unit_disk(self, slack: float = MEMBERSHIP_TOL) -> bool:
        """1/K is a subset of the closed unit disk."""
        return self.min_modulus >= 1.0 - slack

    def __str__(self) -> str:
        return self.describe()


def _check_density(density: int) -> None:
    if density < 1:
        raise RegionError(f"sampling density must be >= 1, got {density}")


class Disk(Region):
    """Closed disk |z - center| <= radius."""

    is_convex = True
    is_spherically_convex = True
    chart_dim = 2

    def __init__(self, center: complex, radius: float):
        if not radius > 0 or not math.isfinite(radius):
            raise RegionError(f"disk radius must be positive and finite, got {radius}")
        self.center = complex(center)
        self.radius = float(radius)

    def contains(self, z: complex, tol: float = MEMBERSHIP_TOL) -> bool:
        return abs(complex(z) - self.center) <= self.radius * (1.0 + tol) + tol

    def sample(self, density: int) -> np.ndarray:
        """Center plus `density` rings of 6*density equally spaced points."""
        _check_density(density)
        fractions = np.arange(1, density + 1) / density
        angles = 2.0 * np.pi * np.arange(6 * density) / (6 * density)
        ring = np.exp(1j * angles)
        grid = (self.radius * fractions)[:, None] * ring[None, :]
        return np.concatenate([[self.center], (self.center + grid).ravel()])

    def resolution(self, density: int) -> float:
        return self.radius / density

    def project(self, u: np.ndarray) -> complex:
        w = complex(u[0], u[1])
        modulus = abs(w)
        if modulus > self.radius:
            w *= self.radius / modulus
        return self.center + w

    def chart(self, z: complex) -> np.ndarray:
        w = complex(z) - self.center
        return np.array([w.real, w.imag])

    @property
    def min_modulus(self) -> float:
        return max(0.0, abs(self.center) - self.radius)

    @property
    def max_modulus(self) -> float:
        return abs(self.center) + self.radius

    def invert(self) -> Region:
        gap = abs(self.center) ** 2 - self.radius**2
        if gap > 0 and abs(self.center) - self.radius > MEMBERSHIP_TOL:
            return Disk(self.center.conjugate() / gap, self.radius / gap)
        return InvertedRegion(self)

    def describe(self) -> str:
        return f"disk:{self.center.real:g},{self.center.imag:g},{self.radius:g}"

    def __eq__(self, other: object) -> bool:
        return (
            type(other) is type(self)
            and self.center == other.center
            and self.radius == other.radius
        )

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.center, self.radius))


class UnitDisk(Disk):
    """Closed unit disk D."""

    def __init__(self):
        super().__init__(0j, 1.0)

    def describe(self) -> str:
        return "unit-disk"


def unit_disk() -> UnitDisk:
    return UnitDisk()


class Segment(Region):
    """Closed segment [a, b]."""

    is_convex = True
    chart_dim = 1

    def __init__(self, a: complex, b: complex):
        self.a = complex(a)
        self.b = complex(b)

    def contains(self, z: complex, tol: float = MEMBERSHIP_TOL) -> bool:
        z = complex(z)
        span = self.b - self.a
        length = abs(span)
        if length == 0:
            return abs(z - self.a) <= tol * (1.0 + abs(self.a))
        t = ((z - self.a) * span.conjugate()).real / length**2
        t = min(max(t, 0.0), 1.0)
        return abs(z - (self.a + t * span)) <= tol * (1.0 + length)

    def sample(self, density: int) -> np.ndarray:
        _check_density(density)
        t = np.arange(density + 1) / density
        return self.a + t * (self.b - self.a)

    def resolution(self, density: int) -> float:
        return abs(self.b - self.a) / density

    def project(self, u: np.ndarray) -> complex:
        t = min(max(float(u[0]), 0.0), 1.0)
        return self.a + t * (self.b - self.a)

    def chart(self, z: complex) -> np.ndarray:
        span = self.b - self.a
        if span == 0:
            return np.array([0.0])
        return np.array([((complex(z) - self.a) * span.conjugate()).real / abs(span) ** 2])

    @property
    def min_modulus(self) -> float:
        span = self.b - self.a
        if span == 0:
            return abs(self.a)
        t = min(max((-self.a * span.conjugate()).real / abs(span) ** 2, 0.0), 1.0)
        return abs(self.a + t * span)

    @property
    def max_modulus(self) -> float:
        return max(abs(self.a), abs(self.b))

    def invert(self) -> Region:
        return InvertedRegion(self)

    def describe(self) -> str:
        return (
            f"segment:{self.a.real:g},{self.a.imag:g},{self.b.real:g},{self.b.imag:g}"
        )


class PointSet(Region):
    """A finite set of points, optionally with the point at infinity."""

    def __init__(self, points: Sequence[complex], includes_infinity: bool = False):
        finite: List[complex] = []
        for z in points:
            z = complex(z)
            if math.isinf(z.real) or math.isinf(z.imag):
                includes_infinity = True
            else:
                finite.append(z)
        unique = list(dict.fromkeys(finite))
        if not unique and not includes_infinity:
            raise RegionError("point set is empty")
        self.points = np.array(unique, dtype=np.complex128)
        self.includes_infinity = includes_infinity
        single = len(unique) + int(includes_infinity) == 1
        self.is_convex = single and not includes_infinity
        self.is_spherically_convex = single
        self.is_bounded = not includes_infinity

    def contains(self, z: complex, tol: float = MEMBERSHIP_TOL) -> bool:
        z = complex(z)
        return bool(np.any(np.abs(self.points - z) <= tol * (1.0 + np.abs(self.points))))

    def sample(self, density: int = 1) -> np.ndarray:
        return self.points.copy()

    @property
    def min_modulus(self) -> float:
        if self.points.size == 0:
            return math.inf
        return float(np.abs(self.points).min())

    @property
    def max_modulus(self) -> float:
        if self.includes_infinity:
            return math.inf
        return float(np.abs(self.points).max())

    def invert(self) -> "PointSet":
        finite = [1.0 / z for z in self.points if z != 0]
        if self.includes_infinity:
            finite.append(0j)
        return PointSet(finite, includes_infinity=bool(np.any(self.points == 0)))

    def describe(self) -> str:
        listed = ",".join(f"{z:g}" for z in self.points)
        if self.includes_infinity:
            listed = f"{listed},inf" if listed else "inf"
        return f"points:[{listed}]"


class FullPlane(Region):
    """The whole extended plane."""

    is_convex = True
    is_spherically_convex = True
    is_bounded = False
    includes_infinity = True

    def contains(self, z: complex, tol: float = MEMBERSHIP_TOL) -> bool:
        return True

    def sample(self, density: int) -> np.ndarray:
        raise RegionError(
            "the full plane is not sampled directly; search the unit disk and "
            "its inversion instead"
        )

    @property
    def min_modulus(self) -> float:
        return 0.0

    @property
    def max_modulus(self) -> float:
        return math.inf

    def invert(self) -> "FullPlane":
        return self

    def describe(self) -> str:
        return "plane"


class InvertedRegion(Region):
    """1/K for a base region K whose image has no simpler description."""

    def __init__(self, base: Region):
        self.base = base

    @property
    def is_bounded(self) -> bool:  # type: ignore[override]
        return self.base.min_modulus > 0

    @property
    def includes_infinity(self) -> bool:  # type: ignore[override]
        return self.base.contains(0j)

    def contains(self, z: complex, tol: float = MEMBERSHIP_TOL) -> bool:
        z = complex(z)
        if z == 0:
            return self.base.includes_infinity
        return self.base.contains(1.0 / z, tol)

    def sample(self, density: int) -> np.ndarray:
        base = self.base.sample(density)
        base = base[base != 0]
        return 1.0 / base

    def resolution(self, density: int) -> float:
        return self.base.resolution(density)

    @property
    def min_modulus(self) -> float:
        top = self.base.max_modulus
        return 0.0 if math.isinf(top) else 1.0 / top

    @property
    def max_modulus(self) -> float:
        bottom = self.base.min_modulus
        return math.inf if bottom == 0 else 1.0 / bottom

    def invert(self) -> Region:
        return self.base

    def describe(self) -> str:
        return f"invert({self.base.describe()})"


def _floats(body: str, count: int, spec: str) -> List[float]:
    parts = body.split(",")
    if len(parts) != count:
        raise RegionError(f"region '{spec}' needs {count} comma-separated numbers")
    try:
        return [float(x) for x in parts]
    except ValueError as e:
        raise RegionError(f"region '{spec}' has a non-numeric field") from e


def parse_region(spec: str, base_dir: Optional[Path] = None) -> Region:
    """
    Parse the command-line region syntax.

    Accepted forms: "disk:cx,cy,r", "unit-disk", "segment:ax,ay,bx,by",
    "points:file.json", "plane".
    """
    spec = spec.strip()
    kind, _, body = spec.partition(":")
    kind = kind.lower()

    if kind == "unit-disk":
        return UnitDisk()
    if kind == "plane":
        return FullPlane()
    if kind == "disk":
        cx, cy, radius = _floats(body, 3, spec)
        return Disk(complex(cx, cy), radius)
    if kind == "segment":
        ax, ay, bx, by = _floats(body, 4, spec)
        return Segment(complex(ax, ay), complex(bx, by))
    if kind == "points":
        if not body:
            raise RegionError("points region needs a JSON file path")
        path = Path(body)
        if base_dir is not None and not path.is_absolute():
            path = base_dir / path
        points, includes_infinity = load_points(path)
        return PointSet(points, includes_infinity=includes_infinity)

    raise RegionError(f"unknown region '{spec}'")
