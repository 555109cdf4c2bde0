"""
Deterministic global search for the infima and suprema over a region.

A search evaluates the objective on the region grid together with any seed
points (roots, pair midpoints, known extremizers), then polishes the best
candidates with Nelder-Mead in the region chart. The result is an upper
bound on an infimum (a lower bound on a supremum), reported with the grid
metadata needed to judge it. Point sets are searched exactly.
"""

from dataclasses import dataclass
from typing import Callable, Iterable, List, Optional, Tuple

import numpy as np
from scipy.optimize import minimize

from ..utils.config import SearchConfig
from ..utils.errors import RegionError
from ..utils.logger import setup_logger
from .region import FullPlane, InvertedRegion, PointSet, Region, SpherePoint, UnitDisk

logger = setup_logger(__name__)

Evaluator = Callable[[np.ndarray], np.ndarray]

METHOD_GRID = "grid+refine"
METHOD_FINITE = "finite-exact"


@dataclass(frozen=True)
class PlaneObjective:
    """
    A real function on the extended plane.

    `direct` evaluates f(z) for finite z. `inverted`, when given, evaluates
    g(w) = f(1/w) including w = 0, which is the value at infinity.
    """

    direct: Evaluator
    inverted: Optional[Evaluator] = None

    def at(self, z: np.ndarray) -> np.ndarray:
        z = np.asarray(z, dtype=np.complex128)
        if self.inverted is None:
            return np.asarray(self.direct(z), dtype=float)
        out = np.empty(z.shape, dtype=float)
        far = np.abs(z) > 1.0
        if np.any(~far):
            out[~far] = self.direct(z[~far])
        if np.any(far):
            out[far] = self.inverted(1.0 / z[far])
        return out

    def at_point(self, point: SpherePoint) -> float:
        if point.is_infinite:
            return self.at_infinity()
        return float(self.at(np.array([point.value]))[0])

    def at_infinity(self) -> float:
        if self.inverted is None:
            raise RegionError("objective has no evaluator at infinity")
        return float(self.inverted(np.array([0j]))[0])

    def pulled_back(self) -> "PlaneObjective":
        """w -> f(1/w) as a direct objective."""
        if self.inverted is None:
            raise RegionError("objective cannot be pulled back without an inverse")
        return PlaneObjective(direct=self.inverted, inverted=self.direct)


@dataclass(frozen=True)
class SearchResult:
    value: float
    location: SpherePoint
    candidates: int
    density: int
    resolution: float
    method: str

    def metadata(self) -> dict:
        return {
            "candidates": self.candidates,
            "grid_density": self.density,
            "grid_resolution": self.resolution,
            "method": self.method,
        }


def _better(a: float, b: float, maximize: bool) -> bool:
    if np.isnan(b):
        return not np.isnan(a)
    if np.isnan(a):
        return False
    return a > b if maximize else a < b


def _pick(results: Iterable[SearchResult], maximize: bool) -> SearchResult:
    best: Optional[SearchResult] = None
    total = 0
    for result in results:
        total += result.candidates
        if best is None or _better(result.value, best.value, maximize):
            best = result
    assert best is not None
    return SearchResult(
        value=best.value,
        location=best.location,
        candidates=total,
        density=best.density,
        resolution=best.resolution,
        method=best.method,
    )


def _invert_seeds(seeds: List[SpherePoint]) -> List[SpherePoint]:
    return [s.inverse() for s in seeds]


def _polish(
    objective: PlaneObjective,
    region: Region,
    start: complex,
    config: SearchConfig,
    sign: float,
    step: float,
) -> Tuple[complex, float]:
    """Nelder-Mead in the region chart with restarts on a shrinking simplex."""

    def scalar(u: np.ndarray) -> float:
        value = objective.at(np.array([region.project(u)]))[0]
        return sign * value if np.isfinite(value) else np.inf

    x = region.chart(start)
    fx = scalar(x)
    dim = x.size
    for _ in range(config.max_restarts):
        simplex = np.vstack([x] + [x + step * e for e in np.eye(dim)])
        result = minimize(
            scalar,
            x,
            method="Nelder-Mead",
            options={
                "initial_simplex": simplex,
                "xatol": 1e-14,
                "fatol": config.polish_tol,
                "maxiter": 400 * dim,
            },
        )
        improved = result.fun < fx - config.polish_tol * max(1.0, abs(fx))
        if result.fun < fx:
            x, fx = np.asarray(result.x, dtype=float), float(result.fun)
        if not improved:
            break
        step /= 4.0
    z = region.project(x)
    return z, sign * fx


def _search_finite(
    objective: PlaneObjective,
    region: Region,
    config: SearchConfig,
    maximize: bool,
    seeds: List[SpherePoint],
) -> SearchResult:
    sign = -1.0 if maximize else 1.0
    points = [region.sample(config.density)]
    extra = [s.value for s in seeds if not s.is_infinite and region.contains(s.value)]
    if extra:
        points.append(np.array(extra, dtype=np.complex128))
    grid = np.concatenate(points) if points else np.zeros(0, dtype=np.complex128)

    best_value = np.nan
    best_location = SpherePoint.infinity()
    candidates = grid.size

    if grid.size:
        values = objective.at(grid)
        keyed = np.where(np.isnan(values), np.inf, sign * values)
        order = np.argsort(keyed, kind="stable")
        best_value = float(values[order[0]])
        best_location = SpherePoint(complex(grid[order[0]]))

        polish = config.polish and region.chart_dim > 0 and config.polish_starts > 0
        if polish:
            step = region.resolution(config.density) or 1e-3
            seen: List[complex] = []
            for idx in order:
                z0 = complex(grid[idx])
                if any(abs(z0 - s) <= 1e-15 for s in seen):
                    continue
                seen.append(z0)
                z, value = _polish(objective, region, z0, config, sign, step)
                candidates += 1
                if _better(value, best_value, maximize):
                    best_value, best_location = value, SpherePoint(z)
                if len(seen) >= config.polish_starts:
                    break

    if region.includes_infinity and objective.inverted is not None:
        value = objective.at_infinity()
        candidates += 1
        if _better(value, best_value, maximize):
            best_value, best_location = value, SpherePoint.infinity()

    if candidates == 0:
        raise RegionError(f"nothing to search in {region.describe()}")

    method = METHOD_FINITE if isinstance(region, PointSet) else METHOD_GRID
    return SearchResult(
        value=float(best_value),
        location=best_location,
        candidates=candidates,
        density=config.density,
        resolution=region.resolution(config.density),
        method=method,
    )


def extremize(
    objective: PlaneObjective,
    region: Region,
    config: SearchConfig,
    maximize: bool = False,
    seeds: Iterable = (),
) -> SearchResult:
    """
    Minimize (or maximize) an objective over a region.

    Args:
        objective: Function on the extended plane
        region: Search region
        config: Grid density and polish settings
        maximize: Search for the supremum instead of the infimum
        seeds: Extra candidate points; only those inside the region count

    Returns:
        SearchResult with the best value found and where it was attained
    """
    seed_points = [SpherePoint.of(s) for s in seeds]

    if isinstance(region, FullPlane):
        if objective.inverted is None:
            raise RegionError("a full-plane search needs an evaluator at infinity")
        disk = UnitDisk()
        inner = _search_finite(
            objective,
            disk,
            config,
            maximize,
            [s for s in seed_points if not s.is_infinite and abs(s.value) <= 1.0],
        )
        outer = _search_finite(
            objective.pulled_back(),
            disk,
            config,
            maximize,
            [s.inverse() for s in seed_points if s.is_infinite or abs(s.value) > 1.0],
        )
        outer = SearchResult(
            value=outer.value,
            location=outer.location.inverse(),
            candidates=outer.candidates,
            density=outer.density,
            resolution=outer.resolution,
            method=outer.method,
        )
        return _pick([inner, outer], maximize)

    if isinstance(region, InvertedRegion) and objective.inverted is not None:
        pulled = _search_finite(
            objective.pulled_back(),
            region.base,
            config,
            maximize,
            _invert_seeds(seed_points),
        )
        return SearchResult(
            value=pulled.value,
            location=pulled.location.inverse(),
            candidates=pulled.candidates,
            density=pulled.density,
            resolution=pulled.resolution,
            method=pulled.method,
        )

    return _search_finite(objective, region, config, maximize, seed_points)


def discretize(
    region: Region,
    density: int,
    extra: Iterable = (),
) -> PointSet:
    """
    Finite stand-in K-hat = grid of K together with the extra points lying in K.

    The full plane becomes the unit disk grid, its inversion and infinity.
    """
    points: List[complex] = []
    includes_infinity = region.includes_infinity
    if isinstance(region, FullPlane):
        disk = UnitDisk().sample(density)
        points.extend(disk.tolist())
        points.extend((1.0 / disk[disk != 0]).tolist())
    elif isinstance(region, PointSet):
        points.extend(region.points.tolist())
    else:
        points.extend(region.sample(density).tolist())

    for item in extra:
        point = SpherePoint.of(item)
        if point.is_infinite:
            includes_infinity = includes_infinity or isinstance(region, FullPlane)
        elif region.contains(point.value):
            points.append(point.value)
    return PointSet(points, includes_infinity=includes_infinity)
