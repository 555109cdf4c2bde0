"""Pytest configuration and fixtures."""

import json
import tempfile
from pathlib import Path

import pytest

from src.algebra.polynomial import Polynomial, RationalFunction
from src.utils.config import AuditConfig, SearchConfig


@pytest.fixture
def example_pair():
    """The pair (z, (z - 1)/2) whose coprimeness measure is 1/3."""
    return Polynomial([0.0, 1.0]), Polynomial([-0.5, 0.5])


@pytest.fixture
def example_function() -> RationalFunction:
    """r = 2z/(z - 1)."""
    return RationalFunction(Polynomial([0.0, 2.0]), Polynomial([-1.0, 1.0]), 1, 1)


@pytest.fixture
def reciprocal_function() -> RationalFunction:
    """r = 1/z written in R_{1,1}, so it has a zero at infinity."""
    return RationalFunction(Polynomial([1.0, 0.0]), Polynomial([0.0, 1.0]), 1, 1)


@pytest.fixture
def fast_search() -> SearchConfig:
    """Coarse search settings for unit tests."""
    return SearchConfig(density=16, polish_starts=4)


@pytest.fixture
def audit_config(fast_search) -> AuditConfig:
    """Audit configuration with the coarse search and two workers."""
    return AuditConfig(search=fast_search, workers=2)


@pytest.fixture
def temp_data_dir():
    """Create temporary directory for test data."""
    with tempfile.TemporaryDirectory() as tmpdir:
        temp_path = Path(tmpdir)
        (temp_path / "inputs").mkdir()
        (temp_path / "reports").mkdir()
        yield temp_path


def _write(path: Path, payload) -> Path:
    with open(path, "w") as f:
        json.dump(payload, f)
    return path


@pytest.fixture
def function_file(temp_data_dir) -> Path:
    """2z/(z - 1) as an input file."""
    return _write(
        temp_data_dir / "inputs" / "example.json",
        {"p": {"coeffs": [[0, 0], [2, 0]], "degree": 1}, "q": [-1, 1], "m": 1, "n": 1},
    )


@pytest.fixture
def doublet_file(temp_data_dir) -> Path:
    """(z - 1/2)(z + 3/10) over (z - 1/2 - 1e-8)(z - 1/5): a doublet at distance 1e-8."""
    zero, pole = 0.5, 0.5 + 1e-8
    p = [zero * -0.3, -(zero - 0.3), 1.0]
    q = [pole * 0.2, -pole - 0.2, 1.0]
    return _write(temp_data_dir / "inputs" / "doublet.json", {"p": p, "q": q, "m": 2, "n": 2})


@pytest.fixture
def zero_denominator_file(temp_data_dir) -> Path:
    """q identically zero."""
    return _write(
        temp_data_dir / "inputs" / "zero_q.json", {"p": [1, 1], "q": [0, 0], "m": 1, "n": 1}
    )


@pytest.fixture
def points_file(temp_data_dir) -> Path:
    """The single point 1/3."""
    return _write(temp_data_dir / "inputs" / "points.json", {"points": [[1 / 3, 0]]})
