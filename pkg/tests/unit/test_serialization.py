"""Unit tests for JSON input and output."""

import json

import numpy as np
import pytest

from src.indicators.region import SpherePoint
from src.utils.errors import InputError
from src.utils.serialization import (
    complex_from_json,
    dump_json,
    format_real,
    load_points,
    to_jsonable,
    write_json,
)


@pytest.mark.unit
class TestFormatting:
    """Test cases for number formatting."""

    def test_seventeen_digits(self):
        """Test that reals keep every bit."""
        text = format_real(0.1)

        assert text == "0.10000000000000001"
        assert float(text) == 0.1

    def test_non_finite(self):
        """Test the names of non-finite values."""
        assert format_real(float("inf")) == "inf"
        assert format_real(-np.inf) == "-inf"
        assert format_real(float("nan")) == "nan"

    def test_to_jsonable(self):
        """Test conversion of numpy scalars, complex numbers and sphere points."""
        payload = to_jsonable(
            {
                "flag": np.bool_(True),
                "count": np.int64(3),
                "value": np.float64(0.5),
                "z": 1 - 2j,
                "point": SpherePoint.infinity(),
                "array": np.array([1.0, 2.0]),
            }
        )

        assert payload == {
            "flag": True,
            "count": 3,
            "value": "0.5",
            "z": ["1", "-2"],
            "point": "inf",
            "array": ["1", "2"],
        }

    def test_dump_is_stable(self):
        """Test that dumping twice gives identical text ending in a newline."""
        payload = {"a": 1.0 / 3.0, "b": [1j]}

        assert dump_json(payload) == dump_json(payload)
        assert dump_json(payload).endswith("\n")


@pytest.mark.unit
class TestReading:
    """Test cases for reading inputs."""

    def test_complex_forms(self):
        """Test pairs, bare reals and decimal strings."""
        assert complex_from_json([1, 2]) == 1 + 2j
        assert complex_from_json(0.5) == 0.5
        assert complex_from_json(["0.25", "-1"]) == 0.25 - 1j

    @pytest.mark.parametrize("raw", [[1, 2, 3], True, "abc", None])
    def test_bad_complex(self, raw):
        """Test that malformed numbers raise InputError."""
        with pytest.raises(InputError):
            complex_from_json(raw)

    def test_points_with_infinity(self, temp_data_dir):
        """Test the infinity marker in a points file."""
        path = temp_data_dir / "inputs" / "pts.json"
        path.write_text(json.dumps([[0, 1], "inf", 0.5]))

        points, includes_infinity = load_points(path)

        assert points == [1j, 0.5]
        assert includes_infinity


@pytest.mark.unit
class TestWriting:
    """Test cases for writing reports."""

    def test_round_trip_of_reals(self, temp_data_dir):
        """Test that written reals parse back to the same doubles."""
        value = np.pi / 7.0
        payload = {"x": value, "z": complex(value, -value)}
        path = write_json(payload, temp_data_dir / "out" / "r.json")

        payload = json.loads(path.read_text())

        assert float(payload["x"]) == value
        assert complex(*map(float, payload["z"])) == complex(value, -value)
