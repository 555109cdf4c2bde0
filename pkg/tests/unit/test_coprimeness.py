"""Unit tests for the coprimeness measures."""

import numpy as np
import pytest

from src.algebra.polynomial import Polynomial
from src.indicators.coprimeness import (
    epsilon_at,
    epsilon_lower_bound,
    epsilon_of_power,
    epsilon_region,
    root_seeds,
    sensitivity_certificate,
)
from src.indicators.region import FullPlane, PointSet, UnitDisk
from src.utils.config import SearchConfig
from src.utils.errors import DegeneracyError, InputError


@pytest.mark.unit
class TestEpsilonAt:
    """Test cases for the pointwise integrand."""

    def test_example_pair_at_the_third(self, example_pair):
        """Test max(|z|, |z - 1|/2) = 1/3 at z = 1/3."""
        p, q = example_pair

        assert epsilon_at(p, q, 1, 1, 1, 1.0 / 3.0) == pytest.approx(1.0 / 3.0)

    def test_value_at_infinity(self, example_pair):
        """Test the integrand at infinity via the reversed pair."""
        p, q = example_pair

        assert epsilon_at(p, q, 1, 1, 1, None) == pytest.approx(1.0)

    def test_far_points_match_the_formula(self, example_pair):
        """Test the s = 2 integrand at |z| > 1 against the direct formula."""
        p, q = example_pair
        z = 3.0 - 4.0j
        weight = 1.0 + abs(z) ** 2

        expected = np.sqrt(abs(z) ** 2 / weight + abs((z - 1.0) / 2.0) ** 2 / weight)

        assert epsilon_at(p, q, 1, 1, 2, z) == pytest.approx(expected)

    def test_invalid_index(self, example_pair):
        """Test that only s = 1 and s = 2 are accepted."""
        p, q = example_pair

        with pytest.raises(InputError):
            epsilon_at(p, q, 1, 1, 3, 0.0)


@pytest.mark.unit
class TestEpsilonRegion:
    """Test cases for epsilon over a region."""

    def test_example_pair_on_unit_disk(self, example_pair):
        """Test epsilon_1 over the unit disk: 1/3 attained at 1/3."""
        p, q = example_pair

        result = epsilon_region(p, q, 1, 1, 1, UnitDisk(), SearchConfig())

        assert result.value == pytest.approx(1.0 / 3.0, rel=1e-9)
        assert result.argmin.value == pytest.approx(1.0 / 3.0, abs=1e-6)

    def test_example_pair_on_plane(self, example_pair, fast_search):
        """Test that the plane gives the same value, since |z| > 1 yields at least 1."""
        p, q = example_pair

        result = epsilon_region(p, q, 1, 1, 1, FullPlane(), fast_search, seeds=[1.0 / 3.0])

        assert result.value == pytest.approx(1.0 / 3.0, rel=1e-9)

    def test_lower_bound_is_tight(self, example_pair):
        """Test 1/||S^(0)^-1||_1 = 1/3 = epsilon_1 for the example pair."""
        p, q = example_pair

        bound = epsilon_lower_bound(p, q, 1, 1, ell=1, s=1)
        value = epsilon_region(p, q, 1, 1, 1, PointSet([1.0 / 3.0])).value

        assert bound == pytest.approx(1.0 / 3.0)
        assert value == pytest.approx(bound)

    @pytest.mark.parametrize("ell", [0, 1, 2])
    def test_s2_lower_bound_holds(self, example_pair, fast_search, ell):
        """Test epsilon_2 over the disk dominates the Sylvester bound."""
        p, q = example_pair

        value = epsilon_region(p, q, 1, 1, 2, UnitDisk(), fast_search).value

        assert value >= epsilon_lower_bound(p, q, 1, 1, ell=ell, s=2) * (1.0 - 1e-9)

    def test_shared_root_vanishes(self, fast_search):
        """Test that a common root in K drives epsilon to zero."""
        p = Polynomial([-0.5, 1.0])
        q = Polynomial([-0.5, 0.5, 1.0])

        result = epsilon_region(p, q, 1, 2, 1, UnitDisk(), fast_search)

        assert result.value < 1e-12
        assert result.argmin.value == pytest.approx(0.5)

    def test_shared_root_outside_region(self, fast_search):
        """Test that a common root at z = 2 only vanishes over the plane."""
        p = Polynomial([-2.0, 1.0])
        q = Polynomial([-2.0, -1.0, 1.0])

        in_disk = epsilon_region(p, q, 1, 2, 1, UnitDisk(), fast_search).value
        in_plane = epsilon_region(p, q, 1, 2, 1, FullPlane(), fast_search).value

        assert in_disk > 0.1
        assert in_plane < 1e-12

    def test_lower_bound_degenerate(self):
        """Test that the bound is undefined when S is singular."""
        p = Polynomial([-1.0, 1.0])
        q = Polynomial([-1.0, 0.0, 1.0])

        with pytest.raises(DegeneracyError):
            epsilon_lower_bound(p, q, 1, 2, ell=1, s=1)

    def test_root_seeds_include_infinity(self):
        """Test that a degree deficiency adds the point at infinity."""
        seeds = root_seeds(Polynomial([1.0, 0.0]), Polynomial([0.0, 1.0]))

        assert any(s.is_infinite for s in seeds)
        assert any(not s.is_infinite and s.value == 0 for s in seeds)


@pytest.mark.unit
class TestEpsilonOfPower:
    """Test cases for powers of a pair."""

    @pytest.mark.parametrize("k", [1, 2, 5])
    def test_power_law(self, example_pair, k):
        """Test epsilon_1(p^k, q^k) = 3^-k for the example pair."""
        p, q = example_pair

        result = epsilon_of_power(p, q, 1, 1, k, UnitDisk(), SearchConfig())

        assert result.value == pytest.approx(3.0**-k, rel=1e-8)
        assert result.s == 1

    def test_invalid_power(self, example_pair):
        """Test that k must be positive."""
        p, q = example_pair

        with pytest.raises(InputError):
            epsilon_of_power(p, q, 1, 1, 0, UnitDisk())


@pytest.mark.unit
class TestSensitivity:
    """Test cases for the perturbation statements."""

    @pytest.mark.parametrize("s", [1, 2])
    def test_small_perturbation(self, example_pair, fast_search, s):
        """Test that a small perturbation keeps both ratios in their windows."""
        p, q = example_pair
        p_tilde = p + Polynomial([1e-4, -1e-4])

        verdict = sensitivity_certificate(p, q, p_tilde, q, 1, 1, s, UnitDisk(), fast_search)

        assert verdict.eps_hypothesis
        assert verdict.eps_ok
        assert verdict.cond_hypothesis
        assert verdict.cond_ok
        assert verdict.ok

    def test_large_perturbation_is_vacuous(self, example_pair, fast_search):
        """Test that unmet hypotheses do not fail the verdict."""
        p, q = example_pair
        p_tilde = p + Polynomial([1.0, 1.0])

        verdict = sensitivity_certificate(p, q, p_tilde, q, 1, 1, 1, UnitDisk(), fast_search)

        assert not verdict.eps_hypothesis
        assert not verdict.cond_hypothesis
        assert verdict.ok
        assert verdict.to_dict()["epsilon"]["window"] == [0.5, 1.5]
