"""Unit tests for chordal geometry and spherical derivatives."""

import numpy as np
import pytest

from src.algebra.polynomial import Polynomial, RationalFunction
from src.indicators.region import Disk, FullPlane, PointSet, Segment, SpherePoint, UnitDisk
from src.indicators.spherical import (
    chordal,
    geodesic_points,
    lipschitz_check,
    lipschitz_ratio_sup,
    nu_at,
    nu_sup,
    power_rule_check,
    residue_bound_check,
    rho_at,
    rho_sup,
    sigma,
    spherical_coprime_check,
    spherical_indicators,
)
from src.utils.errors import HypothesisError, IndeterminateError, InputError, RegionError


@pytest.mark.unit
class TestChordal:
    """Test cases for the chordal metric."""

    def test_known_distances(self):
        """Test distances between 0, 1, -1 and infinity."""
        assert chordal(0.0, None) == pytest.approx(1.0)
        assert chordal(1.0, -1.0) == pytest.approx(1.0)
        assert chordal(0.0, 1.0) == pytest.approx(1.0 / np.sqrt(2.0))
        assert chordal(None, SpherePoint.infinity()) == 0.0

    def test_inversion_invariance(self):
        """Test chi(1/x, 1/y) = chi(x, y)."""
        x, y = 0.3 + 2.0j, -1.5 + 0.1j

        assert chordal(1.0 / x, 1.0 / y) == pytest.approx(chordal(x, y))

    def test_geodesic_distance(self):
        """Test that the geodesic from 0 to infinity is a quarter turn."""
        assert sigma(0.0, None) == pytest.approx(np.pi / 2.0)

    def test_geodesic_points_join_endpoints(self):
        """Test that sampled geodesic points start and end at the endpoints."""
        path = geodesic_points(0.0, 2.0, count=5)

        assert len(path) == 5
        assert path[0].value == pytest.approx(0.0, abs=1e-12)
        assert path[-1].value == pytest.approx(2.0)
        assert all(abs(p.value.imag) < 1e-12 for p in path)


@pytest.mark.unit
class TestSphericalDerivative:
    """Test cases for rho and nu."""

    def test_rho_of_example(self, example_function):
        """Test rho(2z/(z - 1)) = 2 / (4|z|^2 + |z - 1|^2)."""
        assert rho_at(example_function, 1.0 / 3.0) == pytest.approx(9.0 / 4.0)
        assert rho_at(example_function, 0.2) == pytest.approx(2.5)

    def test_rho_is_finite_at_pole(self, example_function):
        """Test rho at the pole z = 1."""
        assert rho_at(example_function, 1.0) == pytest.approx(0.5)

    def test_rho_vanishes_at_infinity(self, example_function):
        """Test that rho tends to zero at infinity."""
        assert rho_at(example_function, None) == 0.0

    def test_nu_far_from_origin(self, example_function):
        """Test nu at |z| > 1 against (1 + |z|^2) rho."""
        assert nu_at(example_function, 3.0) == pytest.approx(10.0 * 2.0 / 40.0)

    def test_common_root_is_indeterminate(self):
        """Test that rho is undefined where p and q vanish together."""
        r = RationalFunction(Polynomial([-1.0, 1.0]), Polynomial([-1.0, 1.0]), 1, 1)

        with pytest.raises(IndeterminateError):
            rho_at(r, 1.0)

    def test_rho_sup_over_segment(self, example_function, fast_search):
        """Test rho over [0, 1]: maximum 5/2 at z = 1/5."""
        result = rho_sup(example_function, Segment(0.0, 1.0), fast_search)

        assert result.value == pytest.approx(2.5, rel=1e-8)
        assert result.argmax.value.real == pytest.approx(0.2, abs=1e-4)

    def test_rho_sup_over_single_point(self, example_function, fast_search):
        """Test rho over the point set {1/3}."""
        result = rho_sup(example_function, PointSet([1.0 / 3.0]), fast_search)

        assert result.value == pytest.approx(9.0 / 4.0)

    def test_rho_sup_needs_bounded_region(self, example_function, fast_search):
        """Test that rho_K is refused on the plane."""
        with pytest.raises(RegionError):
            rho_sup(example_function, FullPlane(), fast_search)

    def test_indicators_on_disk(self, example_function, fast_search):
        """Test rho_D <= nu_D <= 2 rho_D."""
        indicators = spherical_indicators(example_function, UnitDisk(), fast_search)

        assert indicators.rho_K == pytest.approx(2.5, rel=1e-6)
        assert indicators.rho_K <= indicators.nu_K <= 2.0 * indicators.rho_K * (1 + 1e-9)

    def test_indicators_on_plane(self, example_function, fast_search):
        """Test that only nu is reported on an unbounded region."""
        indicators = spherical_indicators(example_function, FullPlane(), fast_search)

        assert np.isnan(indicators.rho_K)
        assert indicators.nu_K >= nu_sup(example_function, UnitDisk(), fast_search).value * (
            1 - 1e-6
        )


@pytest.mark.unit
class TestResidueBound:
    """Test cases for the residue bound."""

    def test_example_pole(self, example_function, fast_search):
        """Test |residue| = 2 >= 1/rho_D = 0.4 at z = 1."""
        checks = residue_bound_check(example_function, UnitDisk(), config=fast_search)

        assert len(checks) == 1
        assert checks[0].residue == pytest.approx(2.0)
        assert checks[0].bound == pytest.approx(0.4, rel=1e-6)
        assert checks[0].ok

    def test_equality_for_reciprocal(self, reciprocal_function, fast_search):
        """Test that 1/z attains the bound: residue 1 and rho_D = 1."""
        checks = residue_bound_check(reciprocal_function, UnitDisk(), config=fast_search)

        assert checks[0].residue == pytest.approx(1.0)
        assert checks[0].bound == pytest.approx(1.0)
        assert checks[0].ok

    def test_poles_outside_are_ignored(self, example_function, fast_search):
        """Test that a pole outside K is not checked."""
        assert residue_bound_check(example_function, Disk(0.0, 0.5), config=fast_search) == []

    def test_double_pole_is_skipped(self, fast_search):
        """Test that a double pole is reported without a verdict."""
        r = RationalFunction(Polynomial([1.0]), Polynomial([0.0, 0.0, 1.0]), 0, 2)

        checks = residue_bound_check(r, UnitDisk(), rho_K=1.0)

        assert checks
        assert all(c.ok is None for c in checks)


@pytest.mark.unit
class TestPowerAndLipschitz:
    """Test cases for the power rule and the Lipschitz bounds."""

    @pytest.mark.parametrize("m", [1, 2, 5])
    def test_power_rule(self, example_function, m):
        """Test rho(r^m) <= 2m rho(r) on a spread of points."""
        zs = np.array([0.0, 0.2, 0.5j, -0.7 + 0.1j, 0.99])

        assert power_rule_check(example_function, m, zs).ok

    def test_power_rule_invalid(self, example_function):
        """Test that m must be positive."""
        with pytest.raises(InputError):
            power_rule_check(example_function, 0, 0.5)

    def test_euclid_lipschitz(self, example_function, fast_search):
        """Test chi(r(z1), r(z2)) <= rho_K |z1 - z2| on [0, 1]."""
        verdict, ratio, rho = lipschitz_check(
            example_function, Segment(0.0, 1.0), "euclid", pair_samples=2000, config=fast_search
        )

        assert verdict.ok
        assert ratio <= rho * (1 + 1e-6)
        assert ratio > 0.9 * rho

    def test_chordal_lipschitz(self, example_function, fast_search):
        """Test chi(r(z1), r(z2)) <= (pi/2) nu_K chi(z1, z2) on the disk."""
        verdict, _, _ = lipschitz_check(
            example_function, UnitDisk(), "chordal", pair_samples=2000, config=fast_search
        )

        assert verdict.ok

    def test_lipschitz_needs_convexity(self, example_function):
        """Test that a non-convex region is refused."""
        with pytest.raises(RegionError):
            lipschitz_ratio_sup(example_function, PointSet([0.0, 1.0]), "euclid")
        with pytest.raises(InputError):
            lipschitz_ratio_sup(example_function, UnitDisk(), "taxicab")


@pytest.mark.unit
class TestSphericalCoprime:
    """Test cases for the spherical coprimeness bound."""

    def test_bound_on_unit_disk(self, example_function, fast_search):
        """Test eps_1 / (4 max(m||p||_1, n||q||_1)) <= 1/nu_D <= 1/rho_D."""
        verdict = spherical_coprime_check(example_function, UnitDisk(), fast_search)

        assert verdict.ok
        assert verdict.inv_nu <= verdict.inv_rho * (1 + 1e-9)
        assert verdict.sharp_bound == pytest.approx(2.0 * verdict.bound)

    def test_hypothesis_required(self, fast_search):
        """Test that m != n outside the unit disk is refused."""
        r = RationalFunction(Polynomial([1.0, 1.0]), Polynomial([2.0, 0.0, 1.0]), 1, 2)

        with pytest.raises(HypothesisError):
            spherical_coprime_check(r, Disk(0.0, 2.0), fast_search)
