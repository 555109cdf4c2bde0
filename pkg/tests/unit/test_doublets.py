"""Unit tests for zero-pole pairing and doublet certificates."""

import numpy as np
import pytest

from src.algebra.polynomial import Polynomial, RationalFunction
from src.audit.doublets import (
    certificates,
    detect,
    robust_certificates,
    zero_pole_pairs,
)
from src.indicators.region import Segment, UnitDisk
from src.utils.errors import DegeneracyError


def _doublet(distance: float = 1e-8) -> RationalFunction:
    """(z - 1/2)(z + 3/10) / ((z - 1/2 - distance)(z - 1/5))."""
    pole = 0.5 + distance
    p = Polynomial([-0.15, -0.2, 1.0])
    q = Polynomial([pole * 0.2, -pole - 0.2, 1.0])
    return RationalFunction(p, q, 2, 2)


@pytest.mark.unit
class TestZeroPolePairs:
    """Test cases for zero_pole_pairs."""

    def test_example_pair(self, example_function):
        """Test the single pair (0, 1) of 2z/(z - 1)."""
        pairs = zero_pole_pairs(example_function)

        assert len(pairs) == 1
        assert pairs[0].zero.value == pytest.approx(0.0, abs=1e-15)
        assert pairs[0].pole.value == pytest.approx(1.0)
        assert pairs[0].chi == pytest.approx(1.0 / np.sqrt(2.0))
        assert pairs[0].euclid == pytest.approx(1.0)

    def test_zero_at_infinity(self, reciprocal_function):
        """Test that 1/z in R_{1,1} pairs infinity with 0."""
        pairs = zero_pole_pairs(reciprocal_function)

        assert len(pairs) == 1
        assert pairs[0].zero.is_infinite
        assert pairs[0].chi == pytest.approx(1.0)
        assert pairs[0].euclid is None
        assert not pairs[0].finite

    def test_ascending_chordal_distance(self):
        """Test that all four pairs come closest first."""
        pairs = zero_pole_pairs(_doublet())

        assert len(pairs) == 4
        chis = [pair.chi for pair in pairs]
        assert chis == sorted(chis)
        assert pairs[0].chi < 1e-7

    def test_coincident_pair_is_degenerate(self):
        """Test that a shared root is marked instead of raising."""
        r = RationalFunction(Polynomial([-0.5, 1.0]), Polynomial([-0.5, 1.0]), 1, 1)

        pairs = zero_pole_pairs(r)

        assert pairs[0].degenerate


@pytest.mark.unit
class TestCertificates:
    """Test cases for the separation certificates."""

    def test_example_function(self, example_function, fast_search):
        """Test that every bound holds for 2z/(z - 1) on the unit disk."""
        certs = certificates(example_function, UnitDisk(), config=fast_search)

        assert len(certs) == 1
        cert = certs[0]
        assert cert.ok
        assert not cert.flagged
        assert cert.check("spherical_rho_bound").bound == pytest.approx(0.4, rel=1e-6)
        assert cert.check("cond_bound").applicable
        assert set(cert.bounds) == {
            "cond_bound",
            "coprime_bound_s1",
            "coprime_weak_bound_s1",
            "coprime_bound_s2",
            "coprime_weak_bound_s2",
            "spherical_rho_bound",
            "spherical_nu_bound",
        }

    def test_pair_at_infinity(self, reciprocal_function, fast_search):
        """Test that only the chordal coprimeness bounds apply to (infinity, 0)."""
        cert = certificates(reciprocal_function, UnitDisk(), config=fast_search)[0]

        assert not cert.check("cond_bound").applicable
        assert not cert.check("spherical_rho_bound").applicable
        assert cert.check("coprime_bound_s1").applicable
        assert cert.ok

    def test_doublet_is_flagged(self, fast_search):
        """Test that the 1e-8 pair is flagged and still certified."""
        certs = certificates(_doublet(), UnitDisk(), config=fast_search)

        flagged = [cert for cert in certs if cert.flagged]
        assert len(flagged) == 1
        assert flagged[0].zero.value == pytest.approx(0.5)
        assert all(cert.ok for cert in certs)

    def test_scaling_invariance(self, example_function, fast_search):
        """Test that (cp, cq) gets the same bounds as (p, q)."""
        r = example_function
        scaled = RationalFunction(3.0 * r.p, 3.0 * r.q, r.m, r.n)

        a = certificates(r, UnitDisk(), config=fast_search)[0].bounds
        b = certificates(scaled, UnitDisk(), config=fast_search)[0].bounds

        for name, value in a.items():
            assert b[name] == pytest.approx(value, rel=1e-6)

    def test_spherical_bounds_off_convex_region(self, example_function, fast_search):
        """Test that a segment missing the pole leaves the spherical bounds unapplied."""
        cert = certificates(example_function, Segment(-1.0, 0.5), config=fast_search)[0]

        assert not cert.check("spherical_rho_bound").applicable
        assert not cert.check("spherical_nu_bound").applicable
        assert cert.ok

    def test_degenerate_strict(self, fast_search):
        """Test that a rank-deficient S^(1) aborts strict certification."""
        r = RationalFunction(
            Polynomial([-0.5, 1.0]), Polynomial([0.1, -0.7, 1.0]), 1, 2
        )

        with pytest.raises(DegeneracyError):
            certificates(r, UnitDisk(), config=fast_search)

    def test_serialization(self, example_function, fast_search):
        """Test the certificate payload."""
        payload = certificates(example_function, UnitDisk(), config=fast_search)[0].to_dict()

        assert [float(x) for x in payload["pole"]] == [1.0, 0.0]
        assert payload["flagged"] is False
        assert len(payload["checks"]) == 7


@pytest.mark.unit
class TestRobustAndDetect:
    """Test cases for robust certificates and detection."""

    def test_robust_small_perturbation(self, example_function, fast_search):
        """Test the weakened bounds for a perturbed 2z/(z - 1)."""
        r = example_function
        rt = RationalFunction(r.p + Polynomial([1e-5, 0.0]), r.q, 1, 1)

        certs = robust_certificates(r, rt, UnitDisk(), config=fast_search)

        assert len(certs) == 1
        assert certs[0].check("robust_cond_bound").applicable
        assert certs[0].check("robust_coprime_bound_s1").applicable
        assert certs[0].ok

    def test_robust_large_perturbation(self, example_function, fast_search):
        """Test that a perturbation outside the hypotheses is not judged."""
        r = example_function
        rt = RationalFunction(r.p + Polynomial([0.5, 0.0]), r.q, 1, 1)

        certs = robust_certificates(r, rt, UnitDisk(), config=fast_search)

        assert all(not check.applicable for check in certs[0].checks)

    def test_detect(self, fast_search):
        """Test that detection returns only the close pair."""
        found = detect(_doublet(), threshold=1e-3, config=fast_search)

        assert len(found) == 1
        assert found[0].chi_dist < 1e-7

    def test_detect_nothing(self, example_function, fast_search):
        """Test that a clean function has no doublets."""
        assert detect(example_function, threshold=1e-3, config=fast_search) == []
