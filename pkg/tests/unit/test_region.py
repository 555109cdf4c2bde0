"""Unit tests for regions and sphere points."""

import numpy as np
import pytest

from src.indicators.region import (
    Disk,
    FullPlane,
    InvertedRegion,
    PointSet,
    Segment,
    SpherePoint,
    UnitDisk,
    parse_region,
)
from src.utils.errors import RegionError


@pytest.mark.unit
class TestSpherePoint:
    """Test cases for SpherePoint."""

    def test_infinity_markers(self):
        """Test that None and infinite complex values mean infinity."""
        assert SpherePoint.of(None).is_infinite
        assert SpherePoint.of(complex(np.inf, 0.0)).is_infinite
        assert not SpherePoint.of(0.5).is_infinite

    def test_inverse_swaps_zero_and_infinity(self):
        """Test z -> 1/z on the sphere."""
        assert SpherePoint(0j).inverse().is_infinite
        assert SpherePoint.infinity().inverse() == SpherePoint(0j)
        assert SpherePoint(2j).inverse().value == pytest.approx(-0.5j)

    def test_json_form(self):
        """Test the serialized forms."""
        assert SpherePoint.infinity().to_json() == "inf"
        assert SpherePoint(1 + 2j).to_json() == ["1", "2"]

    def test_infinity_sorts_last(self):
        """Test that infinity follows every finite point."""
        points = [SpherePoint.infinity(), SpherePoint(5.0), SpherePoint(-1.0)]

        ordered = sorted(points, key=lambda p: p.sort_key)

        assert ordered[-1].is_infinite
        assert ordered[0].value == -1.0


@pytest.mark.unit
class TestDisk:
    """Test cases for Disk."""

    def test_membership_is_closed(self):
        """Test that the boundary belongs to the disk."""
        disk = UnitDisk()

        assert disk.contains(1.0)
        assert disk.contains(-1j)
        assert not disk.contains(1.001)

    def test_sample_contains_the_third(self):
        """Test that the density-48 grid holds the point 1/3."""
        grid = UnitDisk().sample(48)

        assert np.min(np.abs(grid - 1.0 / 3.0)) < 1e-15
        assert np.all(np.abs(grid) <= 1.0 + 1e-15)

    def test_project_clamps_to_boundary(self):
        """Test that chart vectors outside are pulled onto the disk."""
        disk = Disk(1.0, 2.0)

        assert disk.project(np.array([4.0, 0.0])) == pytest.approx(3.0)
        assert disk.project(disk.chart(1.5 + 0.5j)) == pytest.approx(1.5 + 0.5j)

    def test_invert_disk_away_from_origin(self):
        """Test that 1/K of a disk missing 0 is again a disk."""
        image = Disk(2.0, 1.0).invert()

        assert isinstance(image, Disk)
        assert image.contains(1.0)
        assert image.contains(1.0 / 3.0)
        assert not image.contains(0.2)

    def test_invert_disk_around_origin(self):
        """Test that 1/D is unbounded and holds infinity."""
        image = UnitDisk().invert()

        assert isinstance(image, InvertedRegion)
        assert image.includes_infinity
        assert not image.is_bounded
        assert image.contains(5.0)

    def test_unit_disk_location(self):
        """Test the unit disk location predicates."""
        assert UnitDisk().within_unit_disk()
        assert not Disk(0.0, 2.0).within_unit_disk()
        assert Disk(5.0, 1.0).outside_unit_disk()

    def test_invalid_radius(self):
        """Test that a non-positive radius is rejected."""
        with pytest.raises(RegionError):
            Disk(0.0, 0.0)


@pytest.mark.unit
class TestSegmentAndPoints:
    """Test cases for Segment and PointSet."""

    def test_segment_sample_and_membership(self):
        """Test the segment grid and its membership test."""
        segment = Segment(0.0, 1.0)

        np.testing.assert_allclose(segment.sample(4).real, [0.0, 0.25, 0.5, 0.75, 1.0])
        assert segment.contains(0.5)
        assert not segment.contains(0.5 + 0.1j)
        assert segment.is_convex and not segment.is_spherically_convex

    def test_point_set_deduplicates(self):
        """Test that repeated points are kept once."""
        points = PointSet([0.5, 0.5, 1j])

        assert points.points.size == 2
        assert not points.is_convex

    def test_single_point_is_convex(self):
        """Test that a single finite point is convex."""
        assert PointSet([1.0 / 3.0]).is_convex

    def test_point_set_inversion(self):
        """Test that 0 and infinity swap under inversion."""
        image = PointSet([0.0, 2.0]).invert()

        assert image.includes_infinity
        assert image.contains(0.5)

    def test_empty_point_set(self):
        """Test that an empty point set is rejected."""
        with pytest.raises(RegionError):
            PointSet([])

    def test_full_plane_is_not_sampled(self):
        """Test that the full plane refuses direct sampling."""
        with pytest.raises(RegionError):
            FullPlane().sample(8)


@pytest.mark.unit
class TestParseRegion:
    """Test cases for the region syntax."""

    def test_known_forms(self):
        """Test each accepted form."""
        assert isinstance(parse_region("unit-disk"), UnitDisk)
        assert isinstance(parse_region("plane"), FullPlane)
        assert parse_region("disk:0,0,2") == Disk(0.0, 2.0)
        assert isinstance(parse_region("segment:0,0,1,0"), Segment)

    def test_points_file(self, points_file):
        """Test a point set read relative to a base directory."""
        region = parse_region(f"points:{points_file.name}", base_dir=points_file.parent)

        assert isinstance(region, PointSet)
        assert region.contains(1.0 / 3.0)

    @pytest.mark.parametrize("spec", ["triangle:0,0", "disk:0,0", "disk:a,b,c", "points:"])
    def test_bad_specs(self, spec):
        """Test that malformed specs raise RegionError."""
        with pytest.raises(RegionError):
            parse_region(spec)
