"""Tests for the displacement regions of the square map."""
from fractions import Fraction as F

import pytest

from kitebilliards.dynamics import Kite, square_map, strip_vector
from kitebilliards.models import PlanePoint
from kitebilliards.succession import regions, sample_points, succession_region, verify_succession


def test_ten_regions_with_distinct_labels(kite_third):
    labels = [region.label for region in regions(kite_third)]
    assert len(labels) == 10
    assert len(set(labels)) == 10
    assert labels[:2] == ["4#", "6b"]


def test_triangle_vectors_follow_succession_relations(kite_third):
    a = kite_third.a
    v = {j: strip_vector(kite_third, j) for j in range(1, 9)}
    assert v[3] - v[4] + v[5] == PlanePoint(-2 * a, F(-2))
    assert v[5] - v[6] + v[7] == PlanePoint(2 * a, F(-2))
    triangles = {region.label: region.vector for region in regions(kite_third)[:2]}
    assert triangles["4#"] == v[3] - v[4] + v[5]
    assert triangles["6b"] == v[5] - v[6] + v[7]


def test_only_triangles_are_bounded(kite_third):
    assert [region.bounded for region in regions(kite_third)] == [True, True] + [False] * 8


def test_far_right_point_lies_in_first_region(kite_third):
    p = PlanePoint(F(20), F(1, 3))
    label, vector = succession_region(kite_third, p)
    assert label == "1"
    assert square_map(kite_third, p) - p == vector


def test_points_in_kite_have_no_region(kite_third):
    assert succession_region(kite_third, PlanePoint(F(0), F(0))) is None


@pytest.mark.parametrize("a", [F(1, 3), F(1, 2), F(3, 5), F(7, 8)])
def test_region_vectors_match_square_map(a):
    kite = Kite(a)
    report = verify_succession(kite, sample_points(kite, 5, 3))
    assert report.passed, report.failures[:3]
    assert report.checked > 0


def test_inner_box_is_left_out(kite_third):
    points = sample_points(kite_third, 12, 2, inner=10)
    assert points
    assert all(max(abs(p.x), abs(p.y)) >= 10 for p in points)
    assert len(points) < len(sample_points(kite_third, 12, 2))
