"""Tests for the master picture: reduction, classification and edge evaluation."""
from fractions import Fraction as F

import pytest

from kitebilliards.exceptions import DomainError
from kitebilliards.masterpicture import (
    MasterPicture,
    classifier_index,
    classify,
    classify_point,
    default_alpha,
    edges_at,
    forward_sign,
    fundamental_point,
    is_above_baseline,
    is_low_vertex,
    lattice_reduce,
    mu,
    reconstruct,
    reduce,
    reduce_zero_plus,
    verify_consistency,
    verify_lower_border,
    verify_reconstruction,
)
from kitebilliards.models import ClassifierIndex, LatticePoint, PlanePoint, Sign

LP = LatticePoint


def test_default_alpha(settings):
    assert default_alpha(F(3, 5), settings) == F(1, 10)


def test_fundamental_point_parity():
    a, alpha = F(1, 3), F(1, 6)
    assert fundamental_point(a, alpha, 0, 0) == PlanePoint.of(F(1, 3), -1)
    assert fundamental_point(a, alpha, 1, 0).y == 1


def test_baseline_and_low_vertices():
    a = F(3, 5)
    assert is_above_baseline(a, 0, 0)
    assert not is_above_baseline(a, 2, -2)
    assert is_low_vertex(a, 0, 0)
    assert is_low_vertex(a, 2, -1)
    assert not is_low_vertex(a, 0, 1)


# =============================================================================
# Reduction
# =============================================================================


def test_reduce_worked_values():
    a, alpha = F(3, 5), F(1, 10)
    plus = reduce(a, alpha, 4, 2, Sign.PLUS)
    minus = reduce(a, alpha, 4, 2, Sign.MINUS)
    assert plus.coords == (F(1, 10), F(3, 2), F(1, 2))
    assert plus.witnesses == (4, 5, 4)
    assert minus.coords == (F(7, 10), F(1, 2), F(1, 2))
    assert minus.witnesses == (3, 5, 4)


def test_reconstruct_inverts_reduction():
    a = F(7, 25)
    point = mu(F(37, 11), Sign.MINUS)
    coords, witnesses = lattice_reduce(a, point)
    assert reconstruct(a, coords, witnesses) == point


@pytest.mark.parametrize("a", [F(1, 3), F(3, 5), F(7, 25)])
def test_reconstruction_sweep(a):
    report = verify_reconstruction(a, range(-8, 9), range(-8, 9))
    assert report.passed, report.failures[:3]


# =============================================================================
# Classification
# =============================================================================


def test_classifier_worked_values():
    a = F(3, 5)
    plus = classifier_index(a, (F(1, 10), F(3, 2), F(1, 2)), Sign.PLUS)
    minus = classifier_index(a, (F(7, 10), F(1, 2), F(1, 2)), Sign.MINUS)
    assert plus == ClassifierIndex(n0=0, n1=3, n2=0, n3=2, n4=0)
    assert minus == ClassifierIndex(n0=1, n1=3, n2=1, n3=0, n4=0)
    assert classify(plus) == (-1, 1)
    assert classify(minus) == (1, 0)


def test_classifier_index_range_is_enforced():
    with pytest.raises(DomainError):
        ClassifierIndex(n0=2, n1=0, n2=0, n3=0, n4=0)


def test_lower_border_classification():
    assert classify_point(F(3, 5), reduce_zero_plus(F(3, 5), 0, 8, Sign.PLUS)) == (0, 1)


def test_forward_sign_parity():
    assert forward_sign(4, 2, 4) is Sign.MINUS
    assert forward_sign(0, 0, 1) is Sign.PLUS


# =============================================================================
# Edges
# =============================================================================


def test_edges_at_worked_vertex():
    forward, backward = edges_at(F(3, 5), F(1, 10), 4, 2)
    assert forward == LP(1, 0)
    assert backward == LP(-1, 1)


def test_edges_at_origin_and_far_vertex():
    a, alpha = F(1, 3), F(1, 6)
    assert edges_at(a, alpha, 0, 0) == (LP(1, 1), LP(-1, 1))
    assert edges_at(a, alpha, -7, 3) == (LP(1, -1), LP(0, 1))


@pytest.mark.parametrize("a", [F(1, 3), F(3, 5), F(7, 25), F(2, 5)])
def test_origin_joins_its_diagonal_neighbours(a):
    forward, backward = edges_at(a, default_alpha(a), 0, 0)
    assert {forward, backward} == {LP(1, 1), LP(-1, 1)}


def test_edges_at_rejects_vertices_below_baseline():
    with pytest.raises(DomainError):
        edges_at(F(1, 3), F(1, 6), 3, -2)
    edges_at(F(1, 3), F(1, 6), 3, -2, require_baseline=False)


def test_master_picture_caches(settings):
    picture = MasterPicture(F(1, 3), settings=settings)
    assert picture.alpha == F(1, 6)
    assert picture.forward(LP(0, 0)) == LP(1, 1)
    assert picture.backward(LP(0, 0)) == LP(-1, 1)
    assert picture.cache_size() == 1
    assert not picture.is_trivial(LP(0, 0))


@pytest.mark.parametrize("a", [F(1, 3), F(3, 5), F(7, 25), F(2, 5)])
def test_lower_border_agrees_with_small_offset(a):
    report = verify_lower_border(a, range(-10, 11), range(-10, 11))
    assert report.passed, report.failures[:3]


@pytest.mark.parametrize("a", [F(1, 3), F(3, 5), F(2, 5)])
def test_master_picture_matches_return_map(a, settings):
    report = verify_consistency(a, range(-6, 7), range(-6, 7), settings=settings)
    assert report.passed, report.failures[:3]
    assert report.checked > 0
