"""Tests for pivot points, pivot arcs and the low-vertex census."""
from fractions import Fraction as F

import pytest

from kitebilliards.exceptions import DomainError
from kitebilliards.models import ORIGIN, LatticePoint
from kitebilliards.pivots import (
    even_arc_agreement,
    even_partner,
    lattice_vector,
    low_class,
    pivot_arc,
    pivot_endpoints,
    pivot_points,
    pivot_recursion,
    structure_relation,
    swap_identity,
    verify_pivot,
)
from kitebilliards.seqcore import predecessor_chain

LP = LatticePoint


@pytest.mark.parametrize(
    "a, e_minus, e_plus",
    [
        (F(1, 3), LP(-1, 1), LP(0, 0)),
        (F(19, 49), LP(-1, 1), LP(19, -7)),
        (F(379, 645), LP(-303, 179), LP(29, -17)),
    ],
)
def test_pivot_endpoints_worked_values(a, e_minus, e_plus):
    assert pivot_endpoints(a) == (e_minus, e_plus, a)


def test_pivot_recursion_follows_chain_sides():
    chain = predecessor_chain(F(19, 49))
    assert pivot_recursion(chain) == (-lattice_vector(F(1)), lattice_vector(F(1, 3)).scaled(2) + lattice_vector(F(5, 13)))


@pytest.mark.parametrize("a", [F(1, 3), F(19, 49), F(379, 645)])
def test_swap_identity(a):
    e_minus, e_plus, _ = pivot_endpoints(a)
    assert e_minus + e_plus == swap_identity(a)


def test_swap_identity_worked_values():
    assert swap_identity(F(19, 49)) == LP(18, -6)
    assert swap_identity(F(379, 645)) == LP(-274, 162)


@pytest.mark.parametrize("a, partner", [(F(1, 2), F(1, 3)), (F(2, 5), F(3, 7))])
def test_even_partner(a, partner):
    assert even_partner(a) == partner
    assert pivot_endpoints(a)[2] == partner


def test_even_partner_rejects_odd_parameter():
    with pytest.raises(DomainError):
        even_partner(F(1, 3))


def test_pivot_arc_of_one_third(settings):
    data = pivot_points(F(1, 3), settings)
    assert data.arc == [LP(-1, 1), ORIGIN]
    assert data.to_json_dict()["E-"] == [-1, 1]


def test_degenerate_arc_is_single_vertex(settings):
    assert pivot_arc(F(1, 3), ORIGIN, ORIGIN, settings) == [ORIGIN]


def test_low_class_is_invariant_under_period():
    a = F(3, 5)
    v = LP(4, -1)
    assert low_class(a, v) == low_class(a, v + lattice_vector(a))


@pytest.mark.parametrize("a", [F(1, 3), F(19, 49)])
def test_pivot_census(a, settings):
    data = pivot_points(a, settings)
    assert data.arc[0] == data.e_minus
    assert data.arc[-1] == data.e_plus
    report = verify_pivot(data, settings)
    assert report.passed, report.failures[:3]


def test_structure_relation_requires_odd_parameter():
    with pytest.raises(DomainError):
        structure_relation(F(2, 5))


def test_even_parameter_shares_partner_arc(settings):
    report = even_arc_agreement(F(2, 5), settings)
    assert report.passed, report.failures
    assert pivot_points(F(2, 5), settings).source == F(3, 7)
