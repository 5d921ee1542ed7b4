"""Tests for the fundamental orbit, twirl order, the Cantor set, the odometer and dimension estimates."""
from fractions import Fraction as F

import pytest

from kitebilliards.comet import (
    DigitSpace,
    cantor_approx,
    cantor_point,
    check_residues,
    diameter_bounds,
    dimension_estimate,
    fundamental_chain,
    fundamental_orbit_points,
    minus_one,
    mirror,
    odometer,
    odometer_metric,
    phi_one,
    phi_one_inverse,
    sigma,
    twirl_order,
    twirl_successor,
    verify_cantor,
    verify_fundamental_orbit,
    verify_odometer,
    verify_return_model,
)
from kitebilliards.exceptions import DomainError, NoSuccessorError
from kitebilliards.seqcore import penrose_chain, predecessor_chain
from kitebilliards.suites import PENROSE_DIMENSION, PENROSE_ENHANCED_DIMENSION


@pytest.fixture
def chain_19_49():
    return fundamental_chain(F(19, 49))


# =============================================================================
# Digit spaces and the fundamental orbit
# =============================================================================


def test_fundamental_chain_of_even_parameter_extends_odd_neighbour():
    chain = fundamental_chain(F(12, 31))
    assert chain.terms == [F(1), F(1, 3), F(5, 13), F(12, 31)]
    assert chain.ds == [1, 2, 1]


def test_digit_space_of_19_49(chain_19_49):
    space = DigitSpace.of(chain_19_49)
    assert space.mus == (30, 8, 2)
    assert space.radices == [1, 2, 6, 12]
    assert space.size == 12
    assert space.twisted == (True, False, False)


def test_digit_space_rejects_out_of_range_digits(chain_19_49):
    with pytest.raises(DomainError):
        DigitSpace.of(chain_19_49).check((2, 0, 0))


def test_fundamental_orbit_points(chain_19_49):
    points = fundamental_orbit_points(chain_19_49)
    assert points[:4] == [F(1, 49), F(5, 49), F(17, 49), F(3, 7)]
    assert len(points) == 12
    assert fundamental_orbit_points(fundamental_chain(F(12, 31)))[:3] == [F(1, 31), F(3, 31), F(11, 31)]


def test_mirror_reflects_points(chain_19_49):
    space = DigitSpace.of(chain_19_49)
    assert mirror((0, 0, 0), chain_19_49) == (1, 2, 1)
    for kappa in space.sequences():
        assert space.point(kappa) + space.point(mirror(kappa, chain_19_49)) == 2


def test_diameter_bounds():
    assert diameter_bounds(F(19, 49)) == (34, 68)
    assert diameter_bounds(F(12, 31)) == (43, 86)


@pytest.mark.parametrize("a", [F(19, 49), F(12, 31), F(5, 13)])
def test_fundamental_orbit_matches_direct_iteration(a, settings):
    report = verify_fundamental_orbit(fundamental_chain(a), settings)
    assert report.passed, report.failures
    assert len(report.details["points"]) == DigitSpace.of(fundamental_chain(a)).size


# =============================================================================
# Twirl order
# =============================================================================


def test_twirl_order_starts_with_twisted_zero(chain_19_49):
    order = twirl_order(chain_19_49)
    assert order[0] == (1, 0, 0)
    assert order[-1] == (0, 2, 1)
    assert len(set(order)) == 12


def test_twirl_successor_worked_values(chain_19_49):
    assert twirl_successor((1, 0, 1), chain_19_49) == (0, 0, 1)
    assert sigma((0, 2, 0), chain_19_49) == 2
    assert sigma((0, 2, 1), chain_19_49) == 3


def test_last_sequence_has_no_successor(chain_19_49):
    with pytest.raises(NoSuccessorError):
        twirl_successor((0, 2, 1), chain_19_49)


def test_return_model_follows_twirl_order(settings):
    chain = fundamental_chain(F(19, 49))
    report = verify_return_model(chain, settings=settings)
    assert report.passed, report.failures[:3]
    rows = report.details["rows"]
    assert len(rows) == 12
    assert set(rows[0]) >= {"digits", "X_num", "X_den", "sigma", "bounds_ok"}


# =============================================================================
# Cantor set and odometer
# =============================================================================


def test_cantor_truncation_hull(chain_19_49, settings):
    approx = cantor_approx(chain_19_49, settings=settings)
    assert approx.depth == 3
    assert len(approx.points) == 12
    assert approx.hull() == (F(0), F(96, 49))
    assert cantor_point(chain_19_49, (1, 2, 1)) == F(96, 49)


@pytest.mark.parametrize("a", [F(19, 49), F(379, 645), F(25, 47)])
def test_cantor_checks_pass(a, settings):
    report = verify_cantor(cantor_approx(fundamental_chain(a), settings=settings))
    assert report.passed, report.failures


def test_odometer_wraps_minus_one(chain_19_49):
    assert minus_one(chain_19_49) == (1, 5, 11)
    assert odometer(chain_19_49, minus_one(chain_19_49)) == (0, 0, 0)
    assert phi_one(chain_19_49, (0, 0, 0)) == (1, 0, 0)
    assert phi_one_inverse(chain_19_49, (1, 0, 0)) == (0, 0, 0)


def test_incompatible_residues_are_rejected(chain_19_49):
    with pytest.raises(DomainError):
        check_residues(DigitSpace.of(chain_19_49), (1, 0, 0))
    with pytest.raises(DomainError):
        odometer(chain_19_49, (0, 0))


def test_odometer_metric(chain_19_49):
    assert odometer_metric(chain_19_49, (0, 0, 0), (1, 1, 1)) == 1
    assert odometer_metric(chain_19_49, (0, 0, 0), (0, 2, 2)) == F(1, 3)
    assert odometer_metric(chain_19_49, (0, 0, 0), (0, 0, 0)) == 0


@pytest.mark.parametrize("a", [F(19, 49), F(12, 31), F(379, 645)])
def test_odometer_is_conjugate_to_twirl(a):
    report = verify_odometer(fundamental_chain(a))
    assert report.passed, report.failures[:3]


# =============================================================================
# Dimension
# =============================================================================


def test_penrose_dimension_closed_forms(settings):
    report = dimension_estimate(penrose_chain(12), settings=settings)
    assert report.period == 4
    assert report.closed_form_value == pytest.approx(PENROSE_DIMENSION, rel=1e-6)
    assert report.enhanced_closed_form_value == pytest.approx(PENROSE_ENHANCED_DIMENSION, rel=1e-6)
    assert report.slope_estimate is not None
    assert len(report.levels) == settings.comet.depth


def test_dimension_needs_enough_superior_levels(settings):
    with pytest.raises(DomainError):
        dimension_estimate(predecessor_chain(F(1, 3)), settings=settings)
