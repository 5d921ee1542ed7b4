"""Tests for the arithmetic graph: windows, assembly, tracing and its symmetries."""
from fractions import Fraction as F

import pytest

from kitebilliards.arithgraph import (
    Window,
    agreement_interval,
    build_graph,
    check_embedding,
    diophantine_agreement,
    diophantine_functionals,
    interval_index,
    interval_width,
    iota,
    period_vector,
    segments_cross,
    stability_census,
    trace_component,
    unstable_census,
    verify_orbit_intervals,
    verify_rotational_symmetry,
    verify_translation_invariance,
    walk,
)
from kitebilliards.exceptions import BudgetExceededError, DomainError
from kitebilliards.masterpicture import MasterPicture
from kitebilliards.models import ORIGIN, Direction, LatticePoint

LP = LatticePoint

# =============================================================================
# Windows
# =============================================================================


def test_window_parse():
    window = Window.parse("-2, 3, -1, 4")
    assert window.as_tuple() == (-2, 3, -1, 4)
    assert window.contains(LP(3, 4))
    assert not window.contains(LP(4, 0))
    assert len(list(window.points())) == 6 * 6


@pytest.mark.parametrize("text", ["1,2,3", "a,b,c,d", "3,1,0,0"])
def test_window_parse_rejects_bad_text(text):
    with pytest.raises(DomainError):
        Window.parse(text)


def test_default_window_scales_with_denominator(settings):
    assert Window.default_for(F(1, 3), settings).as_tuple() == (-6, 6, -3, 6)


# =============================================================================
# Assembly and tracing
# =============================================================================


@pytest.fixture
def graph_third(settings):
    return build_graph(F(1, 3), window=Window(-9, 9, -4, 8), settings=settings)


def test_gamma_contains_origin_and_its_neighbours(graph_third):
    gamma = graph_third.gamma
    assert ORIGIN in gamma
    assert LP(1, 1) in gamma
    assert LP(-1, 1) in gamma
    assert graph_third.forward(ORIGIN) == LP(1, 1)


@pytest.mark.parametrize("a", [F(1, 3), F(3, 5), F(2, 5)])
def test_embedding_holds(a, settings):
    graph = build_graph(a, window=Window(-12, 12, -6, 12), settings=settings)
    report = check_embedding(graph)
    assert report.passed, report.failures[:3]
    assert report.details["gamma_size"] > 0


def test_segments_cross():
    assert segments_cross((LP(0, 0), LP(1, 1)), (LP(1, 0), LP(0, 1)))
    assert not segments_cross((LP(0, 0), LP(1, 1)), (LP(1, 1), LP(2, 0)))
    assert segments_cross((LP(0, 0), LP(2, 0)), (LP(1, 0), LP(3, 0)))
    assert not segments_cross((LP(0, 0), LP(1, 0)), (LP(1, 0), LP(2, 0)))


def test_odd_gamma_runs_from_origin_to_period_vector(settings):
    path = trace_component(F(1, 3), stop=period_vector(F(1, 3)), settings=settings)
    assert path[0] == ORIGIN
    assert path[1] == LP(1, 1)
    assert path[-1] == LP(3, -1)


def test_even_gamma_is_closed(settings):
    path = trace_component(F(2, 5), settings=settings)
    assert path[-1] == ORIGIN
    assert len(path) > 2


def test_backward_trace_leaves_through_upper_left(settings):
    path = trace_component(F(1, 3), direction=Direction.BACKWARD, stop=LP(-3, 1), settings=settings)
    assert path[1] == LP(-1, 1)


def test_walk_budget(settings):
    picture = MasterPicture(F(1, 3), settings=settings)
    with pytest.raises(BudgetExceededError):
        walk(picture, ORIGIN, LP(1, 1), max_steps=1)


# =============================================================================
# Symmetries
# =============================================================================


def test_period_vector_parity():
    assert period_vector(F(1, 3)) == LP(3, -1)
    assert period_vector(F(2, 5)) == LP(10, -4)


def test_iota_uses_upper_neighbour():
    assert iota(F(1, 3), ORIGIN) == LP(2, -1)
    assert iota(F(1, 3), iota(F(1, 3), LP(5, 2))) == LP(5, 2)


@pytest.mark.parametrize("a", [F(1, 3), F(3, 5), F(2, 5)])
def test_translation_and_rotation(a, settings):
    graph = build_graph(a, window=Window(-12, 12, -6, 12), settings=settings)
    translation = verify_translation_invariance(graph)
    rotation = verify_rotational_symmetry(graph)
    assert translation.passed, translation.failures[:3]
    assert translation.checked > 0
    assert rotation.passed, rotation.failures[:3]


# =============================================================================
# Diophantine agreement
# =============================================================================


def test_functional_gradients_are_small():
    _, g, h = diophantine_functionals(F(1, 3))
    assert g == (F(1, 2), F(-3, 2))
    for coefficients in (g, h):
        assert coefficients[0] ** 2 + coefficients[1] ** 2 <= 9


def test_agreement_interval_for_lower_first_parameter():
    assert agreement_interval(F(1, 3), F(5, 13)) == (F(-1), F(6))


def test_diophantine_agreement_on_admissible_pair(settings):
    report = diophantine_agreement(F(1, 3), F(5, 13), settings=settings)
    assert report.passed, report.failures[:3]
    assert report.details["points"] > 0


def test_diophantine_agreement_requires_admissible_pair(settings):
    with pytest.raises(DomainError):
        diophantine_agreement(F(1, 3), F(3, 5), settings=settings)


# =============================================================================
# Orbit intervals and stability
# =============================================================================


def test_interval_width():
    assert interval_width(F(1, 3)) == 4
    assert interval_width(F(2, 5)) == 14


def test_interval_index():
    assert interval_index(F(1, 3), F(4)) is None
    assert interval_index(F(1, 3), F(5)) == 1
    assert interval_index(F(1, 3), F(-1, 3)) == -1


@pytest.mark.parametrize("a", [F(1, 3), F(3, 5), F(2, 5)])
def test_components_stay_in_one_interval(a, settings):
    graph = build_graph(a, window=Window(-10, 10, -5, 10), settings=settings)
    report = verify_orbit_intervals(graph)
    assert report.passed, report.failures[:3]


def test_odd_parameter_has_two_unstable_cycles():
    report = unstable_census(F(1, 3))
    assert report.passed, report.failures
    assert report.details["unstable"] == 2


def test_even_parameter_has_no_unstable_cycles():
    report = unstable_census(F(2, 5))
    assert report.passed, report.failures
    assert report.details["unstable"] == 0


def test_closed_components_survive_perturbation(settings):
    graph = build_graph(F(2, 5), window=Window(-12, 12, -6, 12), settings=settings)
    report = stability_census(graph)
    assert report.passed, report.failures[:3]
