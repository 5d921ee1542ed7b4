"""Tests for the hexagrid: grid coordinates, doors and the Room Lemma."""
from fractions import Fraction as F

import pytest

from kitebilliards.arithgraph import build_graph
from kitebilliards.exceptions import DomainError
from kitebilliards.hexagrid import Hexagrid, hexagrid, room_path, strict_floor, verify_hexagrid, verify_room_lemma
from kitebilliards.models import ORIGIN, LatticePoint, PlanePoint

LP = LatticePoint


def test_strict_floor():
    assert strict_floor(F(2)) == 1
    assert strict_floor(F(5, 2)) == 2
    assert strict_floor(F(-1, 2)) == -1


def test_grid_vectors_of_one_third():
    grid = hexagrid(F(1, 3))
    assert grid.V == PlanePoint.of(3, -1)
    assert grid.W == PlanePoint(F(3, 4), F(7, 4))
    assert grid.step == 1
    assert Hexagrid(F(2, 5)).step == 2


def test_grid_coordinates_of_v_and_w():
    grid = hexagrid(F(1, 3))
    assert grid.omega(grid.V) == 2
    assert grid.phi(grid.V) == 0
    assert grid.omega(grid.W) == 0
    assert grid.phi(grid.W) == 1
    assert grid.at(F(2), F(0)) == grid.V
    assert grid.at(F(1, 3), F(2, 3)) == PlanePoint.of(1, 1)


@pytest.mark.parametrize("a, door", [(F(1, 3), LP(2, 0)), (F(3, 5), LP(4, 0))])
def test_main_door(a, door):
    grid = hexagrid(a)
    assert grid.main_door() == door
    assert grid.in_room(door)


def test_room_membership():
    grid = hexagrid(F(1, 3))
    assert grid.in_room(ORIGIN)
    assert grid.in_room(LP(3, -1))
    assert not grid.in_room(LP(-1, 1))


def test_room_path_is_one_period():
    path = room_path(F(1, 3))
    assert path[:2] == [ORIGIN, LP(1, 1)]
    assert path[-1] == LP(3, -1)


def test_room_path_requires_odd_parameter():
    with pytest.raises(DomainError):
        room_path(F(2, 5))


@pytest.mark.parametrize("a", [F(1, 3), F(3, 5), F(7, 25)])
def test_room_lemma(a, settings):
    report = verify_room_lemma(a, settings)
    assert report.passed, report.failures
    assert report.details["d0"] == list(hexagrid(a).main_door().as_tuple())


def test_hexagrid_statements_on_period_window(settings):
    grid = hexagrid(F(25, 47))
    graph = build_graph(grid.a, window=grid.period_window(), settings=settings)
    report = verify_hexagrid(graph, grid, settings=settings)
    assert report.passed, report.failures[:3]
    assert report.details["doors"]["walls"] > 0
