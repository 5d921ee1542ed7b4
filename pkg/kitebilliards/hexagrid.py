"""
Hexagrid of the arithmetic kite.

The room grid extends the kite diagonals by Z[V/2, W] (odd A) or Z[V, 2W]
(even A); the door grid extends its sides by Z[V]. Positions are measured
in grid coordinates: ω counts half-steps of V across the walls and φ
counts steps of W across the floors, so x = (ω/2)V + φW.
"""
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from kitebilliards.arithgraph import ArithGraph, Window, unstable_census, walk
from kitebilliards.config import Settings, get_settings
from kitebilliards.exceptions import DomainError
from kitebilliards.masterpicture import MasterPicture
from kitebilliards.models import (
    ORIGIN,
    LatticePoint,
    PlanePoint,
    Report,
    format_rational,
    is_odd,
    require_unit_interval,
)

logger = logging.getLogger(__name__)

WallKey = Tuple[int, int]


def _point(v: LatticePoint) -> PlanePoint:
    return PlanePoint(Fraction(v.m), Fraction(v.n))


def strict_floor(y: Fraction) -> int:
    """Greatest integer strictly less than y."""
    k = math.floor(y)
    return k - 1 if k == y else k


@dataclass(frozen=True)
class Door:
    """Door on one wall, with the lattice point its crossing cell must contain."""
    point: PlanePoint
    wall: WallKey
    corner: bool
    expected: LatticePoint


@dataclass(frozen=True)
class CrossingCell:
    """An edge, or two edges through a wall vertex, crossing a wall."""
    vertices: Tuple[LatticePoint, ...]
    wall: WallKey


@dataclass
class Hexagrid:
    """Room and door grids for one rational parameter."""
    a: Fraction
    V: PlanePoint = field(init=False)
    W: PlanePoint = field(init=False)
    kite_vertices: Tuple[PlanePoint, ...] = field(init=False)

    def __post_init__(self) -> None:
        self.a = require_unit_interval(Fraction(self.a))
        p, q = self.a.numerator, self.a.denominator
        s = p + q
        self.V = PlanePoint.of(q, -p)
        self.W = PlanePoint(Fraction(p * q, s), Fraction(p * q, s) + Fraction(q - p, 2))
        self.kite_vertices = (
            PlanePoint.of(0, 0),
            PlanePoint(Fraction(0), Fraction(s, 2)),
            PlanePoint(Fraction(2 * p * q, 2 * q), Fraction(s * s - 2 * p * p, 2 * q)),
            PlanePoint(Fraction(4 * p * q, 2 * s), Fraction(s * s - 4 * p * p, 2 * s)),
            PlanePoint(Fraction(2 * p * q, 2 * s), Fraction(s * s - 2 * p * p, 2 * s)),
            -self.V,
            self.V,
        )
        self._wall_unit = self.W.cross(self.V) / 2

    @property
    def odd(self) -> bool:
        return is_odd(self.a)

    @property
    def step(self) -> int:
        """Spacing of walls in ω and floors in φ: 1 (odd) or 2 (even)."""
        return 1 if self.odd else 2

    @property
    def corners(self) -> Tuple[PlanePoint, ...]:
        """The four kite corners v₁, v₂, v₃, v₄ in cyclic order."""
        return self.kite_vertices[:4]

    def sides(self) -> List[Tuple[PlanePoint, PlanePoint]]:
        """(corner, direction) of each kite side."""
        ring = self.corners
        return [(ring[k], ring[(k + 1) % 4] - ring[k]) for k in range(4)]

    # ===== Grid Coordinates =====

    def omega(self, x: PlanePoint) -> Fraction:
        return self.W.cross(x) / self._wall_unit

    def phi(self, x: PlanePoint) -> Fraction:
        p, q = self.a.numerator, self.a.denominator
        return 2 * (p * x.x + q * x.y) / (q * (p + q))

    def at(self, omega: Fraction, phi: Fraction) -> PlanePoint:
        return self.V.scaled(Fraction(omega, 2)) + self.W.scaled(phi)

    def is_wall_value(self, omega: Fraction) -> bool:
        return omega.denominator == 1 and omega.numerator % self.step == 0

    def is_floor_value(self, phi: Fraction) -> bool:
        return phi.denominator == 1 and phi.numerator % self.step == 0

    def band(self, phi: Fraction) -> int:
        """Index k of the floor at or below φ."""
        return self.step * math.floor(phi / self.step)

    # ===== Walls and Doors =====

    def wall_segment(self, wall: WallKey) -> Tuple[PlanePoint, PlanePoint]:
        c, k = wall
        return self.at(Fraction(c), Fraction(k)), self.at(Fraction(c), Fraction(k + self.step))

    def doors_on_wall(self, wall: WallKey) -> List[Door]:
        """Door-grid crossings of a wall segment, endpoints included."""
        c, k = wall
        found: Dict[PlanePoint, Fraction] = {}
        base = self.V.scaled(Fraction(c, 2))
        for corner, direction in self.sides():
            unit = direction.cross(self.V)
            start = direction.cross(base - corner) / unit
            slope = direction.cross(self.W) / unit
            ends = (start + k * slope, start + (k + self.step) * slope)
            for i in range(math.ceil(min(ends)), math.floor(max(ends)) + 1):
                phi = (i - start) / slope
                point = base + self.W.scaled(phi)
                if not self.odd and point.y.denominator == 2:
                    continue
                found[point] = phi
        doors = []
        for point, phi in sorted(found.items(), key=lambda item: item[1]):
            corner = point.y.denominator == 1
            if not corner:
                expected = LatticePoint(math.floor(point.x), math.floor(point.y))
            elif phi == k + self.step:
                expected = LatticePoint(math.floor(point.x), int(point.y) - 1)
            else:
                expected = LatticePoint(math.floor(point.x), int(point.y))
            doors.append(Door(point=point, wall=wall, corner=corner, expected=expected))
        return doors

    def walls_in(self, window: Window, margin: int = 2) -> List[WallKey]:
        """Walls above the baseline whose segments sit inside the window with a margin."""
        corners = [
            PlanePoint.of(window.m0, window.n0),
            PlanePoint.of(window.m0, window.n1),
            PlanePoint.of(window.m1, window.n0),
            PlanePoint.of(window.m1, window.n1),
        ]
        omegas = [self.omega(x) for x in corners]
        phis = [self.phi(x) for x in corners]
        walls = []
        for c in range(math.floor(min(omegas)), math.ceil(max(omegas)) + 1):
            if c % self.step:
                continue
            for k in range(max(0, math.floor(min(phis))), math.ceil(max(phis)) + 1):
                if k % self.step:
                    continue
                ends = self.wall_segment((c, k))
                if all(
                    window.m0 + margin <= e.x <= window.m1 - margin
                    and window.n0 + margin <= e.y <= window.n1 - margin
                    for e in ends
                ):
                    walls.append((c, k))
        return walls

    # ===== Room Lemma =====

    def main_door(self) -> LatticePoint:
        """d₀ = ((p+q)/2, ⌊(q² − p²)/(4q)⌋)."""
        p, q = self.a.numerator, self.a.denominator
        return LatticePoint((p + q) // 2, strict_floor(Fraction(q * q - p * p, 4 * q)))

    def in_room(self, v: LatticePoint) -> bool:
        """Membership in the closed parallelogram R = {0, V, W, V+W}."""
        x = _point(v)
        return 0 <= self.omega(x) <= 2 and 0 <= self.phi(x) <= 1

    def period_window(self, margin: int = 3) -> Window:
        """Bounding box of R with a margin."""
        ring = [PlanePoint.of(0, 0), self.V, self.W, self.V + self.W]
        return Window(
            math.floor(min(x.x for x in ring)) - margin,
            math.ceil(max(x.x for x in ring)) + margin,
            math.floor(min(x.y for x in ring)) - margin,
            math.ceil(max(x.y for x in ring)) + margin,
        )


def hexagrid(a: Fraction) -> Hexagrid:
    return Hexagrid(Fraction(a))


# ===== Crossing Cells =====

def crossing_cells(graph: ArithGraph, grid: Hexagrid) -> List[CrossingCell]:
    """Edges crossing a wall at an interior point, and vertex pairs straddling a wall."""
    cells = []
    for u, w in graph.undirected_edges():
        if w not in graph.edges or u not in graph.edges:
            continue
        ou, ow = grid.omega(_point(u)), grid.omega(_point(w))
        lo, hi = min(ou, ow), max(ou, ow)
        for c in range(math.floor(lo) + 1, math.ceil(hi)):
            if c % grid.step:
                continue
            t = (c - ou) / (ow - ou)
            crossing = _point(u) + (_point(w) - _point(u)).scaled(t)
            cells.append(CrossingCell(vertices=(u, w), wall=(c, grid.band(grid.phi(crossing)))))
    for v in sorted(graph.edges):
        ov = grid.omega(_point(v))
        if not grid.is_wall_value(ov):
            continue
        neighbors = graph.neighbors(v)
        if len(neighbors) != 2:
            continue
        left, right = (grid.omega(_point(w)) - ov for w in neighbors)
        if left * right < 0:
            cells.append(
                CrossingCell(
                    vertices=(neighbors[0], v, neighbors[1]),
                    wall=(int(ov), grid.band(grid.phi(_point(v)))),
                )
            )
    return cells


# ===== Verification =====

def verify_floors(graph: ArithGraph, grid: Hexagrid) -> Report:
    """No edge crosses a floor; edges at a floor vertex rise above it."""
    report = Report(name="floors")
    for u, w in graph.undirected_edges():
        fu, fw = grid.phi(_point(u)), grid.phi(_point(w))
        report.tick()
        lo, hi = min(fu, fw), max(fu, fw)
        if grid.band(lo) + grid.step < hi:
            report.fail(kind="crossing", edge=[u.as_tuple(), w.as_tuple()])
        for here, there in ((fu, fw), (fw, fu)):
            if grid.is_floor_value(here) and there <= here:
                report.fail(kind="descent", edge=[u.as_tuple(), w.as_tuple()])
    return report


def verify_doors(graph: ArithGraph, grid: Hexagrid, margin: int = 2) -> Report:
    """One door per wall, integral door abscissa, and one matching crossing cell per door."""
    report = Report(name="doors")
    by_wall: Dict[WallKey, List[CrossingCell]] = {}
    for cell in crossing_cells(graph, grid):
        by_wall.setdefault(cell.wall, []).append(cell)
    corner_doors = 0
    walls = grid.walls_in(graph.window, margin)
    for wall in walls:
        report.tick()
        doors = grid.doors_on_wall(wall)
        if len(doors) != 1:
            report.fail(kind="door_count", wall=list(wall), doors=len(doors))
            continue
        door = doors[0]
        if door.point.x.denominator != 1:
            report.fail(kind="door_abscissa", wall=list(wall), door=[str(door.point.x), str(door.point.y)])
        if door.corner:
            corner_doors += 1
            logger.warning(
                f"corner door ({format_rational(door.point.x)}, {format_rational(door.point.y)}) "
                f"on wall {wall} for A={format_rational(grid.a)}"
            )
        cells = by_wall.get(wall, [])
        if len(cells) != 1:
            report.fail(kind="cell_count", wall=list(wall), cells=len(cells))
        elif door.expected not in cells[0].vertices:
            report.fail(
                kind="association",
                wall=list(wall),
                expected=door.expected.as_tuple(),
                cell=[v.as_tuple() for v in cells[0].vertices],
            )
    report.details = {"walls": len(walls), "corner_doors": corner_doors}
    return report


def room_path(a: Fraction, settings: Optional[Settings] = None) -> List[LatticePoint]:
    """One period of Γ: the walk (0,0) → (1,1) → … → (q, −p).

    Raises:
        DomainError: for even parameters, where Γ is a closed polygon
    """
    a = Fraction(a)
    if not is_odd(a):
        raise DomainError(f"{format_rational(a)} is even; Γ has no period")
    picture = MasterPicture(a, settings=settings)
    return walk(picture, ORIGIN, LatticePoint(1, 1), stop=LatticePoint(a.denominator, -a.numerator))


def verify_room_lemma(a: Fraction, settings: Optional[Settings] = None) -> Report:
    """Γ enters R through (−1,1) → (0,0) → (1,1) and runs to (q,−p) through d₀ inside R."""
    a = Fraction(a)
    grid = Hexagrid(a)
    picture = MasterPicture(a, settings=settings)
    report = Report(name="room_lemma")
    report.tick()
    if {picture.forward(ORIGIN), picture.backward(ORIGIN)} != {LatticePoint(-1, 1), LatticePoint(1, 1)}:
        report.fail(kind="entry", neighbors=[picture.forward(ORIGIN).as_tuple(), picture.backward(ORIGIN).as_tuple()])
        return report
    path = room_path(a, settings)
    target = LatticePoint(a.denominator, -a.numerator)
    report.tick()
    if path[-1] != target:
        report.fail(kind="end", last=path[-1].as_tuple())
    report.tick()
    d0 = grid.main_door()
    if d0 not in path:
        report.fail(kind="main_door", d0=d0.as_tuple())
    for v in path:
        report.tick()
        if not grid.in_room(v):
            report.fail(kind="outside", vertex=v.as_tuple())
    report.details = {"length": len(path) - 1, "d0": list(d0.as_tuple())}
    return report


def verify_hexagrid(
    graph: ArithGraph,
    grid: Optional[Hexagrid] = None,
    census: bool = True,
    settings: Optional[Settings] = None,
) -> Report:
    """Floor and door statements on the graph's window, plus the Room Lemma and orbit census."""
    settings = settings or get_settings()
    grid = grid or Hexagrid(graph.a)
    report = Report(name="hexagrid")
    report.absorb(verify_floors(graph, grid))
    report.absorb(verify_doors(graph, grid))
    if grid.odd:
        report.absorb(verify_room_lemma(graph.a, settings))
    if census:
        report.absorb(unstable_census(graph.a, 0))
    logger.info(
        f"hexagrid check for A={format_rational(graph.a)}: {report.checked} checks, "
        f"{'pass' if report.passed else 'FAIL'}"
    )
    return report
