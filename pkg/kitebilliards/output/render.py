"""
SVG rendering of arithmetic graphs, hexagrids and pivot arcs.

Documents are assembled from f-string elements in named layers. Lattice
coordinates are scaled by ``output.svg_scale`` and the y-axis is flipped
so that the picture reads with n increasing upward.
"""
import logging
import math
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from kitebilliards.arithgraph import ArithGraph
from kitebilliards.config import Settings, get_settings
from kitebilliards.hexagrid import Hexagrid
from kitebilliards.models import LatticePoint, PlanePoint, format_rational
from kitebilliards.pivots import PivotData

logger = logging.getLogger(__name__)

GAMMA_STROKE = "#000000"
COMPONENT_STROKE = "#9a9a9a"
BASELINE_STROKE = "#3366cc"
WALL_STROKE = "#c0392b"
FLOOR_STROKE = "#2e86c1"
DOOR_FILL = "#e67e22"
PIVOT_FILL = "#27ae60"

LAYER_ORDER = ("hexagrid", "baseline", "components", "gamma", "doors", "pivots")

Point = Tuple[Fraction, Fraction]


class SvgDocument:
    """Layered SVG canvas over a rectangle of the plane."""

    def __init__(self, bounds: Tuple[float, float, float, float], scale: float, title: str = ""):
        """Initialize the canvas.

        Args:
            bounds: (x0, x1, y0, y1) in plane coordinates
            scale: SVG units per plane unit
            title: Optional document title
        """
        self.x0, self.x1, self.y0, self.y1 = bounds
        self.scale = scale
        self.title = title
        self.layers: Dict[str, List[str]] = {}

    def _x(self, x: float) -> str:
        return f"{float(x) * self.scale:.3f}"

    def _y(self, y: float) -> str:
        return f"{-float(y) * self.scale:.3f}"

    def view_box(self) -> Tuple[float, float, float, float]:
        return (
            self.x0 * self.scale,
            -self.y1 * self.scale,
            (self.x1 - self.x0) * self.scale,
            (self.y1 - self.y0) * self.scale,
        )

    def _layer(self, name: str) -> List[str]:
        return self.layers.setdefault(name, [])

    def line(self, layer: str, a: Point, b: Point, stroke: str, width: float = 1.0) -> None:
        self._layer(layer).append(
            f'<line x1="{self._x(a[0])}" y1="{self._y(a[1])}" x2="{self._x(b[0])}" y2="{self._y(b[1])}" '
            f'stroke="{stroke}" stroke-width="{width:g}"/>'
        )

    def polyline(self, layer: str, points: Sequence[Point], stroke: str, width: float = 1.0) -> None:
        if len(points) < 2:
            return
        coords = " ".join(f"{self._x(x)},{self._y(y)}" for x, y in points)
        self._layer(layer).append(
            f'<polyline points="{coords}" fill="none" stroke="{stroke}" stroke-width="{width:g}"/>'
        )

    def circle(self, layer: str, center: Point, radius: float, fill: str) -> None:
        self._layer(layer).append(
            f'<circle cx="{self._x(center[0])}" cy="{self._y(center[1])}" r="{radius:g}" fill="{fill}"/>'
        )

    def render(self) -> str:
        vx, vy, vw, vh = self.view_box()
        lines = [
            '<?xml version="1.0" encoding="UTF-8"?>',
            f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{vx:.3f} {vy:.3f} {vw:.3f} {vh:.3f}" '
            f'width="{vw:.0f}" height="{vh:.0f}">',
        ]
        if self.title:
            lines.append(f"<title>{self.title}</title>")
        names = [name for name in LAYER_ORDER if name in self.layers]
        names += sorted(name for name in self.layers if name not in LAYER_ORDER)
        for name in names:
            lines.append(f'<g id="{name}">')
            lines.extend(self.layers[name])
            lines.append("</g>")
        lines.append("</svg>")
        return "\n".join(lines) + "\n"


def _lattice(v: LatticePoint) -> Point:
    return Fraction(v.m), Fraction(v.n)


def _plane(p: PlanePoint) -> Point:
    return p.x, p.y


def _bounds(graph: ArithGraph) -> Tuple[float, float, float, float]:
    """Window plus one unit, enough for edges leaving the window."""
    w = graph.window
    return w.m0 - 1, w.m1 + 1, w.n0 - 1, w.n1 + 1


# ===== Layers =====

def draw_components(doc: SvgDocument, graph: ArithGraph, width: float = 1.0) -> int:
    """Γ in black, every other component in grey. Returns the edge count."""
    count = 0
    for v, w in graph.undirected_edges():
        index = graph.component_of.get(v, graph.component_of.get(w))
        on_gamma = graph.gamma_index is not None and index == graph.gamma_index
        doc.line(
            "gamma" if on_gamma else "components",
            _lattice(v),
            _lattice(w),
            GAMMA_STROKE if on_gamma else COMPONENT_STROKE,
            width * (1.5 if on_gamma else 1.0),
        )
        count += 1
    return count


def draw_baseline(doc: SvgDocument, a: Fraction) -> None:
    """The line y = −Ax across the canvas."""
    x0, x1 = Fraction(doc.x0), Fraction(doc.x1)
    doc.line("baseline", (x0, -a * x0), (x1, -a * x1), BASELINE_STROKE, 0.5)


def _span(values: Iterable[Fraction], step: int, low: Optional[int] = None) -> range:
    values = list(values)
    start = math.floor(min(values))
    if low is not None:
        start = max(start, low)
    start += (-start) % step
    return range(start, math.ceil(max(values)) + 1, step)


def draw_hexagrid(doc: SvgDocument, grid: Hexagrid) -> int:
    """Walls (constant ω) and floors (constant φ) above the baseline."""
    corners = [
        PlanePoint(Fraction(doc.x0), Fraction(doc.y0)),
        PlanePoint(Fraction(doc.x0), Fraction(doc.y1)),
        PlanePoint(Fraction(doc.x1), Fraction(doc.y0)),
        PlanePoint(Fraction(doc.x1), Fraction(doc.y1)),
    ]
    omegas = [grid.omega(x) for x in corners]
    phis = [grid.phi(x) for x in corners]
    phi_top = Fraction(math.ceil(max(phis)))
    drawn = 0
    for c in _span(omegas, grid.step):
        a, b = grid.at(Fraction(c), Fraction(0)), grid.at(Fraction(c), phi_top)
        doc.line("hexagrid", _plane(a), _plane(b), WALL_STROKE, 0.5)
        drawn += 1
    omega_low, omega_high = Fraction(math.floor(min(omegas))), Fraction(math.ceil(max(omegas)))
    for k in _span(phis, grid.step, low=0):
        a, b = grid.at(omega_low, Fraction(k)), grid.at(omega_high, Fraction(k))
        doc.line("hexagrid", _plane(a), _plane(b), FLOOR_STROKE, 0.5)
        drawn += 1
    return drawn


def draw_doors(doc: SvgDocument, grid: Hexagrid, graph: ArithGraph) -> int:
    count = 0
    for wall in grid.walls_in(graph.window):
        for door in grid.doors_on_wall(wall):
            doc.circle("doors", _plane(door.point), 2.5 if door.corner else 2.0, DOOR_FILL)
            count += 1
    return count


def draw_pivots(doc: SvgDocument, data: PivotData) -> None:
    doc.polyline("pivots", [_lattice(v) for v in data.arc], PIVOT_FILL, 2.0)
    for v in (data.e_minus, data.e_plus):
        doc.circle("pivots", _lattice(v), 3.0, PIVOT_FILL)


# ===== Documents =====

def graph_svg(
    graph: ArithGraph,
    grid: Optional[Hexagrid] = None,
    pivots: Optional[PivotData] = None,
    settings: Optional[Settings] = None,
) -> str:
    """Render a graph window, optionally with its hexagrid, doors and pivot arc.

    Args:
        graph: Assembled arithmetic graph
        grid: Hexagrid of the same parameter; adds walls, floors and doors
        pivots: Pivot data; adds E± and the pivot arc
        settings: Configuration settings

    Returns:
        SVG document text
    """
    settings = settings or get_settings()
    doc = SvgDocument(
        _bounds(graph),
        settings.output.svg_scale,
        title=f"A = {format_rational(graph.a)}",
    )
    if grid is not None:
        draw_hexagrid(doc, grid)
    draw_baseline(doc, graph.a)
    edges = draw_components(doc, graph)
    doors = draw_doors(doc, grid, graph) if grid is not None else 0
    if pivots is not None:
        draw_pivots(doc, pivots)
    logger.info(f"rendered A={format_rational(graph.a)}: {edges} edges, {doors} doors")
    return doc.render()
