"""
Arithmetic graph assembly and structural checks.

The graph lives on lattice points on or above the baseline pm + qn = 0.
Edges come from the master picture oracle; components are assembled by
union over undirected edges and Γ is the component of the origin.
"""
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Set, Tuple

from kitebilliards.config import Settings, get_settings
from kitebilliards.dynamics import Kite, pinwheel
from kitebilliards.exceptions import BudgetExceededError, DomainError, UndefinedOrbitError
from kitebilliards.masterpicture import (
    Edges,
    MasterPicture,
    edges_at,
    fundamental_point,
    is_above_baseline,
    is_low_vertex,
)
from kitebilliards.models import (
    ORIGIN,
    Direction,
    LatticePoint,
    PlanePoint,
    Report,
    format_rational,
    is_odd,
    require_unit_interval,
)
from kitebilliards.seqcore import admissibility, diophantine_constant, farey_neighbors

logger = logging.getLogger(__name__)

Coefficients = Tuple[Fraction, Fraction]


# ===== Windows =====

@dataclass(frozen=True)
class Window:
    """Inclusive integer rectangle [m0, m1] × [n0, n1]."""
    m0: int
    m1: int
    n0: int
    n1: int

    def __post_init__(self) -> None:
        if self.m0 > self.m1 or self.n0 > self.n1:
            raise DomainError(f"empty window {self.as_tuple()}")

    @classmethod
    def parse(cls, text: str) -> "Window":
        """Parse ``"x0,x1,y0,y1"``.

        Raises:
            DomainError: if the text is not four integers
        """
        parts = [part.strip() for part in text.split(",")]
        if len(parts) != 4:
            raise DomainError(f"window needs four integers, got {text!r}")
        try:
            m0, m1, n0, n1 = (int(part) for part in parts)
        except ValueError as e:
            raise DomainError(f"cannot parse window {text!r}") from e
        return cls(m0, m1, n0, n1)

    @classmethod
    def default_for(cls, a: Fraction, settings: Optional[Settings] = None) -> "Window":
        """[−fq, fq] × [−fq/2, fq] with f = ``graph.window_q_factor``."""
        settings = settings or get_settings()
        q = Fraction(a).denominator
        f = settings.graph.window_q_factor
        return cls(-f * q, f * q, -(f * q) // 2, f * q)

    def contains(self, v: LatticePoint) -> bool:
        return self.m0 <= v.m <= self.m1 and self.n0 <= v.n <= self.n1

    def points(self) -> Iterator[LatticePoint]:
        for m in range(self.m0, self.m1 + 1):
            for n in range(self.n0, self.n1 + 1):
                yield LatticePoint(m, n)

    def radius(self) -> int:
        return max(abs(self.m0), abs(self.m1)) + max(abs(self.n0), abs(self.n1))

    def as_tuple(self) -> Tuple[int, int, int, int]:
        return self.m0, self.m1, self.n0, self.n1


# ===== Graph Assembly =====

@dataclass
class ArithGraph:
    """Edges and components of Γ̂(A) inside a window."""
    a: Fraction
    alpha: Fraction
    window: Window
    edges: Dict[LatticePoint, Edges]
    components: List[List[LatticePoint]] = field(default_factory=list)
    closed: List[bool] = field(default_factory=list)
    component_of: Dict[LatticePoint, int] = field(default_factory=dict)
    isolated: List[LatticePoint] = field(default_factory=list)
    gamma_index: Optional[int] = None

    @property
    def p(self) -> int:
        return self.a.numerator

    @property
    def q(self) -> int:
        return self.a.denominator

    def forward(self, v: LatticePoint) -> LatticePoint:
        return v + self.edges[v][0]

    def backward(self, v: LatticePoint) -> LatticePoint:
        return v + self.edges[v][1]

    def neighbors(self, v: LatticePoint) -> List[LatticePoint]:
        forward, backward = self.edges[v]
        return sorted({v + offset for offset in (forward, backward) if not offset.is_zero()})

    def undirected_edges(self) -> Iterator[Tuple[LatticePoint, LatticePoint]]:
        """Each edge once, as (smaller, larger); far endpoints may lie outside the window."""
        seen: Set[Tuple[LatticePoint, LatticePoint]] = set()
        for v in sorted(self.edges):
            for w in self.neighbors(v):
                key = (min(v, w), max(v, w))
                if key not in seen:
                    seen.add(key)
                    yield key

    @property
    def gamma(self) -> List[LatticePoint]:
        """Vertices of Γ inside the window."""
        if self.gamma_index is None:
            return []
        return self.components[self.gamma_index]

    def assemble(self) -> None:
        """Group vertices into components by union over undirected edges."""
        parent: Dict[LatticePoint, LatticePoint] = {}

        def find(v: LatticePoint) -> LatticePoint:
            root = v
            while parent[root] != root:
                root = parent[root]
            while parent[v] != root:
                parent[v], v = root, parent[v]
            return root

        self.components, self.closed, self.component_of, self.isolated = [], [], {}, []
        for v in sorted(self.edges):
            forward, backward = self.edges[v]
            if forward.is_zero() and backward.is_zero():
                self.isolated.append(v)
            else:
                parent[v] = v
        for v, w in self.undirected_edges():
            if v in parent and w in parent:
                rv, rw = find(v), find(w)
                if rv != rw:
                    parent[max(rv, rw)] = min(rv, rw)

        groups: Dict[LatticePoint, List[LatticePoint]] = {}
        for v in sorted(parent):
            groups.setdefault(find(v), []).append(v)
        for index, root in enumerate(sorted(groups)):
            members = groups[root]
            self.components.append(members)
            self.closed.append(all(w in self.edges for v in members for w in self.neighbors(v)))
            for v in members:
                self.component_of[v] = index
        self.gamma_index = self.component_of.get(ORIGIN)


def build_graph(
    a: Fraction,
    alpha: Optional[Fraction] = None,
    window: Optional[Window] = None,
    settings: Optional[Settings] = None,
) -> ArithGraph:
    """Evaluate the master picture on every window vertex on or above the baseline.

    Args:
        a: Kite parameter
        alpha: Offset of the fundamental map; defaults to 1/(2q)
        window: Lattice window; defaults to ``Window.default_for(a)``
        settings: Configuration settings

    Returns:
        Assembled graph with Γ designated as the component of (0, 0)
    """
    settings = settings or get_settings()
    a = require_unit_interval(Fraction(a))
    window = window or Window.default_for(a, settings)
    picture = MasterPicture(a, alpha, settings)
    edges: Dict[LatticePoint, Edges] = {}
    for v in window.points():
        if is_above_baseline(a, v.m, v.n):
            edges[v] = picture.edges(v.m, v.n)
    graph = ArithGraph(a=a, alpha=picture.alpha, window=window, edges=edges)
    graph.assemble()
    logger.info(
        f"built graph for A={format_rational(a)} on {window.as_tuple()}: "
        f"{len(edges)} vertices, {len(graph.components)} components, {len(graph.isolated)} isolated"
    )
    return graph


# ===== Tracing =====

def walk(
    picture: MasterPicture,
    start: LatticePoint,
    first: LatticePoint,
    stop: Optional[LatticePoint] = None,
    max_steps: Optional[int] = None,
) -> List[LatticePoint]:
    """Follow the undirected path start → first → … without backtracking.

    The walk ends at ``stop``, on a return to ``start``, or at a vertex
    with no other neighbour.

    Raises:
        BudgetExceededError: if none of these happens within ``max_steps``
    """
    max_steps = max_steps or picture.settings.graph.trace_max_steps
    path = [start, first]
    prev, current = start, first
    for _ in range(max_steps):
        if current == stop or current == start:
            return path
        onward = [w for w in (picture.forward(current), picture.backward(current)) if w not in (prev, current)]
        if not onward:
            return path
        prev, current = current, onward[0]
        path.append(current)
    raise BudgetExceededError(
        f"walk from {start.as_tuple()} did not finish in {max_steps} steps", budget=max_steps
    )


def trace_component(
    a: Fraction,
    start: LatticePoint = ORIGIN,
    direction: Direction = Direction.FORWARD,
    stop: Optional[LatticePoint] = None,
    max_steps: Optional[int] = None,
    alpha: Optional[Fraction] = None,
    settings: Optional[Settings] = None,
    picture: Optional[MasterPicture] = None,
) -> List[LatticePoint]:
    """Trace a component from ``start`` along forward or backward edges.

    Edges are evaluated on demand, so no window is needed.

    Returns:
        The visited vertices; for a closed component the list ends with ``start``

    Raises:
        BudgetExceededError: if neither ``stop`` nor ``start`` is reached in time
    """
    picture = picture or MasterPicture(a, alpha, settings)
    max_steps = max_steps or picture.settings.graph.trace_max_steps
    step = picture.forward if direction is Direction.FORWARD else picture.backward
    path = [start]
    current = start
    for _ in range(max_steps):
        following = step(current)
        if following == current:
            return path
        path.append(following)
        if following == start or following == stop:
            return path
        current = following
    raise BudgetExceededError(
        f"trace from {start.as_tuple()} did not close in {max_steps} steps", budget=max_steps
    )


# ===== Embedding =====

def _orientation(a: LatticePoint, b: LatticePoint, c: LatticePoint) -> int:
    value = (b.m - a.m) * (c.n - a.n) - (b.n - a.n) * (c.m - a.m)
    return (value > 0) - (value < 0)


def segments_cross(
    first: Tuple[LatticePoint, LatticePoint],
    second: Tuple[LatticePoint, LatticePoint],
) -> bool:
    """True when two lattice segments share a point other than a common endpoint."""
    a, b = first
    c, d = second
    o1, o2 = _orientation(a, b, c), _orientation(a, b, d)
    o3, o4 = _orientation(c, d, a), _orientation(c, d, b)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    if o1 == o2 == o3 == o4 == 0:
        # collinear: overlap is more than a shared endpoint
        def span(u: LatticePoint, v: LatticePoint) -> Tuple[LatticePoint, LatticePoint]:
            return min(u, v), max(u, v)

        (lo1, hi1), (lo2, hi2) = span(a, b), span(c, d)
        return max(lo1, lo2) < min(hi1, hi2)
    return False


def check_embedding(graph: ArithGraph) -> Report:
    """Valence, edge length, orientation, crossings, baseline and low-vertex parity.

    Every vertex has both offsets zero or both non-zero and at most two
    neighbours; forward and backward edges are inverse to each other; no
    two edges cross; no edge ends below the baseline; no component holds
    low vertices of both parities.
    """
    a = graph.a
    report = Report(name="embedding")
    adjacency: Dict[LatticePoint, Set[LatticePoint]] = {}
    for v, w in graph.undirected_edges():
        adjacency.setdefault(v, set()).add(w)
        adjacency.setdefault(w, set()).add(v)

    for v in sorted(graph.edges):
        forward, backward = graph.edges[v]
        report.tick()
        if forward.is_zero() != backward.is_zero():
            report.fail(kind="valence", vertex=v.as_tuple())
        if any(max(abs(o.m), abs(o.n)) > 1 for o in (forward, backward)):
            report.fail(kind="length", vertex=v.as_tuple())
        if len(adjacency.get(v, ())) > 2:
            report.fail(kind="degree", vertex=v.as_tuple(), neighbors=[w.as_tuple() for w in sorted(adjacency[v])])
        ahead = v + forward
        if not forward.is_zero() and ahead in graph.edges and graph.backward(ahead) != v:
            report.fail(kind="orientation", vertex=v.as_tuple(), forward=ahead.as_tuple())
        for w in graph.neighbors(v):
            if not is_above_baseline(a, w.m, w.n):
                report.fail(kind="baseline", edge=[v.as_tuple(), w.as_tuple()])

    # two edges can only meet away from endpoints as the diagonals of one unit square
    squares: Dict[Tuple[int, int], List[Tuple[LatticePoint, LatticePoint]]] = {}
    for v, w in graph.undirected_edges():
        if v.m != w.m and v.n != w.n:
            squares.setdefault((min(v.m, w.m), min(v.n, w.n)), []).append((v, w))
    for cell, segments in squares.items():
        for i in range(len(segments)):
            for j in range(i + 1, len(segments)):
                if segments_cross(segments[i], segments[j]):
                    report.fail(
                        kind="crossing",
                        edges=[[u.as_tuple() for u in segments[i]], [u.as_tuple() for u in segments[j]]],
                    )

    for index, members in enumerate(graph.components):
        parities = {(v.m + v.n) % 2 for v in members if is_low_vertex(a, v.m, v.n)}
        if len(parities) > 1:
            report.fail(kind="parity", component=index, first=members[0].as_tuple())

    report.details = {
        "components": len(graph.components),
        "closed": sum(graph.closed),
        "isolated": len(graph.isolated),
        "gamma_size": len(graph.gamma),
    }
    logger.info(
        f"embedding check for A={format_rational(a)}: {report.checked} vertices, "
        f"{len(report.failures)} failures"
    )
    return report


# ===== Symmetries =====

def period_vector(a: Fraction) -> LatticePoint:
    """V = (q, −p) for odd A; 2V for even A, where V flips the parity of m + n."""
    a = Fraction(a)
    v = LatticePoint(a.denominator, -a.numerator)
    return v if is_odd(a) else v.scaled(2)


def verify_translation_invariance(graph: ArithGraph) -> Report:
    """Edges at v and v + V agree wherever both lie in the window."""
    report = Report(name="translation")
    shift = period_vector(graph.a)
    for v in sorted(graph.edges):
        w = v + shift
        if w not in graph.edges:
            continue
        report.tick()
        if graph.edges[v] != graph.edges[w]:
            report.fail(vertex=v.as_tuple(), shifted=w.as_tuple())
    return report


def iota(a: Fraction, v: LatticePoint) -> LatticePoint:
    """ι(m, n) = V₊ − (m, n), with V₊ = (q₊, −p₊)."""
    plus = farey_neighbors(Fraction(a)).plus
    return LatticePoint(plus.denominator - v.m, -plus.numerator - v.n)


def verify_rotational_symmetry(graph: ArithGraph) -> Report:
    """The undirected offsets at ι(v) are the negated offsets at v.

    ι carries the graph above the baseline onto the part below it, so the
    image side is evaluated without the baseline guard. Both sides use
    α = 1/(2q), where M₁(ι(v)) = −M₁(v).
    """
    a = graph.a
    half = Fraction(1, 2 * a.denominator)
    report = Report(name="rotation")
    for v in sorted(graph.edges):
        u = iota(a, v)
        here = {o for o in edges_at(a, half, v.m, v.n)}
        there = {o for o in edges_at(a, half, u.m, u.n, require_baseline=False)}
        report.tick()
        if there != {-o for o in here}:
            report.fail(vertex=v.as_tuple(), image=u.as_tuple())
    return report


# ===== Diophantine Agreement =====

def diophantine_functionals(a: Fraction) -> Tuple[Coefficients, Coefficients, Coefficients]:
    """Coefficient pairs of F, G and H for an odd parameter."""
    p, q = Fraction(a).numerator, Fraction(a).denominator
    s = p + q
    f = (Fraction(p, q), Fraction(1))
    g = (Fraction(q - p, s), Fraction(-2 * q, s))
    h = (Fraction(-p * p + 4 * p * q + q * q, s * s), Fraction(2 * q * (q - p), s * s))
    return f, g, h


def _apply(coefficients: Coefficients, v: LatticePoint) -> Fraction:
    return coefficients[0] * v.m + coefficients[1] * v.n


def agreement_interval(a1: Fraction, a2: Fraction) -> Tuple[Fraction, Fraction]:
    """I = [−q₁+2, Ωq₁−2] when A₁ < A₂, else [−Ωq₁+2, q₁−2]."""
    q1 = a1.denominator
    omega = diophantine_constant(a1, a2)
    if a1 < a2:
        return Fraction(-q1 + 2), omega * q1 - 2
    return -omega * q1 + 2, Fraction(q1 - 2)


def delta_region(a: Fraction, interval: Tuple[Fraction, Fraction]) -> List[LatticePoint]:
    """Lattice points with G, H ∈ I and F ≥ 0.

    Candidates come from the bounding box of the parallelogram G, H ∈ I.
    """
    f, g, h = diophantine_functionals(a)
    lo, hi = interval
    det = g[0] * h[1] - g[1] * h[0]
    corners = []
    for gv in (lo, hi):
        for hv in (lo, hi):
            corners.append(((gv * h[1] - g[1] * hv) / det, (g[0] * hv - gv * h[0]) / det))
    m_lo = math.floor(min(c[0] for c in corners))
    m_hi = math.ceil(max(c[0] for c in corners))
    n_lo = math.floor(min(c[1] for c in corners))
    n_hi = math.ceil(max(c[1] for c in corners))
    points = []
    for m in range(m_lo, m_hi + 1):
        for n in range(n_lo, n_hi + 1):
            v = LatticePoint(m, n)
            if _apply(f, v) >= 0 and lo <= _apply(g, v) <= hi and lo <= _apply(h, v) <= hi:
                points.append(v)
    return points


def diophantine_agreement(
    a1: Fraction,
    a2: Fraction,
    settings: Optional[Settings] = None,
) -> Report:
    """Γ̂(A₁) and Γ̂(A₂) agree on Δ₁(I) ∪ Δ₂(I) for an admissible odd pair.

    Points below either baseline are skipped and counted.

    Raises:
        DomainError: if the pair is not admissible or not odd
    """
    settings = settings or get_settings()
    a1, a2 = Fraction(a1), Fraction(a2)
    if admissibility(a1, a2) <= 1:
        raise DomainError(f"({format_rational(a1)}, {format_rational(a2)}) is not admissible")
    interval = agreement_interval(a1, a2)
    points = sorted(set(delta_region(a1, interval)) | set(delta_region(a2, interval)))
    first = MasterPicture(a1, settings=settings)
    second = MasterPicture(a2, settings=settings)
    report = Report(name="diophantine")
    skipped = 0
    for v in points:
        if not (is_above_baseline(a1, v.m, v.n) and is_above_baseline(a2, v.m, v.n)):
            skipped += 1
            continue
        report.tick()
        if first.edges(v.m, v.n) != second.edges(v.m, v.n):
            report.fail(vertex=v.as_tuple())
    for a in (a1, a2):
        _, g, h = diophantine_functionals(a)
        for name, coefficients in (("G", g), ("H", h)):
            report.tick()
            if coefficients[0] ** 2 + coefficients[1] ** 2 > 9:
                report.fail(kind="gradient", a=format_rational(a), functional=name)
    report.details = {
        "interval": [str(interval[0]), str(interval[1])],
        "points": len(points),
        "skipped_below_baseline": skipped,
    }
    logger.info(
        f"Diophantine agreement {format_rational(a1)} / {format_rational(a2)}: "
        f"{report.checked} checks, {skipped} skipped"
    )
    return report


# ===== Orbit Structure =====

def interval_width(a: Fraction) -> int:
    """Width of I_k: p + q for odd A, 2(p + q) for even A."""
    a = Fraction(a)
    scale = 1 if is_odd(a) else 2
    return scale * (a.numerator + a.denominator)


def interval_index(a: Fraction, x: Fraction) -> Optional[int]:
    """k with x ∈ I_k, or None on an endpoint."""
    width = interval_width(a)
    k = math.floor(x / width)
    if x == k * width:
        return None
    return k


def verify_orbit_intervals(graph: ArithGraph) -> Report:
    """Every component's M₁ values lie in a single I_k."""
    report = Report(name="orbit_intervals")
    for index, members in enumerate(graph.components):
        report.tick()
        found = {interval_index(graph.a, fundamental_point(graph.a, graph.alpha, v.m, v.n).x) for v in members}
        if len(found) != 1 or None in found:
            report.fail(component=index, first=members[0].as_tuple(), intervals=sorted(str(k) for k in found))
    return report


def unstable_census(a: Fraction, k: int = 0) -> Report:
    """Partition the special points of I_k × {±1} into Ψ-cycles.

    The points are (s/q, ±1) with s odd. A cycle is unstable when its
    summed return offsets are non-zero. Odd parameters carry exactly two
    unstable cycles, mirror images of each other; even parameters carry none.
    """
    a = Fraction(a)
    kite = Kite(a)
    q = a.denominator
    width = interval_width(a)
    lo, hi = k * width * q, (k + 1) * width * q
    points = [
        PlanePoint(Fraction(s, q), Fraction(sign))
        for s in range(lo + 1, hi)
        if s % 2
        for sign in (-1, 1)
    ]
    members = set(points)
    seen: Set[PlanePoint] = set()
    unstable: List[Set[PlanePoint]] = []
    report = Report(name="unstable_census")
    cycles = 0
    for start in points:
        if start in seen:
            continue
        cycle = {start}
        eps1 = eps2 = 0
        current = start
        for _ in range(len(points) + 1):
            try:
                result = pinwheel(kite, current)
            except UndefinedOrbitError as e:
                report.fail(kind="undefined", point=[str(current.x), str(current.y)], error=str(e))
                break
            eps1 += result.pair.eps1
            eps2 += result.pair.eps2
            current = result.point
            report.tick()
            if current == start:
                break
            if current not in members:
                report.fail(kind="escape", start=[str(start.x), str(start.y)], point=[str(current.x), str(current.y)])
                break
            cycle.add(current)
        seen |= cycle
        cycles += 1
        if (eps1, eps2) != (0, 0):
            unstable.append(cycle)

    expected = 2 if is_odd(a) else 0
    if len(unstable) != expected:
        report.fail(kind="count", unstable=len(unstable), expected=expected)
    elif expected:
        first, second = unstable
        if {p.mirrored() for p in first} != second:
            report.fail(kind="reflection")
        if k == 0:
            seeds = {PlanePoint(Fraction(1, q), Fraction(-1)), PlanePoint(Fraction(1, q), Fraction(1))}
            if not all(any(seed in cycle for cycle in unstable) for seed in seeds):
                report.fail(kind="fundamental", detail="(1/q, ±1) not on the unstable cycles")
    report.details = {"k": k, "points": len(points), "cycles": cycles, "unstable": len(unstable)}
    logger.info(
        f"unstable census A={format_rational(a)} k={k}: {cycles} cycles, {len(unstable)} unstable"
    )
    return report


def stability_census(graph: ArithGraph) -> Report:
    """Closed components keep their edges at A ± ε.

    ε is far below the distance from any window vertex to a wall of the
    partition, so a closed component must survive the perturbation.
    """
    a = graph.a
    q = a.denominator
    eps = Fraction(1, 1000 * q * q * (graph.window.radius() + 1))
    report = Report(name="stability")
    closed = [members for members, is_closed in zip(graph.components, graph.closed) if is_closed]
    for members in closed:
        for nearby in (a - eps, a + eps):
            for v in members:
                report.tick()
                if edges_at(nearby, graph.alpha, v.m, v.n, require_baseline=False) != graph.edges[v]:
                    report.fail(a=format_rational(a), nearby=str(nearby), vertex=v.as_tuple())
                    break
    report.details = {"closed": len(closed), "open": len(graph.components) - len(closed)}
    return report
