"""
Outer billiards on the kite K(A).

Exact iteration of the outer billiards map ψ' and its square ψ, orbit
traces for special points, the four strip maps, the pinwheel map and the
first return to Ξ = R₊ × {−1, 1} by direct iteration.
"""
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from kitebilliards.config import Settings, get_settings
from kitebilliards.exceptions import (
    BudgetExceededError,
    DomainError,
    SingularStripError,
    UndefinedOrbitError,
)
from kitebilliards.models import (
    Direction,
    LengthSpectrum,
    OrbitTrace,
    PinwheelResult,
    PlanePoint,
    Report,
    ReturnPair,
    ReturnResult,
    format_rational,
    require_unit_interval,
)

logger = logging.getLogger(__name__)

TOP = PlanePoint.of(0, 1)


@dataclass(frozen=True)
class Kite:
    """The kite with vertices (−1,0), (0,1), (0,−1), (A,0)."""
    a: Fraction
    vertices: Tuple[PlanePoint, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        a = require_unit_interval(self.a)
        object.__setattr__(self, "a", a)
        object.__setattr__(
            self,
            "vertices",
            (PlanePoint.of(-1, 0), PlanePoint.of(0, 1), PlanePoint.of(0, -1), PlanePoint(a, Fraction(0))),
        )

    @classmethod
    def of(cls, a) -> "Kite":
        return cls(Fraction(a))

    @property
    def p(self) -> int:
        return self.a.numerator

    @property
    def q(self) -> int:
        return self.a.denominator

    def contains(self, point: PlanePoint) -> bool:
        """Closed kite membership."""
        ring = (self.vertices[0], self.vertices[2], self.vertices[3], self.vertices[1])
        for k in range(4):
            edge = ring[(k + 1) % 4] - ring[k]
            if edge.cross(point - ring[k]) < 0:
                return False
        return True


# ===== Outer Billiards Map =====

def outer_map(kite: Kite, p: PlanePoint, direction: Direction = Direction.FORWARD) -> PlanePoint:
    """One step of outer billiards: ψ'(p) = 2v − p.

    Forward, v is the vertex for which the kite lies strictly right of the
    ray from p through v. Backward uses the left side, which inverts ψ'.

    Raises:
        UndefinedOrbitError: if p lies on an extension of a kite side or
            inside the kite
    """
    sign = -1 if direction is Direction.FORWARD else 1
    touching = None
    for v in kite.vertices:
        ray = v - p
        ok = True
        for u in kite.vertices:
            if u is v:
                continue
            c = ray.cross(u - p) * sign
            if c <= 0:
                if c == 0:
                    touching = v
                ok = False
                break
        if ok:
            return PlanePoint(2 * v.x - p.x, 2 * v.y - p.y)
    if touching is not None and not kite.contains(p):
        raise UndefinedOrbitError(
            f"point ({format_rational(p.x)}, {format_rational(p.y)}) lies on a singular line",
            point=p,
            vertex=touching,
        )
    raise UndefinedOrbitError("no supporting vertex; point is inside the kite", point=p)


def square_map(kite: Kite, p: PlanePoint, direction: Direction = Direction.FORWARD) -> PlanePoint:
    """ψ = ψ'², a translation by twice a difference of vertices."""
    return outer_map(kite, outer_map(kite, p, direction), direction)


def is_special_height(y: Fraction) -> bool:
    return y.denominator == 1 and y.numerator % 2 != 0


def in_xi(p: PlanePoint) -> bool:
    """Membership in Ξ = R₊ × {−1, 1}."""
    return p.x > 0 and abs(p.y) == 1


def check_definedness(kite: Kite, p: PlanePoint) -> None:
    """Reject special points whose orbit meets the singular set.

    For A = p/q a point of R × Z_odd has a defined orbit iff its first
    coordinate avoids 2Z[A] = (2/q)Z.

    Raises:
        UndefinedOrbitError: if x ∈ 2Z[A]
    """
    if not is_special_height(p.y):
        return
    scaled = p.x * kite.q / 2
    if scaled.denominator == 1:
        raise UndefinedOrbitError(
            f"x = {format_rational(p.x)} lies in 2Z[A] for A = {format_rational(kite.a)}",
            point=p,
        )


def square_orbit(
    kite: Kite,
    start: PlanePoint,
    steps: Optional[int] = None,
    direction: Direction = Direction.FORWARD,
    settings: Optional[Settings] = None,
) -> OrbitTrace:
    """Iterate ψ from ``start`` until the orbit closes or ``steps`` run out.

    Args:
        kite: The kite K(A)
        start: Special starting point in R × Z_odd
        steps: Maximum number of ψ-steps (defaults to the configured limit)
        direction: Forward or backward iteration
        settings: Configuration settings

    Returns:
        Orbit trace whose last point equals ``start`` when closed, with the
        first coordinates of all visits to I = [0,2] × {−1}

    Raises:
        UndefinedOrbitError: tagged with the step index at which the orbit
            hits the singular set
    """
    settings = settings or get_settings()
    limit = steps if steps is not None else settings.orbit.max_orbit_steps
    check_definedness(kite, start)

    points = [start]
    hits: List[Fraction] = []
    current = start
    closed = False
    for step in range(limit):
        if current.y == -1 and 0 <= current.x <= 2:
            hits.append(current.x)
        try:
            current = square_map(kite, current, direction)
        except UndefinedOrbitError as e:
            raise e.at_step(step) from e
        points.append(current)
        if current == start:
            closed = True
            break

    if not closed:
        logger.warning(f"orbit of {start} not closed after {limit} steps")
    else:
        logger.debug(f"orbit of {start} closed after {len(points) - 1} steps at A={kite.a}")
    return OrbitTrace(start=start, points=points, closed=closed, hits=sorted(hits))


def orbit_radius(p: PlanePoint) -> int:
    """Integer bound on the distance of p from the origin."""
    return math.ceil(abs(p.x) + abs(p.y))


def first_return_direct(
    kite: Kite,
    p: PlanePoint,
    direction: Direction = Direction.FORWARD,
    budget: Optional[int] = None,
    settings: Optional[Settings] = None,
) -> ReturnResult:
    """First return to Ξ by direct iteration of ψ.

    Args:
        kite: The kite K(A)
        p: Starting point of Ξ
        direction: Forward for Ψ, backward for Ψ⁻¹
        budget: Step budget; defaults to 10·R + 1000 from the settings
        settings: Configuration settings

    Returns:
        Return point, number of ψ-steps and the largest squared distance
        from (0,1) along the way

    Raises:
        DomainError: if p is not in Ξ
        UndefinedOrbitError: if the orbit meets the singular set
        BudgetExceededError: if no return happens within the budget
    """
    if not in_xi(p):
        raise DomainError(f"({format_rational(p.x)}, {format_rational(p.y)}) is not in Ξ")
    settings = settings or get_settings()
    budget = budget if budget is not None else settings.return_budget(orbit_radius(p))

    current = p
    max_sq = (p - TOP).norm_sq()
    for step in range(1, budget + 1):
        try:
            current = square_map(kite, current, direction)
        except UndefinedOrbitError as e:
            raise e.at_step(step) from e
        max_sq = max(max_sq, (current - TOP).norm_sq())
        if in_xi(current):
            return ReturnResult(start=p, point=current, steps=step, max_distance_sq=max_sq)
    raise BudgetExceededError(f"no return to Ξ within {budget} steps from {p}", budget)


def return_pair(kite: Kite, start: PlanePoint, end: PlanePoint) -> ReturnPair:
    """Decode Ψ(p) − p = 2(ε₁A + ε₂, ε₃) for rational displacements."""
    dx = (end.x - start.x) / 2
    eps3 = (end.y - start.y) / 2
    q, pnum = kite.q, kite.p
    scaled = dx * q
    if scaled.denominator != 1 or eps3.denominator != 1:
        raise DomainError(f"displacement ({dx}, {eps3}) is not in Z[A] x Z")
    for eps1 in (-1, 0, 1):
        rest = scaled.numerator - eps1 * pnum
        if rest % q == 0 and abs(rest // q) <= 1:
            return ReturnPair(eps1, rest // q, int(eps3))
    raise DomainError(f"displacement {dx} exceeds the return bound")


# ===== Strips =====

@dataclass(frozen=True)
class Strip:
    """Strip Σ_j with functional F_j(p) = W_j · (x, y, 1) and translation V_j."""
    index: int
    w: Tuple[Fraction, Fraction, Fraction]
    vector: PlanePoint

    def value(self, p: PlanePoint) -> Fraction:
        return self.w[0] * p.x + self.w[1] * p.y + self.w[2]

    def derivative(self, v: PlanePoint) -> Fraction:
        """dF_j applied to a vector."""
        return self.w[0] * v.x + self.w[1] * v.y


def strip_system(kite: Kite) -> Tuple[Strip, Strip, Strip, Strip]:
    a = kite.a
    quarter = Fraction(1, 4)
    side = 1 / (2 + 2 * a)
    return (
        Strip(1, (-quarter, quarter, 3 * quarter), PlanePoint.of(0, 4)),
        Strip(2, (-side, a * side, a * side), PlanePoint.of(-2, 2)),
        Strip(3, (-side, -a * side, a * side), PlanePoint(-2 - 2 * a, Fraction(0))),
        Strip(4, (-quarter, -quarter, 3 * quarter), PlanePoint.of(-2, -2)),
    )


def strip_vector(kite: Kite, j: int) -> PlanePoint:
    """V_j for j = 1..8 with V_{j+4} = −V_j."""
    base = strip_system(kite)[(j - 1) % 4].vector
    return base if (j - 1) % 8 < 4 else -base


def strip_map(strip: Strip, p: PlanePoint) -> PlanePoint:
    """E_j(p) = p − floor(F_j(p)) V_j.

    Raises:
        SingularStripError: if F_j(p) is an integer
    """
    f = strip.value(p)
    if f.denominator == 1:
        raise SingularStripError(f"point lies on the boundary of strip {strip.index}", point=p)
    return p - strip.vector.scaled(math.floor(f))


def strip_intersection_area(first: Strip, second: Strip) -> Fraction:
    """Area of the parallelogram Σ_i ∩ Σ_j."""
    det = first.w[0] * second.w[1] - first.w[1] * second.w[0]
    if det == 0:
        raise DomainError("parallel strips do not meet in a parallelogram")
    return 1 / abs(det)


def verify_strip_identities(kite: Kite) -> Report:
    """dF_j(V_j) = dF_j(V_{j+1}) = 1 with F_{j+4} = −F_j, indices mod 8."""
    report = Report(name="strip_identities")
    strips = strip_system(kite)
    for j in range(1, 9):
        strip = strips[(j - 1) % 4]
        sign = 1 if j <= 4 else -1
        for target in (j, j % 8 + 1):
            report.tick()
            value = sign * strip.derivative(strip_vector(kite, target))
            if value != 1:
                report.fail(a=format_rational(kite.a), j=j, vector=target, value=str(value))
    return report


# ===== Pinwheel =====

def chi(p: PlanePoint) -> PlanePoint:
    """χ(x, 4n ± 1) = (x, ±1)."""
    return PlanePoint(p.x, (p.y + 1) % 4 - 1)


def pinwheel(kite: Kite, p: PlanePoint) -> PinwheelResult:
    """Ψ = χ ∘ E_8 ⋯ E_1 with E_{j+4} = E_j.

    The spectrum entry n_j is the multiple of V_{j+1} applied by the
    (j+1)-th strip map, so Ψ(p) − p = 2(ε₁A + ε₂, ε₃) with
    ε₁ = n₆ − n₂ and ε₂ = n₅ + n₆ + n₇ − n₁ − n₂ − n₃.

    Raises:
        DomainError: if p is not in Ξ
        SingularStripError: if an intermediate point lies on a strip boundary
    """
    if not in_xi(p):
        raise DomainError(f"({format_rational(p.x)}, {format_rational(p.y)}) is not in Ξ")
    strips = strip_system(kite)
    current = p
    counts: List[int] = []
    for j in range(8):
        strip = strips[j % 4]
        f = strip.value(current)
        if f.denominator == 1:
            raise SingularStripError(
                f"pinwheel hit the boundary of strip {strip.index}", point=current, step=j
            )
        k = math.floor(f)
        current = current - strip.vector.scaled(k)
        counts.append(-k if j < 4 else k)

    end = chi(current)
    n = counts
    pair = ReturnPair(
        eps1=n[6] - n[2],
        eps2=n[5] + n[6] + n[7] - n[1] - n[2] - n[3],
        eps3=int((end.y - p.y) / 2),
    )
    return PinwheelResult(point=end, spectrum=LengthSpectrum(tuple(counts)), pair=pair)


def pinwheel_inverse(kite: Kite, p: PlanePoint) -> PlanePoint:
    """Ψ⁻¹ through the reflection conjugacy Ψ⁻¹ = ρ Ψ ρ."""
    return pinwheel(kite, p.mirrored()).point.mirrored()


def verify_pinwheel(
    kite: Kite,
    xs: List[Fraction],
    settings: Optional[Settings] = None,
) -> Report:
    """The pinwheel map equals the direct first return at (x, ±1) for every x.

    Points whose direct orbit or strip chain is singular are skipped.
    """
    settings = settings or get_settings()
    report = Report(name="pinwheel")
    skipped = 0
    for x in xs:
        for y in (-1, 1):
            p = PlanePoint(x, Fraction(y))
            try:
                direct = first_return_direct(kite, p, settings=settings).point
                fast = pinwheel(kite, p).point
            except UndefinedOrbitError:
                skipped += 1
                continue
            report.tick()
            if direct != fast:
                report.fail(
                    a=format_rational(kite.a),
                    x=format_rational(x),
                    y=y,
                    direct=[format_rational(direct.x), format_rational(direct.y)],
                    pinwheel=[format_rational(fast.x), format_rational(fast.y)],
                )
    if skipped:
        logger.warning(f"pinwheel sweep at A={format_rational(kite.a)} skipped {skipped} singular points")
    report.details = {"skipped": skipped}
    return report


# ===== Special Intervals =====

def special_interval_image(kite: Kite, a: int, b: int) -> Tuple[int, int]:
    """Image of the special interval ((a−1)/q, (a+1)/q) × {b} under ψ.

    Args:
        kite: Kite with rational parameter p/q
        a: Odd numerator of the interval centre
        b: Odd height

    Returns:
        (a', b') of the special interval the image lands on

    Raises:
        DomainError: if a or b is even, or ψ does not act rigidly
    """
    if a % 2 == 0 or b % 2 == 0:
        raise DomainError("special intervals have odd centre numerator and odd height")
    q = kite.q
    centre = PlanePoint(Fraction(a, q), Fraction(b))
    shift = square_map(kite, centre) - centre
    for t in (Fraction(-3, 4), Fraction(-1, 2), Fraction(1, 2), Fraction(3, 4)):
        sample = PlanePoint(Fraction(a, q) + t / q, Fraction(b))
        if square_map(kite, sample) - sample != shift:
            raise DomainError(f"ψ is not a translation on the special interval around {a}/{q}")
    image = centre + shift
    return int(image.x * q), int(image.y)


def verify_special_intervals(kite: Kite, max_a: int, max_b: int) -> Report:
    """Every special interval in the window maps rigidly onto another one."""
    report = Report(name="special_intervals")
    for b in range(-max_b, max_b + 1, 2):
        for a in range(-max_a, max_a + 1, 2):
            centre = PlanePoint(Fraction(a, kite.q), Fraction(b))
            if kite.contains(centre):
                continue
            report.tick()
            try:
                a2, b2 = special_interval_image(kite, a, b)
            except (DomainError, UndefinedOrbitError) as e:
                report.fail(a=a, b=b, error=str(e))
                continue
            if a2 % 2 == 0 or b2 % 2 == 0:
                report.fail(a=a, b=b, image=[a2, b2])
    return report


def verify_phase_portrait(kite: Kite, samples: int = 16) -> Report:
    """Ψ is the identity on (2A, 2 − 2A) × {−1} when A < 1/2."""
    report = Report(name="phase_portrait")
    if kite.a >= Fraction(1, 2):
        raise DomainError("the identity interval is empty for A >= 1/2")
    lo, hi = 2 * kite.a, 2 - 2 * kite.a
    for k in range(1, samples + 1):
        x = lo + (hi - lo) * Fraction(2 * k - 1, 2 * samples + 1)
        if (x * kite.q / 2).denominator == 1:
            continue
        p = PlanePoint(x, Fraction(-1))
        report.tick()
        result = first_return_direct(kite, p)
        if result.point != p:
            report.fail(x=format_rational(x), image=format_rational(result.point.x))
    return report
