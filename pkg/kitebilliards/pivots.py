"""
Pivot points and pivot arcs.

For odd A the pivot points E± come from the inferior chain: starting at
(0,0), each step adds d_n·V_n to E⁺ when the chain rises and subtracts it
from E⁻ when it falls. Even parameters borrow the pivot points of their
odd partner. The pivot arc PΓ is the arc of Γ from E⁻ to E⁺.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Tuple

from kitebilliards.config import Settings, get_settings
from kitebilliards.exceptions import BudgetExceededError, DomainError
from kitebilliards.hexagrid import room_path
from kitebilliards.masterpicture import MasterPicture, fundamental_point, is_low_vertex
from kitebilliards.models import (
    ORIGIN,
    LatticePoint,
    Report,
    SequenceChain,
    format_rational,
    is_odd,
    require_unit_interval,
)
from kitebilliards.seqcore import farey_neighbors, farey_sum, predecessor_chain, superior_predecessor

logger = logging.getLogger(__name__)


@dataclass
class PivotData:
    """Pivot points and arc of Γ(A)."""
    a: Fraction
    e_minus: LatticePoint
    e_plus: LatticePoint
    source: Fraction
    arc: List[LatticePoint] = field(default_factory=list)

    def to_json_dict(self) -> Dict[str, object]:
        return {
            "A": format_rational(self.a),
            "source": format_rational(self.source),
            "E-": list(self.e_minus.as_tuple()),
            "E+": list(self.e_plus.as_tuple()),
            "arc": [list(v.as_tuple()) for v in self.arc],
        }


def lattice_vector(a: Fraction) -> LatticePoint:
    """V = (q, −p)."""
    return LatticePoint(a.denominator, -a.numerator)


# ===== Pivot Points =====

def pivot_recursion(chain: SequenceChain) -> Tuple[LatticePoint, LatticePoint]:
    """(E⁻, E⁺) at the end of an inferior chain."""
    e_minus = e_plus = ORIGIN
    for n in range(len(chain.terms) - 1):
        step = lattice_vector(chain.terms[n]).scaled(chain.ds[n])
        if chain.sides[n] > 0:
            e_plus = e_plus + step
        else:
            e_minus = e_minus - step
    return e_minus, e_plus


def even_partner(a: Fraction) -> Fraction:
    """The unique odd A₂ Farey related to an even A₁ with 2q₁ > q₂.

    A₂ = A₁ ⊕ A₁′, where A₁′ is the even one of the two Farey neighbours.

    Raises:
        DomainError: if ``a`` is odd
    """
    a = require_unit_interval(Fraction(a))
    if is_odd(a):
        raise DomainError(f"{format_rational(a)} is odd")
    pair = farey_neighbors(a)
    other = pair.minus if not is_odd(pair.minus) else pair.plus
    partner = farey_sum(a, other)
    if not is_odd(partner) or 2 * a.denominator <= partner.denominator:
        raise DomainError(f"no odd partner found for {format_rational(a)}")
    return partner


def pivot_endpoints(a: Fraction) -> Tuple[LatticePoint, LatticePoint, Fraction]:
    """(E⁻, E⁺, odd source parameter) without tracing the arc."""
    a = require_unit_interval(Fraction(a))
    source = a if is_odd(a) else even_partner(a)
    e_minus, e_plus = pivot_recursion(predecessor_chain(source))
    return e_minus, e_plus, source


def swap_identity(a: Fraction) -> LatticePoint:
    """E⁺ + E⁻ predicted from the Farey pair of an odd parameter.

    q₋ < q₊ gives −V₋ + (0,1); otherwise V₊ + (0,1).
    """
    pair = farey_neighbors(Fraction(a))
    if pair.minus.denominator < pair.plus.denominator:
        return LatticePoint(-pair.minus.denominator, pair.minus.numerator + 1)
    return LatticePoint(pair.plus.denominator, -pair.plus.numerator + 1)


# ===== Pivot Arc =====

def _walker(picture: MasterPicture, start: LatticePoint, first: LatticePoint) -> Iterator[List[LatticePoint]]:
    path = [start, first]
    prev, current = start, first
    yield path
    while True:
        onward = [w for w in (picture.forward(current), picture.backward(current)) if w not in (prev, current)]
        if not onward:
            return
        prev, current = current, onward[0]
        path.append(current)
        yield path


def _height(a: Fraction, path: List[LatticePoint]) -> int:
    return max(a.numerator * v.m + a.denominator * v.n for v in path)


def pivot_arc(
    a: Fraction,
    e_minus: LatticePoint,
    e_plus: LatticePoint,
    settings: Optional[Settings] = None,
) -> List[LatticePoint]:
    """Arc of Γ(A) from E⁻ to E⁺.

    Both directions out of E⁻ are followed in lockstep. For a closed Γ
    (even A) the lower of the two arcs is returned.

    Raises:
        DomainError: if E⁻ is an isolated vertex
        BudgetExceededError: if E⁺ is not reached
    """
    settings = settings or get_settings()
    a = Fraction(a)
    if e_minus == e_plus:
        return [e_minus]
    picture = MasterPicture(a, settings=settings)
    starts = [picture.forward(e_minus), picture.backward(e_minus)]
    if e_minus in starts:
        raise DomainError(f"{e_minus.as_tuple()} is not a vertex of a non-trivial component")
    walkers = [_walker(picture, e_minus, first) for first in starts]
    found: List[List[LatticePoint]] = []
    live = list(walkers)
    budget = settings.graph.trace_max_steps
    for _ in range(budget):
        if not live:
            break
        still = []
        for walker in live:
            path = next(walker, None)
            if path is None:
                continue
            if path[-1] == e_plus:
                found.append(list(path))
            elif path[-1] != e_minus:
                still.append(walker)
        live = still
        if found and is_odd(a):
            break
    if not found:
        raise BudgetExceededError(
            f"no arc from {e_minus.as_tuple()} to {e_plus.as_tuple()} for A={format_rational(a)}", budget=budget
        )
    return min(found, key=lambda path: (_height(a, path), len(path)))


def pivot_points(a: Fraction, settings: Optional[Settings] = None) -> PivotData:
    """Pivot points and pivot arc; even parameters use their odd partner's points.

    Raises:
        DomainError: if the chain is unavailable
    """
    e_minus, e_plus, source = pivot_endpoints(a)
    a = Fraction(a)
    data = PivotData(a=a, e_minus=e_minus, e_plus=e_plus, source=source)
    data.arc = pivot_arc(a, e_minus, e_plus, settings)
    logger.info(
        f"pivots of A={format_rational(a)}: E-={e_minus.as_tuple()} E+={e_plus.as_tuple()}, "
        f"arc of {len(data.arc)} vertices"
    )
    return data


# ===== Low Vertices =====

def low_class(a: Fraction, v: LatticePoint) -> Tuple[int, int]:
    """Representative of v modulo ZV: (m mod q, pm + qn)."""
    return v.m % a.denominator, a.numerator * v.m + a.denominator * v.n


def low_vertices(a: Fraction, path: List[LatticePoint]) -> List[LatticePoint]:
    return [v for v in path if is_low_vertex(a, v.m, v.n)]


def low_orbit_points(data: PivotData) -> List[Fraction]:
    """M₁ of the even low vertices on PΓ, with M(0,0) = (1/q, −1)."""
    a = data.a
    half = Fraction(1, 2 * a.denominator)
    return sorted(
        fundamental_point(a, half, v.m, v.n).x
        for v in low_vertices(a, data.arc)
        if (v.m + v.n) % 2 == 0
    )


def verify_low_vertex_symmetry(data: PivotData, period: List[LatticePoint]) -> Report:
    """u ↦ (E⁺ + E⁻) − u permutes the low vertices of one period modulo V.

    Its image under M is x ↦ 2 − x.
    """
    a = data.a
    total = data.e_plus + data.e_minus
    half = Fraction(1, 2 * a.denominator)
    report = Report(name="low_symmetry")
    lows = low_vertices(a, period)
    classes = {low_class(a, v) for v in lows}
    for v in lows:
        image = total - v
        report.tick()
        if low_class(a, image) not in classes:
            report.fail(kind="class", vertex=v.as_tuple(), image=image.as_tuple())
        if fundamental_point(a, half, image.m, image.n).x != 2 - fundamental_point(a, half, v.m, v.n).x:
            report.fail(kind="reflection", vertex=v.as_tuple())
    return report


# ===== Verification =====

def verify_pivot(data: PivotData, settings: Optional[Settings] = None) -> Report:
    """Pivot bounds, swap identity and the low-vertex census of one period.

    For odd A every low vertex of a period of Γ must match a vertex of PΓ
    modulo ZV, and PΓ holds exactly one period's worth of low vertices.
    """
    a = data.a
    q = a.denominator
    report = Report(name="pivot")
    report.tick()
    if not -Fraction(q, 2) < data.e_minus.m < data.e_plus.m < Fraction(q, 2):
        report.fail(kind="bound", e_minus=data.e_minus.as_tuple(), e_plus=data.e_plus.as_tuple())
    report.tick()
    if ORIGIN not in data.arc:
        report.fail(kind="origin", detail="(0,0) is not on the pivot arc")
    if is_odd(a):
        report.tick()
        if data.e_plus + data.e_minus != swap_identity(a):
            report.fail(kind="swap", total=(data.e_plus + data.e_minus).as_tuple())
        period = room_path(a, settings)[:-1]
        on_period = {low_class(a, v) for v in low_vertices(a, period)}
        on_arc = {low_class(a, v) for v in low_vertices(a, data.arc)}
        report.tick()
        if on_period != on_arc:
            report.fail(
                kind="census",
                missing=sorted(on_period - on_arc)[:10],
                extra=sorted(on_arc - on_period)[:10],
            )
        report.absorb(verify_low_vertex_symmetry(data, period))
        report.details["low_vertices"] = len(on_period)
    return report


def structure_relation(a: Fraction, settings: Optional[Settings] = None) -> Report:
    """Pivot points of an odd A against a Farey neighbour B with 2q_B < q.

    B = A₋ gives E⁺(A) = E⁺(B) and E⁻(A) + V = E⁻(B) + kV_B; B = A₊ gives
    E⁻(A) = E⁻(B) and E⁺(A) − V = E⁺(B) + kV_B.
    """
    a = Fraction(a)
    if not is_odd(a):
        raise DomainError(f"{format_rational(a)} is even")
    e_minus, e_plus, _ = pivot_endpoints(a)
    v = lattice_vector(a)
    pair = farey_neighbors(a)
    report = Report(name="structure")
    for label, b in (("minus", pair.minus), ("plus", pair.plus)):
        if not 0 < b < 1 or 2 * b.denominator >= a.denominator:
            continue
        b_minus, b_plus, _ = pivot_endpoints(b)
        vb = lattice_vector(b)
        if label == "minus":
            same, shifted, base = (e_plus, b_plus), e_minus + v - b_minus, "E-"
        else:
            same, shifted, base = (e_minus, b_minus), e_plus - v - b_plus, "E+"
        report.tick()
        if same[0] != same[1]:
            report.fail(kind="fixed", neighbor=format_rational(b), points=[same[0].as_tuple(), same[1].as_tuple()])
        report.tick()
        k, rest = divmod(shifted.m, vb.m)
        if rest or shifted.n != k * vb.n:
            report.fail(kind="shift", neighbor=format_rational(b), point=base, offset=shifted.as_tuple())
        else:
            report.details[label] = {"neighbor": format_rational(b), "k": k}
    return report


def copy_check(a: Fraction, settings: Optional[Settings] = None) -> Report:
    """PΓ(A) is a path of Γ̂ at the superior predecessor, through (0,0)."""
    a = Fraction(a)
    data = pivot_points(a, settings)
    b = superior_predecessor(a)
    picture = MasterPicture(b, settings=settings)
    report = Report(name="copy")
    report.details = {"predecessor": format_rational(b), "arc": len(data.arc)}
    report.tick()
    if ORIGIN not in data.arc:
        report.fail(kind="origin")
    for u, w in zip(data.arc, data.arc[1:]):
        report.tick()
        try:
            adjacent = w in (picture.forward(u), picture.backward(u))
        except DomainError as e:
            report.fail(kind="baseline", vertex=u.as_tuple(), error=str(e))
            continue
        if not adjacent:
            report.fail(kind="edge", edge=[u.as_tuple(), w.as_tuple()])
    return report


def even_arc_agreement(a: Fraction, settings: Optional[Settings] = None) -> Report:
    """PΓ(A₁) = PΓ(A₂) for an even A₁ and its odd partner A₂."""
    first = pivot_points(a, settings)
    second = pivot_points(first.source, settings)
    report = Report(name="even_arc")
    report.tick()
    if first.arc != second.arc:
        report.fail(
            a=format_rational(first.a),
            partner=format_rational(second.a),
            lengths=[len(first.arc), len(second.arc)],
        )
    return report
