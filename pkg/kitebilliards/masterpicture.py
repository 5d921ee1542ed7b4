"""
Master picture evaluation.

Lattice points (m, n) are mapped through s = Am + n + α into the fundamental
domain R_A = [0,1+A]² × [0,1] of the lattice Λ_A, classified by a 5-tuple
index and turned into the two edge offsets of the arithmetic graph.
"""
import logging
import math
from fractions import Fraction
from typing import Dict, Iterable, Optional, Tuple

from kitebilliards.config import Settings, get_settings
from kitebilliards.dynamics import Kite, pinwheel, pinwheel_inverse, return_pair
from kitebilliards.exceptions import DomainError, UndefinedOrbitError
from kitebilliards.models import (
    ClassifierIndex,
    LatticePoint,
    MasterPoint,
    PlanePoint,
    Report,
    Sign,
    format_rational,
    require_unit_interval,
)

logger = logging.getLogger(__name__)

Triple = Tuple[Fraction, Fraction, Fraction]
Edges = Tuple[LatticePoint, LatticePoint]


# ===== Fundamental Map =====

def default_alpha(a: Fraction, settings: Optional[Settings] = None) -> Fraction:
    """α = 1/(2q), inside the range (0, 2/q) where the graph does not depend on α."""
    settings = settings or get_settings()
    return Fraction(1, settings.master.alpha_denominator_factor * Fraction(a).denominator)


def offset_value(a: Fraction, alpha: Fraction, m: int, n: int) -> Fraction:
    """s = Am + n + α."""
    return a * m + n + alpha


def fundamental_point(a: Fraction, alpha: Fraction, m: int, n: int) -> PlanePoint:
    """M(m, n) = (2(Am + n + α), (−1)^{m+n+1})."""
    return PlanePoint(2 * offset_value(a, alpha, m, n), Fraction(-1 if (m + n) % 2 == 0 else 1))


def is_above_baseline(a: Fraction, m: int, n: int) -> bool:
    """pm + qn >= 0, i.e. Am + n >= 0."""
    return a * m + n >= 0


def is_low_vertex(a: Fraction, m: int, n: int) -> bool:
    """pm + qn ∈ [0, q − 1]."""
    value = a.numerator * m + a.denominator * n
    return 0 <= value < a.denominator


# ===== Reduction =====

def mu(s: Fraction, sign: Sign) -> Triple:
    """μ₊ = (s, s+1, s) and μ₋ = (s−1, s, s) before reduction."""
    if sign is Sign.PLUS:
        return s, s + 1, s
    return s - 1, s, s


def lattice_vectors(a: Fraction) -> Tuple[Triple, Triple, Triple]:
    """Generators γ₁, γ₂, γ₃ of Λ_A."""
    zero = Fraction(0)
    return (
        (1 + a, zero, zero),
        (1 - a, 1 + a, zero),
        (Fraction(-1), Fraction(-1), Fraction(1)),
    )


def lattice_reduce(a: Fraction, point: Triple) -> Tuple[Triple, Tuple[int, int, int]]:
    """Reduce a point of R³ into R_A modulo Λ_A.

    Returns:
        ``(coords, (X, Y, Z))`` with point = coords + X·γ₁ + Y·γ₂ + Z·γ₃
    """
    x, y, z = point
    big_z = math.floor(z)
    y1 = y + big_z
    big_y = math.floor(y1 / (1 + a))
    x1 = x + big_z - big_y * (1 - a)
    big_x = math.floor(x1 / (1 + a))
    coords = (x1 - (1 + a) * big_x, y1 - (1 + a) * big_y, z - big_z)
    return coords, (big_x, big_y, big_z)


def reconstruct(a: Fraction, coords: Triple, witnesses: Tuple[int, int, int]) -> Triple:
    """coords + X·γ₁ + Y·γ₂ + Z·γ₃."""
    out = list(coords)
    for k, g in zip(witnesses, lattice_vectors(a)):
        for i in range(3):
            out[i] += k * g[i]
    return out[0], out[1], out[2]


def reduce(a: Fraction, alpha: Fraction, m: int, n: int, sign: Sign) -> MasterPoint:
    """μ±(M(m, n)) reduced into R_A with its lattice witnesses."""
    a = Fraction(a)
    coords, witnesses = lattice_reduce(a, mu(offset_value(a, alpha, m, n), sign))
    return MasterPoint(coords=coords, witnesses=witnesses, sign=sign)


def lower_border_push(a: Fraction, coords: Triple) -> Triple:
    """Move a point off the walls by δ(1,1,1), δ half the gap to the next wall above.

    Implements α = 0⁺: classification is taken just above any wall the
    point sits on.
    """
    x, y, z = coords
    planar = (Fraction(0), a, Fraction(1), 1 + a)
    gaps = [w - x for w in planar if w > x]
    gaps += [w - y for w in planar if w > y]
    gaps += [w - z for w in (Fraction(0), a, 1 - a, Fraction(1)) if w > z]
    t = x + y - z
    gaps.append(a + math.floor(t - a) + 1 - t)
    delta = min(gaps) / 2
    return x + delta, y + delta, z + delta


def reduce_zero_plus(a: Fraction, m: int, n: int, sign: Sign) -> MasterPoint:
    """Reduction with α = 0⁺."""
    point = reduce(a, Fraction(0), m, n, sign)
    return MasterPoint(coords=lower_border_push(a, point.coords), witnesses=point.witnesses, sign=sign)


# ===== Classification =====

def _bin(value: Fraction, a: Fraction) -> int:
    if value < a:
        return 0
    if value < 1:
        return 1
    return 2


def classifier_index(a: Fraction, coords: Triple, sign: Sign) -> ClassifierIndex:
    x, y, z = coords
    above_a, above_complement = z >= a, z >= 1 - a
    if above_a:
        n1 = 2 if above_complement else 1
    else:
        n1 = 3 if above_complement else 0
    return ClassifierIndex(
        n0=0 if sign is Sign.PLUS else 1,
        n1=n1,
        n2=_bin(x, a),
        n3=_bin(y, a),
        n4=math.floor(x + y - z - a),
    )


def classify(index: ClassifierIndex) -> Tuple[int, int]:
    """The decision lists turning a classifier index into (ε₁, ε₂)."""
    n0, n1, n2, n3, n4 = index.n0, index.n1, index.n2, index.n3, index.n4

    eps1 = 0
    if (n0 + n4) % 2 == 0:
        if n2 + n3 == 4 or n2 < n3:
            eps1 = -1
    elif n2 + n3 == 0 or n2 > n3:
        eps1 = 1

    eps2 = 0
    if n0 == 0 and n1 in (3, 0):
        if n2 == 0 or (n2 == 1 and n4 != 0):
            eps2 = 1
    elif n0 == 1 and n1 in (0, 1):
        if n2 > 0 and n4 != 0:
            eps2 = -1
        elif n2 < 2 and n3 == 0 and n4 == 0:
            eps2 = 1
    elif n0 == 0 and n1 in (1, 2):
        if n2 < 2 and n4 != 0:
            eps2 = 1
        elif n2 > 0 and n3 == 2 and n4 == 0:
            eps2 = -1
    elif n0 == 1 and n1 in (2, 3):
        if n2 == 2 or (n2 == 1 and n4 != 0):
            eps2 = -1
    return eps1, eps2


def classify_point(a: Fraction, point: MasterPoint) -> Tuple[int, int]:
    return classify(classifier_index(a, point.coords, point.sign))


def forward_sign(m: int, n: int, big_z: int) -> Sign:
    """The plus classification gives the forward edge iff m + n + 1 ≡ Z mod 2."""
    return Sign.PLUS if (m + n + 1 - big_z) % 2 == 0 else Sign.MINUS


def edges_at(
    a: Fraction,
    alpha: Optional[Fraction],
    m: int,
    n: int,
    require_baseline: bool = True,
) -> Edges:
    """Forward and backward offsets of the arithmetic graph at (m, n).

    Args:
        a: Kite parameter
        alpha: Offset; None selects the α = 0⁺ lower-border mode
        m: Lattice coordinate
        n: Lattice coordinate
        require_baseline: Reject vertices below the baseline

    Returns:
        ``(forward, backward)`` offsets, each in {−1,0,1}²

    Raises:
        DomainError: if (m, n) lies below the baseline and ``require_baseline`` is set
    """
    a = require_unit_interval(a)
    if require_baseline and not is_above_baseline(a, m, n):
        raise DomainError(f"({m}, {n}) lies below the baseline of A={format_rational(a)}")
    if alpha is None:
        plus = reduce_zero_plus(a, m, n, Sign.PLUS)
        minus = reduce_zero_plus(a, m, n, Sign.MINUS)
    else:
        plus = reduce(a, alpha, m, n, Sign.PLUS)
        minus = reduce(a, alpha, m, n, Sign.MINUS)
    plus_offset = LatticePoint(*classify_point(a, plus))
    minus_offset = LatticePoint(*classify_point(a, minus))
    if forward_sign(m, n, plus.witnesses[2]) is Sign.PLUS:
        return plus_offset, minus_offset
    return minus_offset, plus_offset


class MasterPicture:
    """Memoized edge oracle for one parameter and offset."""

    def __init__(self, a: Fraction, alpha: Optional[Fraction] = None, settings: Optional[Settings] = None):
        """Initialize the oracle.

        Args:
            a: Kite parameter
            alpha: Offset value; defaults to 1/(2q)
            settings: Configuration settings
        """
        self.settings = settings or get_settings()
        self.a = require_unit_interval(a)
        self.alpha = alpha if alpha is not None else default_alpha(self.a, self.settings)
        self._cache: Dict[Tuple[int, int], Edges] = {}

    def edges(self, m: int, n: int) -> Edges:
        key = (m, n)
        if key not in self._cache:
            self._cache[key] = edges_at(self.a, self.alpha, m, n)
        return self._cache[key]

    def forward(self, v: LatticePoint) -> LatticePoint:
        return v + self.edges(v.m, v.n)[0]

    def backward(self, v: LatticePoint) -> LatticePoint:
        return v + self.edges(v.m, v.n)[1]

    def is_trivial(self, v: LatticePoint) -> bool:
        forward, backward = self.edges(v.m, v.n)
        return forward.is_zero() and backward.is_zero()

    def cache_size(self) -> int:
        return len(self._cache)


# ===== Verification =====

def window_points(a: Fraction, m_range: Iterable[int], n_range: Iterable[int]):
    n_values = list(n_range)
    for m in m_range:
        for n in n_values:
            if is_above_baseline(a, m, n):
                yield m, n


def verify_consistency(
    a: Fraction,
    m_range: Iterable[int],
    n_range: Iterable[int],
    alpha: Optional[Fraction] = None,
    settings: Optional[Settings] = None,
) -> Report:
    """Master picture edges equal the return map offsets at M(m, n).

    The pinwheel map evaluates Ψ and Ψ⁻¹ at every fundamental point in
    the window; both offsets must agree exactly with :func:`edges_at`.
    """
    settings = settings or get_settings()
    a = Fraction(a)
    alpha = alpha if alpha is not None else default_alpha(a, settings)
    kite = Kite(a)
    report = Report(name="master_picture")
    for m, n in window_points(a, m_range, n_range):
        point = fundamental_point(a, alpha, m, n)
        forward, backward = edges_at(a, alpha, m, n)
        try:
            f_pair = pinwheel(kite, point).pair
            b_pair = return_pair(kite, point, pinwheel_inverse(kite, point))
        except UndefinedOrbitError as e:
            report.fail(m=m, n=n, error=str(e))
            continue
        report.tick()
        if forward != f_pair.offset or backward != b_pair.offset:
            report.fail(
                a=format_rational(a),
                m=m,
                n=n,
                edges=[forward.as_tuple(), backward.as_tuple()],
                dynamics=[f_pair.offset.as_tuple(), b_pair.offset.as_tuple()],
            )
    logger.info(f"master picture consistency at A={format_rational(a)}: {report.checked} points")
    return report


def verify_lower_border(a: Fraction, m_range: Iterable[int], n_range: Iterable[int]) -> Report:
    """The α = 0⁺ classification agrees with a small positive offset."""
    a = Fraction(a)
    alpha = Fraction(1, 2 * a.denominator)
    report = Report(name="lower_border")
    for m, n in window_points(a, m_range, n_range):
        report.tick()
        if edges_at(a, None, m, n) != edges_at(a, alpha, m, n):
            report.fail(a=format_rational(a), m=m, n=n)
    return report


def verify_reconstruction(a: Fraction, m_range: Iterable[int], n_range: Iterable[int]) -> Report:
    """μ±(m, n) = coords + X·γ₁ + Y·γ₂ + Z·γ₃ with coords in R_A."""
    a = Fraction(a)
    alpha = Fraction(1, 2 * a.denominator)
    report = Report(name="reconstruction")
    for m, n in window_points(a, m_range, n_range):
        for sign in (Sign.PLUS, Sign.MINUS):
            report.tick()
            point = reduce(a, alpha, m, n, sign)
            x, y, z = point.coords
            inside = 0 <= x < 1 + a and 0 <= y < 1 + a and 0 <= z < 1
            if not inside or reconstruct(a, point.coords, point.witnesses) != mu(
                offset_value(a, alpha, m, n), sign
            ):
                report.fail(m=m, n=n, sign=sign.value)
    return report
