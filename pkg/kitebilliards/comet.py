"""
Renormalization and the fundamental orbit.

A superior chain 1/1, ..., p_n/q_n with renormalization digits d_i
describes the fundamental orbit O(1/q_n, -1): its visits to
I = [0,2] x {-1} are the points X(κ) = (1 + 2 Σ k_i μ_i)/q_n with
0 <= k_i <= d_i and μ_i = |p_n q_i - q_n p_i|, and the first return map
permutes them in twirl order. The same digits index the truncated Cantor
set, the odometer and the dimension estimates.
"""
import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Iterator, List, Optional, Tuple

import numpy as np
import sympy

from kitebilliards.config import Settings, get_settings
from kitebilliards.dynamics import TOP, Kite, first_return_direct, square_orbit
from kitebilliards.exceptions import (
    BudgetExceededError,
    DomainError,
    NoSuccessorError,
    UndefinedOrbitError,
)
from kitebilliards.models import (
    DigitSequence,
    DimensionReport,
    PlanePoint,
    Report,
    SequenceChain,
    format_rational,
    is_odd,
    require_unit_interval,
)
from kitebilliards.seqcore import (
    approximant_data,
    case_matrix,
    farey_neighbors,
    predecessor_chain,
    superior_chain,
    superior_subsequence,
)

logger = logging.getLogger(__name__)

# Residues x_1, ..., x_n of a truncated element of the inverse limit of Z/D_j.
Residues = Tuple[int, ...]


def fundamental_chain(a: Fraction) -> SequenceChain:
    """Chain that indexes the fundamental orbit of ``a``.

    Odd parameters use their superior chain. An even parameter is appended
    to the superior chain of its odd Farey neighbour A'; the last digit is
    q // (2q'), which vanishes exactly when 2q' > q.
    """
    a = require_unit_interval(Fraction(a))
    if is_odd(a):
        return superior_chain(a)
    pair = farey_neighbors(a)
    partner = pair.minus if is_odd(pair.minus) else pair.plus
    base = superior_chain(partner)
    q, q_partner = a.denominator, partner.denominator
    logger.debug(f"even parameter {format_rational(a)} extends the chain of {format_rational(partner)}")
    return SequenceChain(
        terms=base.terms + [a],
        deltas=base.deltas + [q // q_partner],
        ds=base.ds + [q // (2 * q_partner)],
        superior=base.superior + [True],
        sides=base.sides + [1 if a > partner else -1],
        neighbors=base.neighbors + [pair],
        source_indices=base.source_indices + [base.source_indices[-1] + 1],
    )


# ===== Digit Spaces =====

@dataclass(frozen=True)
class DigitSpace:
    """The truncated sequence space Π_n of a chain ending at p_n/q_n."""
    terminal: Fraction
    ds: Tuple[int, ...]
    mus: Tuple[int, ...]
    twisted: Tuple[bool, ...]
    denominators: Tuple[int, ...]

    @classmethod
    def of(cls, chain: SequenceChain) -> "DigitSpace":
        a = chain.terminal
        p, q = a.numerator, a.denominator
        heads = chain.terms[:-1]
        return cls(
            terminal=a,
            ds=tuple(chain.ds),
            mus=tuple(abs(p * t.denominator - q * t.numerator) for t in heads),
            twisted=tuple(t > a for t in heads),
            denominators=tuple(chain.denominators),
        )

    @property
    def depth(self) -> int:
        return len(self.ds)

    @property
    def radices(self) -> List[int]:
        """D_0 = 1, D_1, ..., D_n with D_j = Π_{i<j} (d_i + 1)."""
        out = [1]
        for d in self.ds:
            out.append(out[-1] * (d + 1))
        return out

    @property
    def size(self) -> int:
        return self.radices[-1]

    def check(self, kappa: DigitSequence) -> None:
        """Raises DomainError unless 0 <= k_i <= d_i at every position."""
        if len(kappa) != self.depth or any(not 0 <= k <= d for k, d in zip(kappa, self.ds)):
            raise DomainError(f"{kappa} is not a digit sequence for d = {self.ds}")

    def sequences(self) -> Iterator[DigitSequence]:
        """All of Π_n in lexicographic order."""
        return itertools.product(*(range(d + 1) for d in self.ds))

    def point(self, kappa: DigitSequence) -> Fraction:
        """X(κ) = (1 + 2 Σ k_i μ_i) / q_n."""
        total = 1 + 2 * sum(k * mu for k, mu in zip(kappa, self.mus))
        return Fraction(total, self.terminal.denominator)

    def twist(self, kappa: DigitSequence) -> DigitSequence:
        """k̃_i = d_i − k_i where A_i > A, else k_i; an involution."""
        return tuple(d - k if flip else k for k, d, flip in zip(kappa, self.ds, self.twisted))

    def rank(self, kappa: DigitSequence) -> int:
        """Position in twirl order: the mixed-radix value Σ k̃_j D_j."""
        self.check(kappa)
        radices = self.radices
        return sum(k * radices[j] for j, k in enumerate(self.twist(kappa)))

    def unrank(self, r: int) -> DigitSequence:
        r %= self.size
        digits = []
        for d in self.ds:
            digits.append(r % (d + 1))
            r //= d + 1
        return self.twist(tuple(digits))

    def successor(self, kappa: DigitSequence) -> DigitSequence:
        r = self.rank(kappa)
        if r == self.size - 1:
            raise NoSuccessorError(f"{kappa} is last in the twirl order")
        return self.unrank(r + 1)

    def sigma(self, kappa: DigitSequence) -> int:
        """Largest position where κ and its successor differ; n for the last sequence."""
        try:
            following = self.successor(kappa)
        except NoSuccessorError:
            return self.depth
        return max(i for i in range(self.depth) if kappa[i] != following[i])


def fundamental_orbit_points(chain: SequenceChain) -> List[Fraction]:
    """First coordinates of the fundamental orbit on I, increasing.

    Args:
        chain: Superior chain ending at the parameter (see fundamental_chain)

    Returns:
        The D_n points X(κ), κ ∈ Π_n, in lexicographic order of κ
    """
    space = DigitSpace.of(chain)
    return [space.point(kappa) for kappa in space.sequences()]


def twirl_order(chain: SequenceChain) -> List[DigitSequence]:
    space = DigitSpace.of(chain)
    return [space.unrank(r) for r in range(space.size)]


def twirl_successor(kappa: DigitSequence, chain: SequenceChain) -> DigitSequence:
    """Immediate successor of κ in twirl order.

    Raises:
        NoSuccessorError: if κ is the last sequence
        DomainError: if κ violates the digit bounds
    """
    return DigitSpace.of(chain).successor(tuple(kappa))


def sigma(kappa: DigitSequence, chain: SequenceChain) -> int:
    return DigitSpace.of(chain).sigma(tuple(kappa))


def mirror(kappa: DigitSequence, chain: SequenceChain) -> DigitSequence:
    """d − κ, the digit sequence of the reflected point 2 − X(κ)."""
    return tuple(d - k for k, d in zip(kappa, chain.ds))


# ===== Fundamental Orbit =====

def diameter_bounds(a: Fraction) -> Tuple[Fraction, Fraction]:
    """Range of the fundamental orbit's diameter in Ξ."""
    s = a.numerator + a.denominator
    if is_odd(a):
        return Fraction(s, 2), Fraction(s)
    return Fraction(s), Fraction(2 * s)


def verify_fundamental_orbit(chain: SequenceChain, settings: Optional[Settings] = None) -> Report:
    """Compare the digit formula with the directly iterated orbit of (1/q, −1).

    Also checks that X is increasing in lexicographic order, that
    X(κ) + X(d − κ) = 2 and that the orbit's diameter in Ξ is in range.
    """
    settings = settings or get_settings()
    a = chain.terminal
    space = DigitSpace.of(chain)
    report = Report(name="discrete")

    ordered = [space.point(kappa) for kappa in space.sequences()]
    for i in range(1, len(ordered)):
        report.tick()
        if not ordered[i - 1] < ordered[i]:
            report.fail(kind="order", index=i, value=format_rational(ordered[i]))

    for kappa in space.sequences():
        report.tick()
        total = space.point(kappa) + space.point(mirror(kappa, chain))
        if total != 2:
            report.fail(kind="symmetry", digits=list(kappa), total=format_rational(total))

    kite = Kite(a)
    trace = square_orbit(kite, PlanePoint(Fraction(1, a.denominator), Fraction(-1)), settings=settings)
    report.tick()
    if not trace.closed:
        report.fail(kind="open", steps=trace.steps)
    elif trace.hits != ordered:
        report.fail(
            kind="mismatch",
            formula=[format_rational(x) for x in ordered],
            orbit=[format_rational(x) for x in trace.hits],
        )

    diameter = trace.xi_diameter()
    low, high = diameter_bounds(a)
    report.tick()
    if trace.closed and not low <= diameter <= high:
        report.fail(kind="diameter", diameter=format_rational(diameter))

    report.details = {
        "A": format_rational(a),
        "points": [format_rational(x) for x in ordered],
        "digits": list(space.ds),
        "mu": list(space.mus),
        "orbit_steps": trace.steps,
        "diameter": format_rational(diameter),
    }
    logger.info(f"fundamental orbit of {format_rational(a)}: {len(ordered)} points, passed={report.passed}")
    return report


# ===== Return Model =====

def coarse_bounds(q_m: int) -> Tuple[Fraction, int, int]:
    """(lower h₁, upper h₁, upper h₂) for a return whose σ-term has denominator q_m."""
    return Fraction(q_m, 2) - 4, 2 * q_m + 4, 5 * q_m * q_m


@dataclass
class ReturnRow:
    """One row of the return table."""
    digits: DigitSequence
    point: Fraction
    landing: Optional[Fraction]
    sigma: int
    q_sigma: int
    h1_sq: Optional[Fraction] = None
    h2: Optional[int] = None
    bounds_ok: bool = False

    @property
    def h1(self) -> Optional[float]:
        return None if self.h1_sq is None else math.sqrt(self.h1_sq)

    def as_row(self) -> Dict[str, Any]:
        return {
            "digits": " ".join(str(k) for k in self.digits),
            "X_num": self.point.numerator,
            "X_den": self.point.denominator,
            "sigma": self.sigma,
            "q_sigma": self.q_sigma,
            "h1_observed": "" if self.h1 is None else f"{self.h1:.6f}",
            "h2_observed": "" if self.h2 is None else self.h2,
            "bounds_ok": self.bounds_ok,
        }


def _in_interval(p: PlanePoint) -> bool:
    return p.y == -1 and 0 < p.x < 2


def return_to_interval(
    kite: Kite,
    start: PlanePoint,
    limit: int,
    settings: Optional[Settings] = None,
) -> Tuple[PlanePoint, int, Fraction]:
    """Iterate Ψ until the orbit is back on I.

    Returns:
        Landing point, number of Ψ-iterates and the largest squared distance
        of a Ψ-iterate from the kite vertex (0,1)

    Raises:
        BudgetExceededError: after ``limit`` Ψ-iterates without a return
    """
    current = start
    far = Fraction(0)
    for count in range(1, limit + 1):
        current = first_return_direct(kite, current, settings=settings).point
        far = max(far, (current - TOP).norm_sq())
        if _in_interval(current):
            return current, count, far
    raise BudgetExceededError(f"no return to I within {limit} iterates of Ψ", limit)


def _h1_within(h1_sq: Fraction, q_m: int) -> bool:
    low, high, _ = coarse_bounds(q_m)
    if h1_sq >= high * high:
        return False
    return low < 0 or h1_sq > low * low


def verify_return_model(
    chain: SequenceChain,
    budget: Optional[int] = None,
    settings: Optional[Settings] = None,
) -> Report:
    """Check that the fundamental orbit returns to I in twirl order.

    Each X(κ) is iterated under Ψ until it lands on I again. The landing
    point must be X of the twirl successor (the first sequence after the
    last), and the excursion h₁ and return time h₂ must satisfy the coarse
    bounds for m = σ(κ). Returns are independent of each other; a return
    that runs out of budget is recorded and the rest still run.

    Args:
        chain: Superior chain ending at the parameter
        budget: Maximum Ψ-iterates per return (defaults to 5·q_n²)
        settings: Configuration settings

    Returns:
        Report with the return table under ``details["rows"]``
    """
    settings = settings or get_settings()
    a = chain.terminal
    space = DigitSpace.of(chain)
    kite = Kite(a)
    limit = budget if budget is not None else 5 * a.denominator ** 2
    order = [space.unrank(r) for r in range(space.size)]
    report = Report(name="returnmodel")
    rows: List[ReturnRow] = []

    for position, kappa in enumerate(order):
        target = order[(position + 1) % len(order)]
        m = space.sigma(kappa)
        row = ReturnRow(
            digits=kappa,
            point=space.point(kappa),
            landing=None,
            sigma=m,
            q_sigma=space.denominators[m],
        )
        rows.append(row)
        report.tick()
        try:
            landing, h2, h1_sq = return_to_interval(
                kite, PlanePoint(row.point, Fraction(-1)), limit, settings
            )
        except (BudgetExceededError, UndefinedOrbitError) as e:
            logger.warning(f"return of {format_rational(row.point)} not resolved: {e}")
            report.fail(kind="budget", digits=list(kappa), error=str(e))
            continue
        row.landing, row.h2, row.h1_sq = landing.x, h2, h1_sq
        if landing.x != space.point(target):
            report.fail(
                kind="order",
                digits=list(kappa),
                landing=format_rational(landing.x),
                expected=format_rational(space.point(target)),
            )
        low, high, h2_max = coarse_bounds(row.q_sigma)
        row.bounds_ok = _h1_within(h1_sq, row.q_sigma) and h2 < h2_max
        logger.debug(
            f"{format_rational(row.point)} -> {format_rational(landing.x)}: "
            f"h1={row.h1:.3f} in ({float(low)}, {high}), h2={h2} < {h2_max}"
        )
        if not row.bounds_ok:
            report.fail(kind="coarse", digits=list(kappa), h1=row.h1, h2=h2, q_sigma=row.q_sigma)

    trace = square_orbit(kite, PlanePoint(Fraction(1, a.denominator), Fraction(-1)), settings=settings)
    low_d, high_d = diameter_bounds(a)
    report.tick()
    if trace.closed and not low_d <= trace.xi_diameter() <= high_d:
        report.fail(kind="diameter", diameter=format_rational(trace.xi_diameter()))

    report.details = {
        "A": format_rational(a),
        "order": [format_rational(row.point) for row in rows],
        "rows": [row.as_row() for row in rows],
        "diameter": format_rational(trace.xi_diameter()),
    }
    logger.info(f"return model of {format_rational(a)}: {len(rows)} returns, passed={report.passed}")
    return report


# ===== Cantor Set =====

@dataclass
class CantorApprox:
    """Depth-n truncation of C_A for the terminal parameter of a chain.

    ``points`` are the sums Σ_{i<n} 2 k_i λ_i in increasing order and
    ``cover_lengths[j]`` is G_j = Σ_{k>=j} 2 d_k λ_k, so C_A lies in the
    D_n intervals [x, x + G_n].
    """
    chain: SequenceChain
    depth: int
    lambdas: List[Fraction]
    points: List[Fraction]
    cover_lengths: List[Fraction]
    counts: List[int]

    def covers(self) -> List[Tuple[Fraction, Fraction]]:
        g = self.cover_lengths[self.depth]
        return [(x, x + g) for x in self.points]

    def hull(self) -> Tuple[Fraction, Fraction]:
        return self.points[0], self.points[-1] + self.cover_lengths[self.depth]

    def decay(self) -> List[Fraction]:
        """D_j · G_j for j = 0..n."""
        return [d * g for d, g in zip(self.counts, self.cover_lengths)]


def _clamp_depth(requested: int, available: int, what: str) -> int:
    if requested > available:
        logger.warning(f"{what}: depth {requested} exceeds the chain, using {available}")
        return available
    return requested


def cantor_approx(
    chain: SequenceChain,
    depth: Optional[int] = None,
    settings: Optional[Settings] = None,
) -> CantorApprox:
    """Truncate C_A at ``depth`` digits of a superior chain.

    Args:
        chain: Superior chain; λ is measured against its terminal
        depth: Number of digits (defaults to the configured depth)
        settings: Configuration settings
    """
    settings = settings or get_settings()
    depth = _clamp_depth(depth or settings.comet.depth, len(chain.ds), "cantor")
    a = chain.terminal
    lambdas = [abs(a * t.denominator - t.numerator) for t in chain.terms]

    digits = itertools.product(*(range(d + 1) for d in chain.ds[:depth]))
    points = [sum((2 * k * lambdas[i] for i, k in enumerate(kappa)), Fraction(0)) for kappa in digits]

    tail = Fraction(0)
    lengths = [Fraction(0)] * (len(chain.ds) + 1)
    for k in range(len(chain.ds) - 1, -1, -1):
        tail += 2 * chain.ds[k] * lambdas[k]
        lengths[k] = tail

    counts = [1]
    for d in chain.ds[:depth]:
        counts.append(counts[-1] * (d + 1))
    return CantorApprox(
        chain=chain,
        depth=depth,
        lambdas=lambdas,
        points=points,
        cover_lengths=lengths[: depth + 1],
        counts=counts,
    )


def verify_cantor(approx: CantorApprox) -> Report:
    """Order, hull, reflection symmetry and telescoping checks on a truncation."""
    report = Report(name="cantor")
    chain = approx.chain
    a = chain.terminal
    points = approx.points

    for i in range(1, len(points)):
        report.tick()
        if not points[i - 1] < points[i]:
            report.fail(kind="order", index=i)

    lo, hi = approx.hull()
    report.tick()
    if lo != 0 or hi != 2 - Fraction(2, a.denominator):
        report.fail(kind="hull", low=format_rational(lo), high=format_rational(hi))

    span = points[-1]
    members = set(points)
    report.tick()
    if any(span - x not in members for x in points):
        report.fail(kind="symmetry")

    if is_odd(a) and chain.source_indices:
        data = approximant_data(predecessor_chain(a), a)
        stars = data.lambda_stars
        last = stars[-1]
        for j in range(approx.depth + 1):
            report.tick()
            expected = 2 * (stars[chain.source_indices[j]] - last)
            if approx.cover_lengths[j] != expected:
                report.fail(kind="telescoping", level=j, length=format_rational(approx.cover_lengths[j]))

    report.details = {
        "A": format_rational(a),
        "depth": approx.depth,
        "points": len(points),
        "hull": [format_rational(lo), format_rational(hi)],
        "decay": [format_rational(x) for x in approx.decay()],
    }
    return report


# ===== Odometer =====

def check_residues(space: DigitSpace, x: Residues) -> None:
    """Raises DomainError unless x_j ∈ Z/D_j and x_{j+1} ≡ x_j mod D_j."""
    radices = space.radices
    if len(x) != space.depth:
        raise DomainError(f"expected {space.depth} residues, got {len(x)}")
    for j, r in enumerate(x, start=1):
        if not 0 <= r < radices[j]:
            raise DomainError(f"residue {r} is not in Z/{radices[j]}")
        if j > 1 and r % radices[j - 1] != x[j - 2]:
            raise DomainError(f"residues {x} are incompatible at level {j}")


def _residues_of(space: DigitSpace, value: int) -> Residues:
    return tuple(value % d for d in space.radices[1:])


def phi_one(chain: SequenceChain, x: Residues) -> DigitSequence:
    """Digit sequence of a truncated element: x = Σ k̃_j D_j."""
    space = DigitSpace.of(chain)
    check_residues(space, x)
    return space.unrank(x[-1] if x else 0)


def phi_one_inverse(chain: SequenceChain, kappa: DigitSequence) -> Residues:
    space = DigitSpace.of(chain)
    return _residues_of(space, space.rank(tuple(kappa)))


def minus_one(chain: SequenceChain) -> Residues:
    space = DigitSpace.of(chain)
    return _residues_of(space, -1)


def odometer(chain: SequenceChain, x: Residues) -> Residues:
    """x + 1 at every level of the truncated inverse limit.

    Raises:
        DomainError: if the residues are not compatible
    """
    space = DigitSpace.of(chain)
    check_residues(space, tuple(x))
    return tuple((r + 1) % d for r, d in zip(x, space.radices[1:]))


def odometer_metric(chain: SequenceChain, x: Residues, y: Residues) -> Fraction:
    """1/q_{j−1} for the first level j where x and y disagree, 0 if none."""
    for j, (r, s) in enumerate(zip(x, y), start=1):
        if r != s:
            return Fraction(1, chain.terms[j - 1].denominator)
    return Fraction(0)


def cantor_point(chain: SequenceChain, kappa: DigitSequence) -> Fraction:
    """Σ 2 k_i λ_i with λ measured against the chain's terminal."""
    a = chain.terminal
    return sum(
        (2 * k * abs(a * t.denominator - t.numerator) for k, t in zip(kappa, chain.terms)),
        Fraction(0),
    )


def verify_odometer(chain: SequenceChain) -> Report:
    """The odometer is conjugate to the twirl successor through φ₁."""
    space = DigitSpace.of(chain)
    report = Report(name="odometer")
    order = [space.unrank(r) for r in range(space.size)]
    for position, kappa in enumerate(order):
        report.tick()
        image = odometer(chain, phi_one_inverse(chain, kappa))
        expected = order[(position + 1) % len(order)]
        if phi_one(chain, image) != expected:
            report.fail(kind="conjugacy", digits=list(kappa))
    report.tick()
    if phi_one(chain, minus_one(chain)) != order[-1]:
        report.fail(kind="minus_one")
    report.details = {"size": space.size, "radices": space.radices}
    return report


# ===== Dimension =====

@dataclass
class ClosedForm:
    """Periodic block of an inferior chain and its transfer matrix."""
    period: int
    transfer: sympy.Matrix
    radius: sympy.Expr
    digits: int
    enhanced_digits: int
    superior_steps: int

    def value(self, enhanced: bool = False) -> sympy.Expr:
        top = self.enhanced_digits if enhanced else self.digits
        return sympy.log(top) / sympy.log(self.radius)

    def supbound(self) -> Optional[float]:
        """D / (D + log(√5/2)) with D the log-growth of D_n per superior term."""
        if self.superior_steps == 0:
            return None
        growth = math.log(self.digits) / self.superior_steps
        return growth / (growth + math.log(math.sqrt(5) / 2))


def periodic_tail(chain: SequenceChain) -> Optional[int]:
    """Smallest period P such that the last two blocks of P steps coincide.

    A step records (δ_m, previous side, side, d_m) for m >= 1.
    """
    steps = [
        (chain.deltas[m], chain.sides[m - 1], chain.sides[m], chain.ds[m])
        for m in range(1, len(chain.deltas))
    ]
    for period in range(1, len(steps) // 2 + 1):
        if steps[-period:] == steps[-2 * period : -period]:
            return period
    return None


def closed_form(chain: SequenceChain) -> Optional[ClosedForm]:
    """Exact closed form of the dimension for an eventually periodic chain."""
    period = periodic_tail(chain)
    if period is None:
        return None
    last = len(chain.deltas)
    block = range(last - period, last)
    transfer = sympy.eye(2)
    for m in block:
        step = case_matrix(chain.sides[m - 1], chain.sides[m], chain.ds[m])
        transfer = sympy.Matrix([list(row) for row in step]) * transfer
    radius = max(transfer.eigenvals(), key=lambda ev: abs(complex(sympy.N(ev))))
    superior_steps = [m for m in block if chain.ds[m] >= 1]
    return ClosedForm(
        period=period,
        transfer=transfer,
        radius=sympy.simplify(radius),
        digits=math.prod(chain.ds[m] + 1 for m in block),
        enhanced_digits=math.prod(chain.deltas[m] + 1 for m in superior_steps),
        superior_steps=len(superior_steps),
    )


def _log_inverse(g: Fraction) -> float:
    return math.log(g.denominator) - math.log(g.numerator)


def _slope(xs: List[float], ys: List[float]) -> Optional[float]:
    if len(xs) < 2:
        return None
    return float(np.polyfit(np.array(xs), np.array(ys), 1)[0])


def dimension_estimate(
    chain: SequenceChain,
    depth: Optional[int] = None,
    settings: Optional[Settings] = None,
) -> DimensionReport:
    """Level-wise estimates log D_n / log(1/G_n) and, when available, the closed form.

    Args:
        chain: Inferior chain; its terminal stands in for the limit parameter
        depth: Number of superior levels to report (defaults to the configured depth)
        settings: Configuration settings

    Returns:
        DimensionReport with per-level estimates for both the d-based count
        D_n and the enhanced count Π (δ_i + 1), least-squares slopes of the
        log-log data, and the closed forms for periodic chains

    Raises:
        DomainError: if the chain has no superior level beyond the lookahead
    """
    settings = settings or get_settings()
    sup = superior_subsequence(chain)
    available = len(sup.terms) - 1 - settings.comet.dimension_lookahead
    if available < 1:
        raise DomainError(
            f"chain of {format_rational(chain.terminal)} is too short for a dimension estimate"
        )
    depth = _clamp_depth(depth or settings.comet.depth, available, "dimension")

    a = sup.terminal
    lambdas = [abs(a * t.denominator - t.numerator) for t in sup.terms]
    report = DimensionReport()
    count = enhanced = 1
    xs: List[float] = []
    ys: List[float] = []
    ys_enhanced: List[float] = []
    for n in range(1, depth + 1):
        count *= sup.ds[n - 1] + 1
        enhanced *= sup.deltas[n - 1] + 1
        g = 2 * sum((sup.ds[k] * lambdas[k] for k in range(n, len(sup.ds))), Fraction(0))
        level: Dict[str, Any] = {
            "level": n,
            "term": format_rational(sup.terms[n]),
            "D": count,
            "G": format_rational(g),
            "estimate": None,
            "enhanced_estimate": None,
        }
        if 0 < g < 1:
            x = _log_inverse(g)
            level["estimate"] = math.log(count) / x
            level["enhanced_estimate"] = math.log(enhanced) / x
            xs.append(x)
            ys.append(math.log(count))
            ys_enhanced.append(math.log(enhanced))
        report.levels.append(level)

    report.slope_estimate = _slope(xs, ys)
    report.enhanced_slope_estimate = _slope(xs, ys_enhanced)

    form = closed_form(chain)
    if form is not None:
        report.period = form.period
        report.closed_form = str(form.value())
        report.closed_form_value = float(sympy.N(form.value()))
        report.enhanced_closed_form = str(form.value(enhanced=True))
        report.enhanced_closed_form_value = float(sympy.N(form.value(enhanced=True)))
        bound = form.supbound()
        if bound is not None:
            report.supbound_ok = report.closed_form_value <= bound
    logger.info(
        f"dimension of {format_rational(a)}: slope={report.slope_estimate}, "
        f"closed form={report.closed_form}"
    )
    return report
