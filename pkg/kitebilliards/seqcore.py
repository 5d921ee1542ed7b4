"""
Odd/even Farey structure and the renormalization sequences.

Every odd rational A in (0,1) sits at the end of a unique chain
1/1 <- A_1 <- ... <- A of odd rationals whose consecutive terms satisfy
|p_n q_{n+1} - q_n p_{n+1}| = 2. This module builds those chains, extends
them by prescribed δ values, extracts the superior subsequence, and
evaluates the Diophantine constant and the approximation identities
that govern the renormalization.
"""
import logging
import math
from fractions import Fraction
from typing import Iterator, List, Optional, Tuple

from kitebilliards.exceptions import DomainError, InvalidDeltaError
from kitebilliards.models import (
    ApproximantData,
    FareyPair,
    Report,
    SequenceChain,
    format_rational,
    is_odd,
    require_unit_interval,
)

logger = logging.getLogger(__name__)

ONE = Fraction(1)

Matrix2 = Tuple[Tuple[int, int], Tuple[int, int]]


# ===== Farey Structure =====

def farey_neighbors(a: Fraction) -> FareyPair:
    """Farey neighbours of a rational in (0,1).

    Args:
        a: Rational p/q in lowest terms with q >= 2

    Returns:
        The pair p₋/q₋ < a < p₊/q₊ with q·p± − p·q± = ±1

    Raises:
        DomainError: if a is outside (0,1)
    """
    a = Fraction(a)
    if not 0 < a < 1:
        raise DomainError(f"{format_rational(a)} has no Farey pair inside (0,1)")
    p, q = a.numerator, a.denominator
    q_plus = (-pow(p, -1, q)) % q
    p_plus = (1 + p * q_plus) // q
    return FareyPair(
        minus=Fraction(p - p_plus, q - q_plus),
        plus=Fraction(p_plus, q_plus),
    )


def neighbor_denominators(a: Fraction) -> Tuple[int, int]:
    """(q₊, q₋) of ``a``; the formal pair of 1/1 is (1/0, 0/1)."""
    if a == ONE:
        return 0, 1
    pair = farey_neighbors(a)
    return pair.plus.denominator, pair.minus.denominator


def farey_sum(a: Fraction, b: Fraction) -> Fraction:
    return Fraction(a.numerator + b.numerator, a.denominator + b.denominator)


def inferior_predecessor(a: Fraction) -> Fraction:
    """The unique odd A' with q' < q and |p q' − q p'| = 2.

    Raises:
        DomainError: for 1/1 or an even rational
    """
    a = require_unit_interval(a, allow_one=True)
    if a == ONE:
        raise DomainError("1/1 has no inferior predecessor")
    if not is_odd(a):
        raise DomainError(f"{format_rational(a)} is even")
    pair = farey_neighbors(a)
    return Fraction(
        abs(pair.plus.numerator - pair.minus.numerator),
        abs(pair.plus.denominator - pair.minus.denominator),
    )


def odd_rationals(max_q: int) -> Iterator[Fraction]:
    """Odd rationals p/q in (0,1) with q <= max_q, by increasing q."""
    for q in range(3, max_q + 1, 2):
        for p in range(1, q, 2):
            if math.gcd(p, q) == 1:
                yield Fraction(p, q)


# ===== Chains =====

def _sign(x: Fraction) -> int:
    return 1 if x > 0 else -1


def chain_from_terms(terms: List[Fraction]) -> SequenceChain:
    """Populate δ, d, superior flags, sides and Farey pairs for explicit terms."""
    deltas: List[int] = []
    ds: List[int] = []
    sides: List[int] = []
    for n in range(len(terms) - 1):
        q_n, q_next = terms[n].denominator, terms[n + 1].denominator
        deltas.append(q_next - 1 if n == 0 else q_next // q_n)
        ds.append(q_next // (2 * q_n))
        sides.append(_sign(terms[n + 1] - terms[n]))
    neighbors: List[Optional[FareyPair]] = [
        None if t == ONE else farey_neighbors(t) for t in terms
    ]
    return SequenceChain(
        terms=list(terms),
        deltas=deltas,
        ds=ds,
        superior=[d >= 1 for d in ds] + [True],
        sides=sides,
        neighbors=neighbors,
        source_indices=list(range(len(terms))),
    )


def predecessor_chain(a: Fraction) -> SequenceChain:
    """Full inferior chain 1/1 ← … ← a.

    Raises:
        DomainError: if a is not an odd rational in (0,1]
    """
    a = require_unit_interval(a, allow_one=True)
    if not is_odd(a):
        raise DomainError(f"{format_rational(a)} is even; chains consist of odd rationals")
    terms = [a]
    while terms[-1] != ONE:
        terms.append(inferior_predecessor(terms[-1]))
    terms.reverse()
    logger.debug(f"chain of {format_rational(a)} has {len(terms)} terms")
    return chain_from_terms(terms)


def case_matrix(prev_side: int, next_side: int, d: int) -> Matrix2:
    """Transfer matrix taking (q₊, q₋) of A_m to (q₊, q₋) of A_{m+1}.

    The four cases are indexed by the sides of A_{m-1} → A_m and
    A_m → A_{m+1}; same-side steps have odd δ, side flips even δ.
    """
    if prev_side > 0 and next_side > 0:
        return (d + 1, d), (d + 2, d + 1)
    if prev_side < 0 and next_side > 0:
        return (d, d - 1), (d + 1, d)
    if prev_side < 0 and next_side < 0:
        return (d + 1, d + 2), (d, d + 1)
    return (d, d + 1), (d - 1, d)


def apply_matrix(matrix: Matrix2, vector: Tuple[int, int]) -> Tuple[int, int]:
    (a, b), (c, d) = matrix
    return a * vector[0] + b * vector[1], c * vector[0] + d * vector[1]


def _pair_from_denominators(a: Fraction, q_plus: int, q_minus: int) -> FareyPair:
    p, q = a.numerator, a.denominator
    p_plus = (1 + p * q_plus) // q
    return FareyPair(minus=Fraction(p - p_plus, q_minus), plus=Fraction(p_plus, q_plus))


def extend_by_case(chain: SequenceChain, next_delta: int) -> SequenceChain:
    """Append the unique odd successor with floor(q_{n+1}/q_n) = next_delta.

    Odd δ keeps the side of the previous step and even δ flips it. From
    1/1 the first step always goes down and needs an even δ₀ >= 2.

    Raises:
        InvalidDeltaError: when no successor realizes the requested δ
    """
    if next_delta < 1:
        raise InvalidDeltaError(f"delta must be positive, got {next_delta}")
    last = chain.terminal
    p, q = last.numerator, last.denominator

    if last == ONE:
        if next_delta % 2:
            raise InvalidDeltaError(f"the first delta must be even, got {next_delta}")
        new = Fraction(next_delta - 1, next_delta + 1)
        new_pair = farey_neighbors(new)
        new_side = -1
    else:
        prev_side = chain.sides[-1]
        new_side = prev_side if next_delta % 2 else -prev_side
        t = next_delta if next_delta % 2 else next_delta - 1
        pair = chain.neighbors[-1]
        target = pair.plus if new_side > 0 else pair.minus
        new = Fraction(t * p + 2 * target.numerator, t * q + 2 * target.denominator)
        if new.denominator // q != next_delta:
            raise InvalidDeltaError(
                f"delta {next_delta} after {format_rational(last)} contradicts the side pattern"
            )
        d = new.denominator // (2 * q)
        q_plus, q_minus = apply_matrix(
            case_matrix(prev_side, new_side, d),
            (pair.plus.denominator, pair.minus.denominator),
        )
        new_pair = _pair_from_denominators(new, q_plus, q_minus)

    if inferior_predecessor(new) != last:
        raise InvalidDeltaError(f"{format_rational(new)} does not extend {format_rational(last)}")

    return SequenceChain(
        terms=chain.terms + [new],
        deltas=chain.deltas + [next_delta],
        ds=chain.ds + [new.denominator // (2 * q)],
        superior=chain.superior[:-1] + [new.denominator // (2 * q) >= 1, True],
        sides=chain.sides + [new_side],
        neighbors=chain.neighbors + [new_pair],
        source_indices=list(range(len(chain.terms) + 1)),
    )


def extend_many(chain: SequenceChain, deltas: List[int]) -> SequenceChain:
    for delta in deltas:
        chain = extend_by_case(chain, delta)
    return chain


def unit_chain() -> SequenceChain:
    return chain_from_terms([ONE])


def penrose_chain(pairs: int) -> SequenceChain:
    """1/1 ← 1/3 ← 1/5 ← 3/13 ← 5/21 ← … with δ = 2, 1, 2, 1, …; the limit is φ⁻³."""
    return extend_many(unit_chain(), [2, 1] * pairs)


def superior_indices(chain: SequenceChain) -> List[int]:
    """Positions of the superior terms, terminal included."""
    last = len(chain.terms) - 1
    return [i for i in range(last) if chain.ds[i] >= 1] + [last]


def superior_subsequence(chain: SequenceChain) -> SequenceChain:
    """Terms with d_n >= 1 plus the terminal, keeping their d values.

    ``source_indices`` records where each term sits in the inferior chain.
    """
    idx = superior_indices(chain)
    terms = [chain.terms[i] for i in idx]
    return SequenceChain(
        terms=terms,
        deltas=[chain.deltas[i] for i in idx[:-1]],
        ds=[chain.ds[i] for i in idx[:-1]],
        superior=[True] * len(idx),
        sides=[_sign(terms[k + 1] - terms[k]) for k in range(len(terms) - 1)],
        neighbors=[chain.neighbors[i] for i in idx],
        source_indices=[chain.source_indices[i] for i in idx],
    )


def superior_chain(a: Fraction) -> SequenceChain:
    return superior_subsequence(predecessor_chain(a))


def superior_predecessor_index(chain: SequenceChain) -> int:
    """Largest k < N with d_k >= 1."""
    if len(chain.terms) < 2:
        raise DomainError("1/1 has no superior predecessor")
    return max(i for i in range(len(chain.terms) - 1) if chain.ds[i] >= 1)


def superior_predecessor(a: Fraction) -> Fraction:
    chain = predecessor_chain(a)
    return chain.terms[superior_predecessor_index(chain)]


def near_predecessors(a: Fraction) -> List[Fraction]:
    """Chain terms from the superior predecessor up to, not including, ``a``."""
    chain = predecessor_chain(a)
    k = superior_predecessor_index(chain)
    return chain.terms[k:-1]


# ===== Diophantine Constant =====

def admissibility(a1: Fraction, a2: Fraction) -> Fraction:
    """a(A1, A2) = 2 / (q1² |A1 − A2|); the pair is admissible when a > 1."""
    if a1 == a2:
        raise DomainError("admissibility needs two distinct parameters")
    q1 = a1.denominator
    return Fraction(2) / (q1 * q1 * abs(a1 - a2))


def diophantine_constant(a1: Fraction, a2: Fraction) -> Fraction:
    """Ω(A1, A2), the agreement-window scale of two arithmetic graphs."""
    a1, a2 = Fraction(a1), Fraction(a2)
    if not (is_odd(a1) and is_odd(a2)):
        raise DomainError("the Diophantine constant is defined for odd parameters")
    a = admissibility(a1, a2)
    q_plus, _ = neighbor_denominators(a1)
    lam = Fraction(q_plus, a1.denominator)
    if a1 < a2:
        return math.floor(a / 2 - lam) + 1 + lam
    return math.floor(a / 2 + lam) + 1 - lam


# ===== Approximation Identities =====

def approximant_data(chain: SequenceChain, terminal: Fraction) -> ApproximantData:
    """λ_n and λ*_n along an inferior chain, measured against ``terminal``."""
    lambdas = [abs(terminal * t.denominator - t.numerator) for t in chain.terms]
    stars: List[Fraction] = []
    for t, pair in zip(chain.terms, chain.neighbors):
        if pair is None:
            stars.append(ONE)
            continue
        q_star = min(pair.minus.denominator, pair.plus.denominator)
        p_star = min(pair.minus.numerator, pair.plus.numerator)
        stars.append(abs(terminal * q_star - p_star))
    return ApproximantData(terminal=terminal, lambdas=lambdas, lambda_stars=stars)


def _inferior_for(chain: SequenceChain, terminal: Fraction) -> SequenceChain:
    inferior = predecessor_chain(terminal)
    positions = {t: i for i, t in enumerate(inferior.terms)}
    if chain.terminal != terminal or any(t not in positions for t in chain.terms):
        raise DomainError(
            f"chain ending at {format_rational(chain.terminal)} does not belong to "
            f"{format_rational(terminal)}"
        )
    return inferior


def approximation_identities(chain: SequenceChain, terminal: Fraction) -> Report:
    """Exact truncated checks of the four approximation identities.

    Checks the telescoping sum Σ_{k≥n} d_kλ_k + λ*_N = λ*_n, the bound
    d_nλ_n < 2/q_n, the interlacing λ*_{n+1} < λ_n and the growth bound
    q_{2n} > (5/4)^n D_{2n}, the last three along superior terms.

    Raises:
        DomainError: if ``chain`` is not a sub-chain of the chain of ``terminal``
    """
    terminal = Fraction(terminal)
    inferior = _inferior_for(chain, terminal)
    data = approximant_data(inferior, terminal)
    report = Report(name="identities")
    last = len(inferior.terms) - 1
    lam, star = data.lambdas, data.lambda_stars

    tail = star[last]
    for n in range(last, -1, -1):
        if n < last:
            tail += inferior.ds[n] * lam[n]
        report.tick()
        if tail != star[n]:
            report.fail(identity="telescoping", index=n, lhs=str(tail), rhs=str(star[n]))

    sup = superior_indices(inferior)
    for k, i in enumerate(sup[:-1]):
        q_i = inferior.terms[i].denominator
        report.tick(2)
        if not inferior.ds[i] * lam[i] < Fraction(2, q_i):
            report.fail(identity="dio1", index=i)
        if not star[sup[k + 1]] < lam[i]:
            report.fail(identity="interlace", index=i)
        if k + 1 < len(sup) - 1 and not lam[sup[k + 1]] < lam[i]:
            report.fail(identity="decreasing", index=i)

    big_d = [1]
    for i in sup[:-1]:
        big_d.append(big_d[-1] * (inferior.ds[i] + 1))
    for n in range(1, (len(sup) - 1) // 2 + 1):
        report.tick()
        q_2n = inferior.terms[sup[2 * n]].denominator
        if not q_2n > Fraction(5, 4) ** n * big_d[2 * n]:
            report.fail(identity="dio4", index=2 * n)

    report.details = {
        "terminal": format_rational(terminal),
        "lambda": [str(lam[i]) for i in sup],
        "lambda_star": [str(star[i]) for i in sup],
    }
    return report


# ===== Chain Sweeps =====

def verify_round_trip(max_q: int) -> Report:
    """Dropping the last term and re-extending by its δ reproduces every A."""
    report = Report(name="round_trip")
    for a in odd_rationals(max_q):
        chain = predecessor_chain(a)
        shorter = chain_from_terms(chain.terms[:-1])
        report.tick()
        try:
            rebuilt = extend_by_case(shorter, chain.deltas[-1]).terminal
        except InvalidDeltaError as e:
            report.fail(a=format_rational(a), error=str(e))
            continue
        if rebuilt != a:
            report.fail(a=format_rational(a), rebuilt=format_rational(rebuilt))
    return report


def verify_case_table(max_q: int) -> Report:
    """Case formulas and δ parity agree with the Farey pairs along every chain."""
    report = Report(name="case_table")
    for a in odd_rationals(max_q):
        chain = predecessor_chain(a)
        for m in range(1, len(chain.terms) - 1):
            report.tick()
            prev_side, next_side = chain.sides[m - 1], chain.sides[m]
            expected = neighbor_denominators(chain.terms[m + 1])
            got = apply_matrix(
                case_matrix(prev_side, next_side, chain.ds[m]),
                neighbor_denominators(chain.terms[m]),
            )
            same_side = prev_side == next_side
            if got != expected or same_side != bool(chain.deltas[m] % 2):
                report.fail(a=format_rational(a), index=m, got=got, expected=expected)
    return report


def verify_squeeze(max_q: int) -> Report:
    """The terminal lies strictly between A_m and the Farey neighbour on its side."""
    report = Report(name="squeeze")
    for a in odd_rationals(max_q):
        chain = predecessor_chain(a)
        for m in range(1, len(chain.terms) - 1):
            report.tick()
            term, pair = chain.terms[m], chain.neighbors[m]
            inside = term < a < pair.plus if a > term else pair.minus < a < term
            if not inside:
                report.fail(a=format_rational(a), index=m)
    return report


def verify_keycomp(max_q: int) -> Report:
    """Ω q' = q' + q± for every near-predecessor pair."""
    report = Report(name="keycomp")
    for a in odd_rationals(max_q):
        q_plus, q_minus = neighbor_denominators(a)
        for pred in near_predecessors(a):
            report.tick()
            omega = diophantine_constant(pred, a)
            q1 = pred.denominator
            expected = q1 + (q_plus if pred < a else q_minus)
            if omega * q1 != expected:
                report.fail(a=format_rational(a), pred=format_rational(pred), omega=str(omega))
    return report
