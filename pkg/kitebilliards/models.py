"""
Data models for kitebilliards.

Exact value types for plane points and lattice vertices, plus the
serializable records (chains, reports, certificates) passed between
modules and written by the CLI.
"""
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator

from kitebilliards.exceptions import DomainError


class Parity(str, Enum):
    """Parity of a rational p/q: odd iff pq is odd."""
    ODD = "odd"
    EVEN = "even"


class Sign(str, Enum):
    """Which of the two maps μ± a master point comes from."""
    PLUS = "plus"
    MINUS = "minus"


class Direction(str, Enum):
    """Time direction of an iteration."""
    FORWARD = "forward"
    BACKWARD = "backward"


# ===== Rationals =====

def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` (or an integer) into a reduced fraction.

    Raises:
        DomainError: if the text is not a rational number
    """
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise DomainError(f"not a rational number: {text!r}") from e


def parity(value: Fraction) -> Parity:
    """Parity classification of a rational in lowest terms."""
    if (value.numerator * value.denominator) % 2:
        return Parity.ODD
    return Parity.EVEN


def is_odd(value: Fraction) -> bool:
    return parity(value) is Parity.ODD


def format_rational(value: Fraction) -> str:
    """Always ``p/q``, even for integers."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def require_unit_interval(a: Fraction, allow_one: bool = False) -> Fraction:
    """Validate a kite parameter.

    Raises:
        DomainError: if ``a`` is not in (0,1) (or (0,1] with ``allow_one``)
    """
    a = Fraction(a)
    upper_ok = a <= 1 if allow_one else a < 1
    if not (a > 0 and upper_ok):
        raise DomainError(f"parameter {format_rational(a)} outside the unit interval")
    return a


# ===== Geometric Values =====

@dataclass(frozen=True)
class PlanePoint:
    """Exact point in the plane."""
    x: Fraction
    y: Fraction

    @classmethod
    def of(cls, x: Any, y: Any) -> "PlanePoint":
        return cls(Fraction(x), Fraction(y))

    def __add__(self, other: "PlanePoint") -> "PlanePoint":
        return PlanePoint(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "PlanePoint") -> "PlanePoint":
        return PlanePoint(self.x - other.x, self.y - other.y)

    def __neg__(self) -> "PlanePoint":
        return PlanePoint(-self.x, -self.y)

    def scaled(self, k: Any) -> "PlanePoint":
        return PlanePoint(self.x * k, self.y * k)

    def cross(self, other: "PlanePoint") -> Fraction:
        return self.x * other.y - self.y * other.x

    def dot(self, other: "PlanePoint") -> Fraction:
        return self.x * other.x + self.y * other.y

    def norm_sq(self) -> Fraction:
        return self.x * self.x + self.y * self.y

    def mirrored(self) -> "PlanePoint":
        """Reflection in the x-axis."""
        return PlanePoint(self.x, -self.y)

    def as_floats(self) -> Tuple[float, float]:
        return float(self.x), float(self.y)


@dataclass(frozen=True, order=True)
class LatticePoint:
    """Vertex (m, n) of an arithmetic graph."""
    m: int
    n: int

    def __add__(self, other: "LatticePoint") -> "LatticePoint":
        return LatticePoint(self.m + other.m, self.n + other.n)

    def __sub__(self, other: "LatticePoint") -> "LatticePoint":
        return LatticePoint(self.m - other.m, self.n - other.n)

    def __neg__(self) -> "LatticePoint":
        return LatticePoint(-self.m, -self.n)

    def scaled(self, k: int) -> "LatticePoint":
        return LatticePoint(self.m * k, self.n * k)

    def is_zero(self) -> bool:
        return self.m == 0 and self.n == 0

    def as_tuple(self) -> Tuple[int, int]:
        return self.m, self.n


ORIGIN = LatticePoint(0, 0)


@dataclass(frozen=True)
class ReturnPair:
    """Combinatorial type of one first return: Ψ(p) − p = 2(ε₁A+ε₂, ε₃)."""
    eps1: int
    eps2: int
    eps3: int

    @property
    def offset(self) -> LatticePoint:
        return LatticePoint(self.eps1, self.eps2)

    def is_trivial(self) -> bool:
        return self.eps1 == 0 and self.eps2 == 0


@dataclass(frozen=True)
class LengthSpectrum:
    """Multiples n_0..n_7 of V_1..V_8 used by the eight strip maps."""
    counts: Tuple[int, ...]

    def __getitem__(self, j: int) -> int:
        return self.counts[j]

    def total(self) -> int:
        return sum(abs(n) for n in self.counts)


@dataclass(frozen=True)
class PinwheelResult:
    point: PlanePoint
    spectrum: LengthSpectrum
    pair: ReturnPair


@dataclass(frozen=True)
class ReturnResult:
    """First return to Ξ computed by direct iteration."""
    start: PlanePoint
    point: PlanePoint
    steps: int
    max_distance_sq: Fraction  # from the kite vertex (0,1), over all square-map iterates


@dataclass
class OrbitTrace:
    """Square-map orbit of a special point."""
    start: PlanePoint
    points: List[PlanePoint]
    closed: bool
    hits: List[Fraction]  # first coordinates of visits to I = [0,2] x {-1}

    @property
    def steps(self) -> int:
        return len(self.points) - 1

    def xi_points(self) -> List[PlanePoint]:
        return [p for p in self.points if p.x > 0 and abs(p.y) == 1]

    def xi_diameter(self) -> Fraction:
        """Diameter of the orbit's trace in Ξ (spread of first coordinates)."""
        xs = [p.x for p in self.xi_points()]
        if not xs:
            return Fraction(0)
        return max(xs) - min(xs)


@dataclass(frozen=True)
class MasterPoint:
    """Reduced point of the fundamental domain R_A with reduction witnesses."""
    coords: Tuple[Fraction, Fraction, Fraction]
    witnesses: Tuple[int, int, int]
    sign: Sign


@dataclass(frozen=True)
class ClassifierIndex:
    n0: int
    n1: int
    n2: int
    n3: int
    n4: int

    def __post_init__(self) -> None:
        if self.n0 not in (0, 1) or not 0 <= self.n1 <= 3:
            raise DomainError(f"classifier index out of range: {self}")
        if not (0 <= self.n2 <= 2 and 0 <= self.n3 <= 2 and -2 <= self.n4 <= 2):
            raise DomainError(f"classifier index out of range: {self}")


Vertex4 = Tuple[int, int, int, int]


@dataclass(frozen=True)
class Polytope4:
    """Integral convex polytope in (x, y, z, A)-space."""
    index: int
    label: Tuple[int, int]
    vertices: Tuple[Vertex4, ...]


# A digit sequence (k_0, ..., k_{n-1}) with 0 <= k_i <= d_i.
DigitSequence = Tuple[int, ...]


# ===== Sequence Records =====

class FareyPair(BaseModel):
    """Farey neighbours p₋/q₋ < A < p₊/q₊ with q·p± − p·q± = ±1."""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    minus: Fraction
    plus: Fraction


class SequenceChain(BaseModel):
    """Finite chain 1/1 ← … ← A of odd rationals.

    ``deltas``, ``ds`` and ``sides`` have one entry per consecutive pair;
    ``superior`` and ``neighbors`` have one entry per term. The Farey pair of
    1/1 is the formal pair (0/1, 1/0) and is stored as ``None``.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True)

    terms: List[Fraction]
    deltas: List[int] = Field(default_factory=list)
    ds: List[int] = Field(default_factory=list)
    superior: List[bool] = Field(default_factory=list)
    sides: List[int] = Field(default_factory=list)
    neighbors: List[Optional[FareyPair]] = Field(default_factory=list)
    source_indices: List[int] = Field(default_factory=list)

    @field_validator("terms")
    @classmethod
    def starts_at_one(cls, v: List[Fraction]) -> List[Fraction]:
        """A chain is anchored at 1/1."""
        if not v or v[0] != 1:
            raise ValueError("chain must start at 1/1")
        return v

    @property
    def terminal(self) -> Fraction:
        return self.terms[-1]

    @property
    def denominators(self) -> List[int]:
        return [t.denominator for t in self.terms]

    def __len__(self) -> int:
        return len(self.terms)

    def to_json_dict(self) -> Dict[str, Any]:
        return {
            "terms": [[t.numerator, t.denominator] for t in self.terms],
            "deltas": list(self.deltas),
            "ds": list(self.ds),
            "superior": list(self.superior),
        }


class ApproximantData(BaseModel):
    """λ_n = |A q_n − p_n| and λ*_n along a chain, evaluated at a terminal rational."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    terminal: Fraction
    lambdas: List[Fraction]
    lambda_stars: List[Fraction]


# ===== Reports =====

class Report(BaseModel):
    """Outcome of a verification suite."""
    name: str
    passed: bool = True
    checked: int = 0
    failures: List[Dict[str, Any]] = Field(default_factory=list)
    details: Dict[str, Any] = Field(default_factory=dict)

    def fail(self, **info: Any) -> None:
        self.passed = False
        self.failures.append(info)

    def tick(self, count: int = 1) -> None:
        self.checked += count

    def absorb(self, other: "Report") -> None:
        """Fold a sub-report into this one."""
        self.checked += other.checked
        if not other.passed:
            self.passed = False
            for failure in other.failures:
                self.failures.append({"suite": other.name, **failure})
        self.details[other.name] = other.details


class Certificate(BaseModel):
    """Separation certificate between two polytopes."""
    pair_a: str
    pair_b: str
    w: Optional[List[int]] = None
    method: str = "functional"

    @property
    def ok(self) -> bool:
        return self.w is not None


class DimensionReport(BaseModel):
    """Level-wise and closed-form dimension data for a superior chain."""
    levels: List[Dict[str, Any]] = Field(default_factory=list)
    slope_estimate: Optional[float] = None
    enhanced_slope_estimate: Optional[float] = None
    period: Optional[int] = None
    closed_form: Optional[str] = None
    closed_form_value: Optional[float] = None
    enhanced_closed_form: Optional[str] = None
    enhanced_closed_form_value: Optional[float] = None
    supbound_ok: Optional[bool] = None
