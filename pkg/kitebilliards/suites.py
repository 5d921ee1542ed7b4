"""
Named verification suites.

Each suite sweeps a list of parameters through the checks of one part of
the package and folds the results into a single Report. The default
parameters are the worked examples; callers may pass their own.
"""
import logging
import math
import time
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence

from kitebilliards.arithgraph import (
    Window,
    build_graph,
    check_embedding,
    stability_census,
    verify_orbit_intervals,
    verify_translation_invariance,
)
from kitebilliards.comet import (
    cantor_approx,
    dimension_estimate,
    fundamental_chain,
    verify_cantor,
    verify_fundamental_orbit,
    verify_odometer,
    verify_return_model,
)
from kitebilliards.config import Settings, get_settings
from kitebilliards.dynamics import Kite, verify_pinwheel
from kitebilliards.exceptions import DomainError, VerificationError
from kitebilliards.hexagrid import Hexagrid, verify_hexagrid
from kitebilliards.masterpicture import verify_consistency
from kitebilliards.models import LatticePoint, Report, format_rational, is_odd
from kitebilliards.pivots import (
    copy_check,
    even_arc_agreement,
    pivot_endpoints,
    pivot_points,
    structure_relation,
    verify_pivot,
)
from kitebilliards.polytopes import verify_partition, verify_samples
from kitebilliards.seqcore import approximation_identities, penrose_chain, predecessor_chain, verify_keycomp
from kitebilliards.succession import sample_points, verify_succession

logger = logging.getLogger(__name__)

F = Fraction

# Worked values of the fundamental orbit's visits to I, in units of 1/q.
FUNDAMENTAL_POINTS: Dict[Fraction, List[int]] = {
    F(19, 49): [1, 5, 17, 21, 33, 37, 61, 65, 77, 81, 93, 97],
    F(12, 31): [1, 3, 11, 13, 21, 23, 39, 41, 49, 51, 59, 61],
}

# (E⁻, E⁺) for parameters with a worked pivot example.
PIVOT_POINTS: Dict[Fraction, tuple] = {
    F(379, 645): (LatticePoint(-303, 179), LatticePoint(29, -17)),
}

DEFAULT_PARAMETERS: Dict[str, List[Fraction]] = {
    "embedding": [F(7, 25), F(25, 47), F(4, 15)],
    "hexagrid": [F(25, 47)],
    "masterpicture": [F(1, 3), F(3, 5), F(7, 25), F(19, 49), F(25, 47)],
    "partition": [F(1, 3), F(2, 3)],
    "succession": [F(1, 3), F(1, 2), F(3, 5), F(7, 8)],
    "discrete": [F(19, 49), F(12, 31)],
    "returnmodel": [F(19, 49)],
    "identities": [F(19, 49)],
    "pivot": [F(17, 29), F(57, 97), F(19, 49), F(379, 645), F(2, 5)],
    "cantor": [F(19, 49)],
}

PENROSE_DIMENSION = math.log(2) / (3 * math.log((1 + math.sqrt(5)) / 2))
PENROSE_ENHANCED_DIMENSION = math.log(3) / (3 * math.log((1 + math.sqrt(5)) / 2))


def _label(a: Fraction) -> str:
    return format_rational(a)


class VerificationRunner:
    """Runs named suites with shared settings and sizes.

    Args:
        settings: Configuration settings
        pinwheel_denominator: Denominator of the pinwheel parameter sweep
        pinwheel_samples: Number of x values per pinwheel parameter
        master_radius: Half-width of the master picture window
        keycomp_max_q: Denominator bound for the Diophantine constant sweep
        penrose_pairs: Number of (2, 1) extensions of the Penrose chain
        succession_radius: Half-width of the succession sampling box
        succession_inner: Half-width of the box around K left unsampled
    """

    def __init__(
        self,
        settings: Optional[Settings] = None,
        pinwheel_denominator: int = 64,
        pinwheel_samples: int = 1024,
        master_radius: int = 50,
        keycomp_max_q: int = 300,
        penrose_pairs: int = 12,
        succession_radius: int = 14,
        succession_inner: int = 10,
    ):
        self.settings = settings or get_settings()
        self.pinwheel_denominator = pinwheel_denominator
        self.pinwheel_samples = pinwheel_samples
        self.master_radius = master_radius
        self.keycomp_max_q = keycomp_max_q
        self.penrose_pairs = penrose_pairs
        self.succession_radius = succession_radius
        self.succession_inner = succession_inner
        self.suites: Dict[str, Callable[[Optional[Sequence[Fraction]]], Report]] = {
            "embedding": self.embedding,
            "hexagrid": self.hexagrid,
            "pinwheel": self.pinwheel,
            "masterpicture": self.masterpicture,
            "partition": self.partition,
            "succession": self.succession,
            "discrete": self.discrete,
            "returnmodel": self.returnmodel,
            "identities": self.identities,
            "pivot": self.pivot,
            "cantor": self.cantor,
            "dimension": self.dimension,
        }

    @property
    def names(self) -> List[str]:
        return list(self.suites)

    def _params(self, name: str, params: Optional[Sequence[Fraction]]) -> List[Fraction]:
        return [Fraction(a) for a in params] if params else list(DEFAULT_PARAMETERS.get(name, []))

    # ===== Suites =====

    def embedding(self, params: Optional[Sequence[Fraction]] = None) -> Report:
        """Embedding, parity, periodicity and stability of Γ̂ on default windows."""
        report = Report(name="embedding")
        for a in self._params("embedding", params):
            graph = build_graph(a, window=Window.default_for(a, self.settings), settings=self.settings)
            sub = Report(name=_label(a))
            sub.absorb(check_embedding(graph))
            sub.absorb(verify_orbit_intervals(graph))
            sub.absorb(stability_census(graph))
            if is_odd(a):
                sub.absorb(verify_translation_invariance(graph))
            report.absorb(sub)
        return report

    def hexagrid(self, params: Optional[Sequence[Fraction]] = None) -> Report:
        """Floors, doors and the Room Lemma on one period window."""
        report = Report(name="hexagrid")
        for a in self._params("hexagrid", params):
            grid = Hexagrid(a)
            window = grid.period_window() if grid.odd else Window.default_for(a, self.settings)
            graph = build_graph(a, window=window, settings=self.settings)
            sub = verify_hexagrid(graph, grid, settings=self.settings)
            sub.name = _label(a)
            report.absorb(sub)
        return report

    def pinwheel(self, params: Optional[Sequence[Fraction]] = None) -> Report:
        """Pinwheel map against direct iteration on a grid of x values.

        The default sweep is A = k/64 for odd k and x = 10⁻⁶ + j/64.
        """
        n = self.pinwheel_denominator
        parameters = [Fraction(a) for a in params] if params else [F(k, n) for k in range(1, n, 2)]
        xs = [F(1, 10**6) + F(j, n) for j in range(1, self.pinwheel_samples + 1)]
        report = Report(name="pinwheel")
        for a in parameters:
            sub = verify_pinwheel(Kite(a), xs, self.settings)
            sub.name = _label(a)
            report.absorb(sub)
        return report

    def masterpicture(self, params: Optional[Sequence[Fraction]] = None) -> Report:
        """Master picture edges against the return map on a square window."""
        r = self.master_radius
        report = Report(name="masterpicture")
        for a in self._params("masterpicture", params):
            sub = verify_consistency(a, range(-r, r + 1), range(-r, r + 1), settings=self.settings)
            sub.name = _label(a)
            report.absorb(sub)
        return report

    def partition(self, params: Optional[Sequence[Fraction]] = None) -> Report:
        """Pairwise disjointness, ι identities, embedding separation and sampled membership."""
        report = Report(name="partition")
        first, *rest = self._params("partition", params) or [F(2, 3)]
        full = verify_partition(first, settings=self.settings)
        full.name = "polytopes"
        report.absorb(full)
        for a in rest:
            sub = verify_samples(a, settings=self.settings)
            sub.name = f"samples {_label(a)}"
            report.absorb(sub)
        return report

    def succession(self, params: Optional[Sequence[Fraction]] = None) -> Report:
        """Square-map displacement against the region table outside a box around K."""
        report = Report(name="succession")
        for a in self._params("succession", params):
            kite = Kite(a)
            samples = sample_points(kite, self.succession_radius, 2, inner=self.succession_inner)
            sub = verify_succession(kite, samples)
            sub.name = _label(a)
            report.absorb(sub)
        return report

    def discrete(self, params: Optional[Sequence[Fraction]] = None) -> Report:
        """Fundamental orbit formula against direct iteration and the worked values."""
        report = Report(name="discrete")
        for a in self._params("discrete", params):
            sub = verify_fundamental_orbit(fundamental_chain(a), self.settings)
            sub.name = _label(a)
            expected = FUNDAMENTAL_POINTS.get(a)
            if expected is not None:
                sub.tick()
                listed = [format_rational(F(k, a.denominator)) for k in expected]
                if sub.details["points"] != listed:
                    sub.fail(kind="worked_values", expected=listed, points=sub.details["points"])
            report.absorb(sub)
        return report

    def returnmodel(self, params: Optional[Sequence[Fraction]] = None) -> Report:
        """Return order and coarse bounds of the fundamental orbit."""
        report = Report(name="returnmodel")
        for a in self._params("returnmodel", params):
            sub = verify_return_model(fundamental_chain(a), settings=self.settings)
            sub.name = _label(a)
            report.absorb(sub)
        return report

    def identities(self, params: Optional[Sequence[Fraction]] = None) -> Report:
        """Approximation identities on inferior chains, the Penrose chain and the Ω sweep."""
        report = Report(name="identities")
        for a in self._params("identities", params):
            sub = approximation_identities(predecessor_chain(a), a)
            sub.name = _label(a)
            report.absorb(sub)
        penrose = penrose_chain(4)
        sub = approximation_identities(penrose, penrose.terminal)
        sub.name = f"penrose {_label(penrose.terminal)}"
        report.absorb(sub)
        report.absorb(verify_keycomp(self.keycomp_max_q))
        return report

    def pivot(self, params: Optional[Sequence[Fraction]] = None) -> Report:
        """Worked pivot points, pivot census, structure relation, copy containment and even arcs."""
        report = Report(name="pivot")
        for a in self._params("pivot", params):
            sub = Report(name=_label(a))
            known = PIVOT_POINTS.get(a)
            if known is not None:
                e_minus, e_plus, _ = pivot_endpoints(a)
                sub.tick()
                if (e_minus, e_plus) != known:
                    sub.fail(kind="worked_values", found=[e_minus.as_tuple(), e_plus.as_tuple()])
            elif is_odd(a):
                sub.absorb(verify_pivot(pivot_points(a, self.settings), self.settings))
                sub.absorb(structure_relation(a, self.settings))
                try:
                    sub.absorb(copy_check(a, self.settings))
                except DomainError as e:
                    logger.debug(f"no copy check for {_label(a)}: {e}")
            else:
                sub.absorb(even_arc_agreement(a, self.settings))
            report.absorb(sub)
        return report

    def cantor(self, params: Optional[Sequence[Fraction]] = None) -> Report:
        """Truncated Cantor set and odometer conjugacy."""
        report = Report(name="cantor")
        for a in self._params("cantor", params):
            chain = fundamental_chain(a)
            sub = Report(name=_label(a))
            sub.absorb(verify_cantor(cantor_approx(chain, settings=self.settings)))
            sub.absorb(verify_odometer(chain))
            report.absorb(sub)
        return report

    def dimension(self, params: Optional[Sequence[Fraction]] = None) -> Report:
        """Penrose closed forms, level-slope estimates and the upper bound."""
        report = Report(name="dimension")
        estimate = dimension_estimate(penrose_chain(self.penrose_pairs), settings=self.settings)
        checks = [
            ("closed_form", estimate.closed_form_value, PENROSE_DIMENSION, 1e-6),
            ("enhanced_closed_form", estimate.enhanced_closed_form_value, PENROSE_ENHANCED_DIMENSION, 1e-6),
            ("slope", estimate.slope_estimate, PENROSE_DIMENSION, 0.05),
            ("enhanced_slope", estimate.enhanced_slope_estimate, PENROSE_ENHANCED_DIMENSION, 0.05),
        ]
        for kind, found, expected, tolerance in checks:
            report.tick()
            if found is None or abs(found - expected) > tolerance:
                report.fail(kind=kind, found=found, expected=expected)
        report.tick()
        if estimate.supbound_ok is not True:
            report.fail(kind="supbound")
        report.details = estimate.model_dump()
        return report

    # ===== Driver =====

    def run(
        self,
        names: Optional[Sequence[str]] = None,
        params: Optional[Sequence[Fraction]] = None,
        strict: bool = False,
    ) -> List[Report]:
        """Run suites in order.

        Args:
            names: Suite names; all suites when empty
            params: Parameter override applied to every suite
            strict: Raise on the first failed suite

        Returns:
            One report per suite

        Raises:
            DomainError: for an unknown suite name
            VerificationError: in strict mode, when a suite fails
        """
        names = list(names) if names else self.names
        unknown = [name for name in names if name not in self.suites]
        if unknown:
            raise DomainError(f"unknown suite(s) {', '.join(unknown)}; choose from {', '.join(self.names)}")
        reports = []
        for name in names:
            started = time.perf_counter()
            logger.info(f"running suite {name}")
            report = self.suites[name](params)
            logger.info(
                f"suite {name}: {report.checked} checks, {len(report.failures)} failures, "
                f"{time.perf_counter() - started:.1f}s"
            )
            reports.append(report)
            if strict and not report.passed:
                raise VerificationError(report)
        return reports
