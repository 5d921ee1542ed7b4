"""
The fourteen integral polytopes partitioning R₊ in (x, y, z, A)-space.

Facets are derived once from the integer vertex lists, membership uses
exact half-space tests, and disjointness is certified by separating
functionals w ∈ {−1,0,1}⁴ with a facet-normal fallback.
"""
import itertools
import logging
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from kitebilliards.config import Settings, get_settings
from kitebilliards.masterpicture import classifier_index, classify
from kitebilliards.models import Certificate, Polytope4, Report, Sign, Vertex4

logger = logging.getLogger(__name__)

# Vertices as xyzA digit strings, followed by the (ε₁, ε₂) label.
POLYTOPE_TABLE: Tuple[Tuple[Tuple[int, int], Tuple[str, ...]], ...] = (
    ((1, 1), ("0000", "0001", "0010", "0101", "0111", "1001", "1010", "1011", "1111")),
    ((-1, 1), ("0000", "0100", "0101", "0201", "0211", "1101", "1111", "1211")),
    ((-1, -1), ("0100", "0110", "1110", "1111", "1211", "2111")),
    ((0, 1), ("0100", "0201", "1000", "1100", "1101", "1110", "1201", "1211")),
    ((0, 1), ("0000", "0010", "0101", "0110", "0111", "0211", "1010", "1111")),
    ((0, 1), ("0000", "0101", "1001", "1101", "1111")),
    ((0, 1), ("0001", "0010", "0011", "0111", "1011")),
    ((-1, 0), ("0000", "0100", "0110", "0211", "1111", "1211")),
    ((-1, 0), ("1100", "1201", "2101", "2201", "2211")),
    ((-1, 0), ("0100", "1101", "1111", "1211", "2111")),
    ((1, 0), ("1000", "1100", "1101", "1110", "2001", "2101", "2111")),
    ((1, 0), ("1001", "1010", "1011", "1111", "2011")),
    ((0, 0), ("1100", "1101", "1110", "1201", "1211", "2101", "2111", "2211")),
    ((0, 0), ("0000", "0100", "0110", "1000", "1001", "1010", "1101", "1110", "1111",
              "2001", "2011", "2111")),
)

EMBEDDING_LABELS = ((1, 1), (-1, -1), (1, 0), (-1, 0))

Facet = Tuple[Vertex4, int]


# ===== Table =====

@lru_cache(maxsize=1)
def polytope_table() -> Tuple[Polytope4, ...]:
    """The 14 polytopes, numbered from 1 in table order."""
    return tuple(
        Polytope4(index=k + 1, label=label, vertices=tuple(tuple(int(c) for c in s) for s in digits))
        for k, (label, digits) in enumerate(POLYTOPE_TABLE)
    )


def with_label(label: Tuple[int, int]) -> List[Polytope4]:
    return [p for p in polytope_table() if p.label == label]


def format_table() -> str:
    """Plain-text listing, one polytope per line."""
    lines = []
    for poly in polytope_table():
        digits = " ".join("".join(str(c) for c in v) for v in poly.vertices)
        lines.append(f"{poly.index:2d}  {digits}  ({poly.label[0]},{poly.label[1]})")
    return "\n".join(lines)


# ===== Maps on R⁴ =====

def iota(v: Vertex4) -> Vertex4:
    """ι(x, y, z, A) = (1 + A − x, 1 + A − y, 1 − z, A)."""
    x, y, z, a = v
    return 1 + a - x, 1 + a - y, 1 - z, a


def shift(v: Vertex4, t: Sequence[int]) -> Vertex4:
    return v[0] + t[0], v[1] + t[1], v[2] + t[2], v[3] + t[3]


def gamma(v: Vertex4, k: int) -> Vertex4:
    """The lattice generators γ₁, γ₂, γ₃ acting on (x, y, z, A)."""
    x, y, z, a = v
    if k == 1:
        return x + 1 + a, y, z, a
    if k == 2:
        return x + 1 - a, y + 1 + a, z, a
    return x - 1, y - 1, z + 1, a


def lattice_translate(v: Vertex4, a1: int, a2: int) -> Vertex4:
    """a₁γ₁ + a₂γ₂ applied to v."""
    x, y, z, a = v
    return x + a1 + a2 + (a1 - a2) * a, y + a2 + a2 * a, z, a


def image(vertices: Iterable[Vertex4], fn, *args) -> Tuple[Vertex4, ...]:
    return tuple(fn(v, *args) for v in vertices)


def vertex_set(vertices: Iterable[Vertex4]) -> Tuple[Vertex4, ...]:
    return tuple(sorted(set(vertices)))


# ===== Facets =====

def _normal(base: Vertex4, others: Sequence[Vertex4]) -> Vertex4:
    """Generalized cross product of the three edge vectors from ``base``."""
    rows = np.array([[o[i] - base[i] for i in range(4)] for o in others], dtype=object)
    normal = []
    for col in range(4):
        minor = np.delete(rows, col, axis=1)
        det = (
            minor[0, 0] * (minor[1, 1] * minor[2, 2] - minor[1, 2] * minor[2, 1])
            - minor[0, 1] * (minor[1, 0] * minor[2, 2] - minor[1, 2] * minor[2, 0])
            + minor[0, 2] * (minor[1, 0] * minor[2, 1] - minor[1, 1] * minor[2, 0])
        )
        normal.append(int(det) * (-1 if col % 2 else 1))
    g = 0
    for c in normal:
        g = gcd(g, abs(c))
    if g == 0:
        return 0, 0, 0, 0
    return tuple(c // g for c in normal)


def dot(w: Sequence, v: Sequence):
    return w[0] * v[0] + w[1] * v[1] + w[2] * v[2] + w[3] * v[3]


@lru_cache(maxsize=None)
def facets(vertices: Tuple[Vertex4, ...]) -> Tuple[Facet, ...]:
    """Supporting hyperplanes (w, b) with w·v <= b on the polytope, one per facet."""
    found: Dict[Vertex4, int] = {}
    for quad in itertools.combinations(vertices, 4):
        normal = _normal(quad[0], quad[1:])
        if normal == (0, 0, 0, 0):
            continue
        level = dot(normal, quad[0])
        values = [dot(normal, v) for v in vertices]
        if all(x <= level for x in values):
            found[normal] = level
        elif all(x >= level for x in values):
            found[tuple(-c for c in normal)] = -level
    return tuple(found.items())


def strictly_inside(point: Sequence, vertices: Tuple[Vertex4, ...]) -> bool:
    return all(dot(w, point) < b for w, b in facets(vertices))


def containing_polytopes(point: Sequence) -> List[Polytope4]:
    return [p for p in polytope_table() if strictly_inside(point, p.vertices)]


# ===== Separation =====

def _candidate_functionals(search_range: int = 1) -> List[Vertex4]:
    values = range(-search_range, search_range + 1)
    candidates = [w for w in itertools.product(values, repeat=4) if any(w)]
    # unit directions first: they dispose of far-apart translates quickly
    candidates.sort(key=lambda w: sum(abs(c) for c in w))
    return candidates


CANDIDATES = _candidate_functionals()


def separating_functional(first: Sequence[Vertex4], second: Sequence[Vertex4]) -> Optional[Vertex4]:
    """w with max over ``first`` of w·v <= min over ``second``, either ordering."""
    for w in CANDIDATES:
        a_vals = [dot(w, v) for v in first]
        b_vals = [dot(w, v) for v in second]
        if max(a_vals) <= min(b_vals):
            return w
        if max(b_vals) <= min(a_vals):
            return tuple(-c for c in w)
    return None


def facet_separation(first: Tuple[Vertex4, ...], second: Tuple[Vertex4, ...]) -> Optional[Vertex4]:
    """A facet normal of either polytope that separates the two."""
    for w, b in facets(first):
        if all(dot(w, v) >= b for v in second):
            return w
    for w, b in facets(second):
        if all(dot(w, v) >= b for v in first):
            return tuple(-c for c in w)
    return None


def certify_pair(name_a: str, first, name_b: str, second) -> Certificate:
    """Separation certificate for two polytopes with disjoint interiors."""
    first, second = tuple(first), tuple(second)
    w = separating_functional(first, second)
    if w is not None:
        return Certificate(pair_a=name_a, pair_b=name_b, w=list(w))
    w = facet_separation(vertex_set(first), vertex_set(second))
    if w is not None:
        return Certificate(pair_a=name_a, pair_b=name_b, w=list(w), method="facet")
    logger.warning(f"no separating hyperplane for {name_a} / {name_b}")
    return Certificate(pair_a=name_a, pair_b=name_b, w=None, method="none")


# ===== Verification Suites =====

def verify_pairwise() -> Tuple[Report, List[Certificate]]:
    """All C(14, 2) pairs have disjoint interiors."""
    report = Report(name="partition_pairs")
    certificates = []
    for p, q in itertools.combinations(polytope_table(), 2):
        report.tick()
        cert = certify_pair(f"P{p.index}", p.vertices, f"P{q.index}", q.vertices)
        certificates.append(cert)
        if not cert.ok:
            report.fail(pair_a=cert.pair_a, pair_b=cert.pair_b)
    return report, certificates


def verify_iota_identities() -> Report:
    """ι(P)+(1,1,0,0) = P for the first trivial polytope and γ₂(P) for the second."""
    report = Report(name="iota_identities")
    first, second = with_label((0, 0))
    mirrored_first = vertex_set(shift(iota(v), (1, 1, 0, 0)) for v in first.vertices)
    mirrored_second = vertex_set(shift(iota(v), (1, 1, 0, 0)) for v in second.vertices)
    report.tick(2)
    if mirrored_first != vertex_set(first.vertices):
        report.fail(polytope=first.index)
    if mirrored_second != vertex_set(image(second.vertices, gamma, 2)):
        report.fail(polytope=second.index)
    return report


def _translates(poly: Polytope4, bound: int):
    for a1 in range(-bound, bound + 1):
        for a2 in range(-bound, bound + 1):
            yield (a1, a2), tuple(lattice_translate(v, a1, a2) for v in poly.vertices)


def verify_embedding(bound: Optional[int] = None, settings: Optional[Settings] = None) -> Tuple[Report, List[Certificate]]:
    """Separation of the translate pairs behind the embedding of the graph.

    Step 2 pairs: a₁γ₁ + a₂γ₂ translates of R₊(ε) against ι(R₊(−ε)) + (1,1,0,0)
    for ε ∈ {(1,1), (−1,−1), (1,0), (−1,0)}. Step 3 pairs: translates of
    R₊(1,1) against ι(R₊(−1,1)) − (1,1,0,0). Both with |a₁|, |a₂| <= bound.
    """
    settings = settings or get_settings()
    bound = bound if bound is not None else settings.master.separation_range
    report = Report(name="embedding")
    certificates: List[Certificate] = []

    jobs = []
    for label in EMBEDDING_LABELS:
        opposite = (-label[0], -label[1])
        for target in with_label(opposite):
            shifted = tuple(shift(iota(v), (1, 1, 0, 0)) for v in target.vertices)
            for source in with_label(label):
                jobs.append(("step2", source, f"iota(P{target.index})+e", shifted))
    for target in with_label((-1, 1)):
        shifted = tuple(shift(iota(v), (-1, -1, 0, 0)) for v in target.vertices)
        for source in with_label((1, 1)):
            jobs.append(("step3", source, f"iota(P{target.index})-e", shifted))

    for step, source, target_name, target in jobs:
        for (a1, a2), moved in _translates(source, bound):
            report.tick()
            cert = certify_pair(f"L({a1},{a2})P{source.index}", moved, target_name, target)
            if not cert.ok:
                report.fail(step=step, pair_a=cert.pair_a, pair_b=cert.pair_b)
            elif cert.method != "functional" or (a1, a2) == (0, 0):
                certificates.append(cert)
    logger.info(f"embedding separation: {report.checked} translate pairs, bound {bound}")
    return report, certificates


def _sample_points(a: Fraction, count: int, denominator: int, seed: int):
    rng = np.random.default_rng(seed)
    span_xy = int((1 + a) * denominator)
    for _ in range(count):
        kx, ky = rng.integers(1, span_xy, size=2)
        kz = rng.integers(1, denominator)
        yield Fraction(int(kx), denominator), Fraction(int(ky), denominator), Fraction(int(kz), denominator)


def verify_samples(
    a: Fraction,
    count: Optional[int] = None,
    settings: Optional[Settings] = None,
    points: Optional[Iterable[Tuple[Fraction, Fraction, Fraction]]] = None,
) -> Report:
    """Classifier labels agree with polytope membership on random points of R_A.

    Points not strictly inside exactly one polytope are skipped and counted.
    The minus classification is checked through ι: the minus label at v
    is the negated plus label at ι(v). That check is skipped when ι(v)
    lies on a polytope boundary, where the plus side follows the
    lower-border rule.

    Args:
        a: Parameter slice
        count: Number of random points; defaults to ``master.sample_count``
        settings: Configuration settings
        points: Explicit (x, y, z) points used instead of random sampling
    """
    settings = settings or get_settings()
    count = count if count is not None else settings.master.sample_count
    a = Fraction(a)
    if points is None:
        points = _sample_points(a, count, settings.master.sample_denominator, settings.master.sample_seed)
    report = Report(name="partition_samples")
    skipped = mirror_skipped = 0
    for x, y, z in points:
        homes = containing_polytopes((x, y, z, a))
        if len(homes) != 1:
            skipped += 1
            continue
        report.tick()
        label = classify(classifier_index(a, (x, y, z), Sign.PLUS))
        if label != homes[0].label:
            report.fail(point=[str(x), str(y), str(z)], classifier=label, polytope=homes[0].index)
        mirrored = iota((x, y, z, a))
        if len(containing_polytopes(mirrored)) != 1:
            mirror_skipped += 1
            continue
        report.tick()
        minus = classify(classifier_index(a, (x, y, z), Sign.MINUS))
        plus_at_mirror = classify(classifier_index(a, mirrored[:3], Sign.PLUS))
        if minus != (-plus_at_mirror[0], -plus_at_mirror[1]):
            report.fail(point=[str(x), str(y), str(z)], iota=True)
    if skipped or mirror_skipped:
        logger.debug(f"partition sampling skipped {skipped} boundary points, {mirror_skipped} mirrored")
    report.details = {"skipped": skipped, "mirror_skipped": mirror_skipped}
    return report


def verify_partition(
    a: Fraction = Fraction(2, 3),
    bound: Optional[int] = None,
    settings: Optional[Settings] = None,
) -> Report:
    """Pairwise disjointness, ι identities, sampled agreement and embedding separation."""
    settings = settings or get_settings()
    logger.info("verifying the polytope partition")
    report = Report(name="partition")
    pairs, pair_certs = verify_pairwise()
    embedding, embedding_certs = verify_embedding(bound, settings)
    for sub in (pairs, verify_iota_identities(), verify_samples(a, settings=settings), embedding):
        report.absorb(sub)
    report.details["certificates"] = [c.model_dump() for c in pair_certs + embedding_certs]
    return report
