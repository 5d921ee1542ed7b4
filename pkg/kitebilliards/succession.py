"""
Partition of the plane outside the kite by the displacement of ψ.

ψ(p) − p takes ten values outside K(A). Eight unbounded regions carry the
strip vectors V_1..V_8; two small triangles next to the kite carry
(−2A, −2) and (2A, −2).
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from kitebilliards.dynamics import Kite, square_map, strip_vector
from kitebilliards.exceptions import UndefinedOrbitError
from kitebilliards.models import PlanePoint, Report, format_rational

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Region:
    """Open region given by optional start ray, a vertex path and optional end ray."""
    label: str
    vector: PlanePoint
    vertices: Tuple[PlanePoint, ...]
    start_ray: Optional[PlanePoint] = None
    end_ray: Optional[PlanePoint] = None

    @property
    def bounded(self) -> bool:
        return self.start_ray is None

    def polygon(self, reach: Fraction) -> List[PlanePoint]:
        """Vertex ring, truncating the unbounded edges at parameter ``reach``."""
        if self.bounded:
            return list(self.vertices)
        head = self.vertices[0] + self.start_ray.scaled(reach)
        tail = self.vertices[-1] + self.end_ray.scaled(reach)
        return [head, *self.vertices, tail]


def _on_segment(p: PlanePoint, a: PlanePoint, b: PlanePoint) -> bool:
    if (b - a).cross(p - a) != 0:
        return False
    return (p - a).dot(p - b) <= 0


def _winding(ring: List[PlanePoint], p: PlanePoint) -> int:
    winding = 0
    for k, a in enumerate(ring):
        b = ring[(k + 1) % len(ring)]
        side = (b - a).cross(p - a)
        if a.y <= p.y < b.y and side > 0:
            winding += 1
        elif b.y <= p.y < a.y and side < 0:
            winding -= 1
    return winding


def regions(kite: Kite) -> Tuple[Region, ...]:
    """The ten regions for K(A), triangles first."""
    a = kite.a
    lam = 1 / (a - 1)
    pt = PlanePoint.of

    def scaled(x, y) -> PlanePoint:
        return PlanePoint(lam * x, lam * y)

    r3_corner = scaled(2 * a * a, -1 - a)
    r4_corner = scaled(2 * a, a - 3)
    r5_corner = scaled(2 * a, 3 * a - 1)
    r6_corner = scaled(2, a + 1)
    return (
        Region("4#", PlanePoint(-2 * a, Fraction(-2)), (pt(a, 0), pt(2 * a, 1), r3_corner)),
        Region("6b", PlanePoint(2 * a, Fraction(-2)), (pt(0, 1), pt(-a, 2), r5_corner)),
        Region("1", strip_vector(kite, 1), (pt(1, -2),), pt(1, -1), pt(1, 1)),
        Region("2", strip_vector(kite, 2), (pt(1, -2), pt(0, -1)), pt(1, 1), pt(a, 1)),
        Region("3", strip_vector(kite, 3), (pt(2 * a, 1), r3_corner), pt(a, 1), pt(-a, 1)),
        Region("4", strip_vector(kite, 4), (r4_corner,), pt(-a, 1), pt(-1, 1)),
        Region("5", strip_vector(kite, 5), (r4_corner, pt(-a, 2), r5_corner), pt(-1, 1), pt(-1, -1)),
        Region("6", strip_vector(kite, 6), (r6_corner,), pt(-1, -1), pt(-a, -1)),
        Region("7", strip_vector(kite, 7), (r6_corner, pt(-2, -1)), pt(-a, -1), pt(a, -1)),
        Region("8", strip_vector(kite, 8), (pt(-2, -1), pt(-1, 0)), pt(a, -1), pt(1, -1)),
    )


def succession_region(kite: Kite, p: PlanePoint) -> Optional[Tuple[str, PlanePoint]]:
    """Label and displacement vector of the region containing p.

    Returns:
        ``(label, vector)`` or None for points on a region boundary or in K
    """
    if kite.contains(p):
        return None
    reach = 4 * (abs(p.x) + abs(p.y) + 10)
    for region in regions(kite):
        ring = region.polygon(reach)
        if any(_on_segment(p, ring[k], ring[(k + 1) % len(ring)]) for k in range(len(ring))):
            return None
        if _winding(ring, p) != 0:
            return region.label, region.vector
    return None


def sample_points(kite: Kite, radius: int, denominator: int, inner: int = 0) -> List[PlanePoint]:
    """Grid points (i/den + shift, j/den + shift) with |x|, |y| < radius outside K.

    Points with both |x| and |y| below ``inner`` are left out.
    """
    shift = Fraction(1, 7 * denominator)
    points = []
    span = radius * denominator
    for i in range(-span, span):
        for j in range(-span, span):
            p = PlanePoint(Fraction(i, denominator) + shift, Fraction(j, denominator) + 2 * shift)
            if max(abs(p.x), abs(p.y)) < inner:
                continue
            if not kite.contains(p):
                points.append(p)
    return points


def verify_succession(kite: Kite, samples: List[PlanePoint]) -> Report:
    """ψ(p) − p equals the region vector on every sampled point."""
    report = Report(name="succession")
    skipped = 0
    for p in samples:
        found = succession_region(kite, p)
        if found is None:
            skipped += 1
            continue
        label, vector = found
        try:
            shift = square_map(kite, p) - p
        except UndefinedOrbitError:
            skipped += 1
            continue
        report.tick()
        if shift != vector:
            report.fail(
                a=format_rational(kite.a),
                point=[str(p.x), str(p.y)],
                region=label,
                shift=[str(shift.x), str(shift.y)],
            )
    if skipped:
        logger.debug(f"succession check skipped {skipped} boundary or singular samples")
    report.details = {"skipped": skipped}
    return report
