"""Points, circles, arcs, wedges and convex polygons.

Orientation convention: polygons are stored clockwise and every arc runs
clockwise from ``start`` to ``end`` on its supporting circle.  Angles are
plain floats in radians.  A wedge with bisector direction ``d`` and aperture
``w`` has its left arm at ``d + w/2`` and its right arm at ``d - w/2``.
"""

import math
import os
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .errors import (
    ApexNotOnCircle,
    ArmMissesCircle,
    CoCircular,
    DegenerateChord,
    DegeneratePolygon,
    DuplicateVertices,
    NotConvex,
    OmegaCloudError,
    PointNotShared,
    TooFewVertices,
)

TWO_PI = 2.0 * math.pi
LEFT = 1
RIGHT = -1


class Point2(NamedTuple):
    x: float
    y: float

    def __add__(self, other):
        return Point2(self.x + other[0], self.y + other[1])

    def __sub__(self, other):
        return Point2(self.x - other[0], self.y - other[1])

    def scale(self, k: float) -> "Point2":
        return Point2(self.x * k, self.y * k)


def point(x, y) -> Point2:
    """Checked constructor: rejects NaN and infinities."""
    x, y = float(x), float(y)
    if not (math.isfinite(x) and math.isfinite(y)):
        raise OmegaCloudError(f"non-finite coordinate ({x}, {y})")
    return Point2(x, y)


def unit(angle: float) -> Point2:
    return Point2(math.cos(angle), math.sin(angle))


def dot(a, b) -> float:
    return a[0] * b[0] + a[1] * b[1]


def cross(a, b) -> float:
    return a[0] * b[1] - a[1] * b[0]


def dist(a, b) -> float:
    return math.hypot(a[0] - b[0], a[1] - b[1])


def direction(a, b) -> float:
    """Angle of the vector from ``a`` to ``b``."""
    return math.atan2(b[1] - a[1], b[0] - a[0])


def norm_angle(a: float) -> float:
    """Reduce an absolute direction to [0, 2pi)."""
    a = math.fmod(a, TWO_PI)
    if a < 0.0:
        a += TWO_PI
    return 0.0 if a >= TWO_PI else a


def angle_at(apex, p, q) -> float:
    """Unsigned angle p-apex-q in [0, pi]."""
    u = (p[0] - apex[0], p[1] - apex[1])
    v = (q[0] - apex[0], q[1] - apex[1])
    return math.atan2(abs(cross(u, v)), dot(u, v))


# -- tolerances -------------------------------------------------------------

def base_eps() -> float:
    """Relative tolerance, overridable through OMEGA_CLOUD_EPS."""
    raw = os.environ.get("OMEGA_CLOUD_EPS")
    return float(raw) if raw else 1e-9


@dataclass(frozen=True)
class Tolerance:
    pos: float
    ang: float


def bbox_diameter(points) -> float:
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    return math.hypot(max(xs) - min(xs), max(ys) - min(ys))


def tolerance_for(points) -> Tolerance:
    eps = base_eps()
    diam = bbox_diameter(points) if points else 1.0
    return Tolerance(pos=eps * (diam if diam > 0 else 1.0), ang=eps)


# -- circles and arcs -------------------------------------------------------

@dataclass(frozen=True)
class Circle:
    center: Point2
    radius: float

    def __post_init__(self):
        if not self.radius > 0.0:
            raise OmegaCloudError(f"circle radius must be positive, got {self.radius}")

    def contains(self, p, tol: float) -> bool:
        return abs(dist(p, self.center) - self.radius) <= tol

    def point_at(self, angle: float) -> Point2:
        c = self.center
        return Point2(c.x + self.radius * math.cos(angle), c.y + self.radius * math.sin(angle))

    def same_as(self, other: "Circle", tol: float) -> bool:
        return (dist(self.center, other.center) <= tol
                and abs(self.radius - other.radius) <= tol)


@dataclass(frozen=True)
class Arc:
    circle: Circle
    start: Point2
    end: Point2
    measure: float

    @property
    def start_angle(self) -> float:
        return direction(self.circle.center, self.start)

    def point_at(self, offset: float) -> Point2:
        """Point reached after turning ``offset`` clockwise from ``start``."""
        return self.circle.point_at(self.start_angle - offset)

    def offset_of(self, p) -> float:
        """Clockwise turn from ``start`` to the point of the circle nearest ``p``."""
        a = self.start_angle - direction(self.circle.center, p)
        a = norm_angle(a)
        if a > self.measure and TWO_PI - a < 1e-12:
            a = 0.0
        return a

    @property
    def is_full_circle(self) -> bool:
        return self.measure >= TWO_PI - 1e-12


def make_arc(circle: Circle, start, end, measure: float, tol: Tolerance,
             reproject: bool = True) -> Arc:
    """Build an arc after checking that its redundant fields agree.

    Endpoints are re-projected onto the circle unless ``reproject`` is off,
    in which case the given values are kept as they are.
    """
    measure = float(measure)
    if not 0.0 < measure <= TWO_PI + tol.ang:
        raise OmegaCloudError(f"arc measure {measure} outside (0, 2pi]")
    for p in (start, end):
        if not circle.contains(p, tol.pos):
            raise OmegaCloudError(f"arc endpoint {tuple(p)} is off its circle")
    c = circle.center
    s = circle.point_at(direction(c, start))
    e = circle.point_at(direction(c, end))
    full = measure >= TWO_PI - tol.ang
    if full:
        if dist(s, e) > tol.pos:
            raise OmegaCloudError("full-circle arc must start where it ends")
        if not reproject:
            return Arc(circle, point(*start), point(*end), measure)
        return Arc(circle, s, s, TWO_PI)
    swept = norm_angle(direction(c, s) - direction(c, e))
    if abs(swept - measure) > max(tol.ang, tol.pos / circle.radius) * 10:
        raise OmegaCloudError(f"arc measure {measure} disagrees with endpoints ({swept})")
    if not reproject:
        return Arc(circle, point(*start), point(*end), measure)
    return Arc(circle, s, e, measure)


def inscribed_circle(u, v, omega: float, apex_side: int = LEFT) -> Circle:
    """Circle through ``u`` and ``v`` whose arc on ``apex_side`` of the
    directed chord u->v sees the chord under angle ``omega``."""
    if not 0.0 < omega < math.pi:
        raise OmegaCloudError(f"omega {omega} outside (0, pi)")
    chord = dist(u, v)
    scale = max(abs(u[0]), abs(u[1]), abs(v[0]), abs(v[1]), 1.0)
    if chord <= base_eps() * 1e-3 * scale:
        raise DegenerateChord("chord endpoints coincide")
    r = chord / (2.0 * math.sin(omega))
    # unit normal towards the apex side
    nx = -(v[1] - u[1]) / chord * apex_side
    ny = (v[0] - u[0]) / chord * apex_side
    h = r * math.cos(omega)
    return Circle(Point2(0.5 * (u[0] + v[0]) + nx * h, 0.5 * (u[1] + v[1]) + ny * h), r)


def second_on_line(c: Circle, p, angle: float) -> tuple:
    """Second intersection of the line through ``p`` (on ``c``) with direction
    ``angle``.  Returns the point and the signed ray parameter."""
    ux, uy = math.cos(angle), math.sin(angle)
    t = -2.0 * ((p[0] - c.center.x) * ux + (p[1] - c.center.y) * uy)
    return Point2(p[0] + t * ux, p[1] + t * uy), t


def second_circle_intersection(c1: Circle, c2: Circle, u, tol: Tolerance | None = None):
    """The other common point of two circles through ``u``.

    Returns ``(x, tangent)``; for tangent circles ``x`` is ``u`` itself.
    """
    if tol is None:
        tol = tolerance_for([c1.center, c2.center, u])
    if c1.same_as(c2, tol.pos):
        raise CoCircular("circles coincide")
    if not (c1.contains(u, tol.pos) and c2.contains(u, tol.pos)):
        raise PointNotShared("point does not lie on both circles")
    # reflect u across the line of centers
    a, b = c1.center, c2.center
    d = b - a
    dd = dot(d, d)
    w = Point2(u[0] - a.x, u[1] - a.y)
    k = dot(w, d) / dd
    foot = Point2(a.x + k * d.x, a.y + k * d.y)
    x = Point2(2.0 * foot.x - u[0], 2.0 * foot.y - u[1])
    if dist(x, u) <= tol.pos:
        return Point2(u[0], u[1]), True
    return x, False


# -- wedges -----------------------------------------------------------------

@dataclass(frozen=True)
class Wedge:
    apex: Point2
    direction: float
    aperture: float

    def __post_init__(self):
        if not 0.0 < self.aperture < math.pi:
            raise OmegaCloudError(f"wedge aperture {self.aperture} outside (0, pi)")

    @property
    def left_arm(self) -> float:
        return self.direction + 0.5 * self.aperture

    @property
    def right_arm(self) -> float:
        return self.direction - 0.5 * self.aperture


def wedge_circle_contacts(w: Wedge, c: Circle, tol: Tolerance | None = None):
    """Second intersections of the left and right arm with ``c``.

    The apex must lie on ``c``; returns ``(left_contact, right_contact)``.
    """
    if tol is None:
        tol = Tolerance(base_eps() * 2.0 * c.radius, base_eps())
    if not c.contains(w.apex, tol.pos):
        raise ApexNotOnCircle("wedge apex is not on the circle")
    left, tl = second_on_line(c, w.apex, w.left_arm)
    right, tr = second_on_line(c, w.apex, w.right_arm)
    if tl < -tol.pos or tr < -tol.pos:
        raise ArmMissesCircle("a wedge arm points away from the circle")
    return left, right


# -- polygons ---------------------------------------------------------------

@dataclass(frozen=True)
class ConvexPolygon:
    vertices: tuple

    def __len__(self):
        return len(self.vertices)

    @property
    def is_segment(self) -> bool:
        return len(self.vertices) == 2

    def diameter(self) -> float:
        return bbox_diameter(self.vertices)

    def internal_angle(self, i: int) -> float:
        return internal_angle(self, i)


def _signed_area2(pts) -> float:
    n = len(pts)
    return sum(cross(pts[i], pts[(i + 1) % n]) for i in range(n))


def validate_convex(points: Sequence) -> ConvexPolygon:
    """Check strict convexity and return the polygon in clockwise order.

    Counterclockwise input is reversed; collinear triples, reflex vertices,
    self-overlapping boundaries and repeated vertices are rejected.
    """
    if len(points) < 2:
        raise TooFewVertices(f"need at least 2 vertices, got {len(points)}")
    pts = [point(p[0], p[1]) for p in points]
    tol = tolerance_for(pts)
    n = len(pts)
    for i in range(n):
        if dist(pts[i], pts[(i + 1) % n]) <= tol.pos:
            raise DuplicateVertices(f"vertices {i} and {(i + 1) % n} coincide")
    if n == 2:
        return ConvexPolygon(tuple(pts))
    if _signed_area2(pts) > 0:
        pts.reverse()
    turning = 0.0
    for i in range(n):
        a, b, c = pts[i - 1], pts[i], pts[(i + 1) % n]
        e1, e2 = b - a, c - b
        s = cross(e1, e2)
        if s >= -tol.ang * math.hypot(*e1) * math.hypot(*e2):
            raise NotConvex(f"vertex {i} is not a strict clockwise turn")
        turning += math.atan2(s, dot(e1, e2))
    if abs(turning + TWO_PI) > 1e-6:
        raise NotConvex("boundary winds more than once")
    return ConvexPolygon(tuple(pts))


def internal_angle(p: ConvexPolygon, i: int) -> float:
    n = len(p.vertices)
    if n < 3:
        raise DegeneratePolygon("a segment has no internal angles")
    v = p.vertices
    return angle_at(v[i % n], v[(i - 1) % n], v[(i + 1) % n])
