"""Forward construction of the omega-cloud of a convex polygon.

The minimal wedge is swept by its left-arm outward normal ``phi``; its
right-arm outward normal is ``phi + pi - omega``.  Each arm touches the
vertex whose normal cone contains its normal, so contact changes happen at
the edge normals.  Merging the two (already sorted) event sequences gives
the arcs in clockwise order in linear time.  While ``phi`` decreases the
apex moves clockwise around the polygon and the wedge direction
``d = phi - omega/2 - pi/2`` decreases by half the measure of every arc
it traverses.
"""

import enum
import math
from dataclasses import dataclass, field, replace

from .errors import DegeneratePolygon, IdentityViolated, OmegaCloudError, TurnOutOfRange
from .geometry import (
    TWO_PI,
    Arc,
    Circle,
    ConvexPolygon,
    Point2,
    Tolerance,
    bbox_diameter,
    base_eps,
    dist,
    internal_angle,
    tolerance_for,
)


class PivotKind(str, enum.Enum):
    PLAIN = "plain"
    NARROW = "narrow"
    STRICTLY_NARROW = "strictly-narrow"
    HIDDEN = "hidden"
    UNKNOWN = "unknown"

    @property
    def narrow(self) -> bool:
        return self in (PivotKind.NARROW, PivotKind.STRICTLY_NARROW, PivotKind.HIDDEN)


@dataclass(frozen=True)
class Pivot:
    """Shared endpoint of ``arcs[index - 1]`` and ``arcs[index]``.

    ``vertex`` is the polygon vertex index for narrow pivots; ``d_in`` and
    ``d_out`` are the wedge directions on arrival and departure (equal
    unless the pivot is strictly narrow).  All three are only known for
    clouds built from a polygon.
    """
    location: Point2
    kind: PivotKind
    index: int
    vertex: int | None = None
    d_in: float | None = None
    d_out: float | None = None


@dataclass(frozen=True)
class Cloud:
    arcs: tuple
    pivots: tuple
    omega: float | None = None
    maximal: bool = False
    tol: Tolerance = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.tol is None:
            object.__setattr__(self, "tol", cloud_tolerance(self.arcs))

    def __len__(self):
        return len(self.arcs)

    @property
    def total_measure(self) -> float:
        return math.fsum(a.measure for a in self.arcs)

    @property
    def is_circle(self) -> bool:
        return len(self.arcs) == 1

    def point(self, arc: int, offset: float = 0.0) -> "CloudPoint":
        return CloudPoint(arc % len(self.arcs), offset, self.arcs[arc % len(self.arcs)].point_at(offset))


@dataclass(frozen=True)
class CloudPoint:
    """A point of a cloud given by its arc and the clockwise turn from the
    arc's start."""
    arc: int
    offset: float
    point: Point2


def cloud_tolerance(arcs) -> Tolerance:
    pts = []
    for a in arcs:
        pts.append(a.start)
        if a.is_full_circle or len(arcs) == 1:
            c, r = a.circle.center, a.circle.radius
            pts += [Point2(c.x - r, c.y - r), Point2(c.x + r, c.y + r)]
    return tolerance_for(pts)


def check_closure(arcs, tol: Tolerance) -> float:
    """Largest gap between consecutive arcs; raises if above tolerance."""
    worst = 0.0
    n = len(arcs)
    for i in range(n):
        gap = dist(arcs[i].end, arcs[(i + 1) % n].start)
        worst = max(worst, gap)
        if gap > tol.pos * 10:
            raise OmegaCloudError(f"arc {i} does not end where arc {(i + 1) % n} starts")
    return worst


# -- forward construction ---------------------------------------------------

def _edge_normals(verts):
    n = len(verts)
    out = []
    for j in range(n):
        a, b = verts[j], verts[(j + 1) % n]
        out.append(math.atan2(b.y - a.y, b.x - a.x) + 0.5 * math.pi)
    return out


def _window(values, top):
    """Map angles into (top - 2pi, top] and rotate so they are descending."""
    w = [top - math.fmod(math.fmod(top - v, TWO_PI) + TWO_PI, TWO_PI) for v in values]
    start = max(range(len(w)), key=w.__getitem__)
    return [(w[(start + k) % len(w)], (start + k) % len(w)) for k in range(len(w))]


def _apex(a: Point2, c: Circle, phi: float) -> Point2:
    # left arm has direction phi - pi/2 and passes through contact a
    ux, uy = math.sin(phi), -math.cos(phi)
    t = -2.0 * ((a.x - c.center.x) * ux + (a.y - c.center.y) * uy)
    return Point2(a.x + t * ux, a.y + t * uy)


def _arc_circle(a: Point2, b: Point2, omega: float) -> Circle:
    # apex lies to the left of the directed chord b -> a
    chord = math.hypot(a.x - b.x, a.y - b.y)
    r = chord / (2.0 * math.sin(omega))
    h = r * math.cos(omega) / chord
    return Circle(Point2(0.5 * (a.x + b.x) - (a.y - b.y) * h,
                         0.5 * (a.y + b.y) + (a.x - b.x) * h), r)


def omega_cloud(p: ConvexPolygon, omega: float) -> Cloud:
    """The omega-cloud of ``p`` with classified pivots, arcs clockwise.

    Arc 0 is the arc whose interior holds the apex of the wedge pointing
    along +x.  Segments (two vertices) are accepted.
    """
    if not 0.0 < omega < math.pi:
        raise OmegaCloudError(f"omega {omega} outside (0, pi)")
    verts = p.vertices
    n = len(verts)
    if n < 2:
        raise DegeneratePolygon("need at least two vertices")
    eps = base_eps()
    gap = math.pi - omega
    normals = _edge_normals(verts)
    phi0 = 0.5 * math.pi + 0.5 * omega

    left = _window(normals, phi0)
    right = _window([v - gap for v in normals], phi0)
    # contacts at phi0: the vertex after the first event's edge
    a = left[0][1]
    b = right[0][1]
    events = []
    i = j = 0
    while i < n or j < n:
        if j >= n or (i < n and left[i][0] >= right[j][0]):
            events.append((left[i][0], 0))
            i += 1
        else:
            events.append((right[j][0], 1))
            j += 1

    # group coincident events and record the contact pair after each group
    groups = []
    for val, side in events:
        if groups and groups[-1][0] - val <= eps:
            g = groups[-1]
        else:
            g = [val, 0, 0]
            groups.append(g)
        g[1 + side] += 1
    pairs = []
    for val, da, db in groups:
        a = (a + da) % n
        b = (b + db) % n
        pairs.append((a, b))

    # intervals in clockwise order: wrap interval first
    k = len(groups)
    intervals = [(groups[-1][0] + TWO_PI, groups[0][0], pairs[-1])]
    for m in range(1, k):
        intervals.append((groups[m - 1][0], groups[m][0], pairs[m - 1]))

    thetas = [None] * n
    if n >= 3:
        thetas = [internal_angle(p, v) for v in range(n)]

    raw = []          # (pair, phi_start, phi_end)
    stationary = []   # vertex stationary before raw[len(raw)] is emitted
    pending_vertex = None
    boundary = intervals[0][0]
    for hi, lo, (ca, cb) in intervals:
        if hi - lo <= eps:
            continue
        if ca == cb:
            pending_vertex = ca
            boundary = lo
            continue
        raw.append(((ca, cb), boundary, lo))
        stationary.append(pending_vertex)
        pending_vertex = None
        boundary = lo
    if pending_vertex is not None:
        stationary[0] = pending_vertex
    if not raw:
        raise DegeneratePolygon("cloud has no arcs")
    pair0, hi0, lo0 = raw[0]
    if hi0 == intervals[0][0]:
        # close the loop: the first arc starts where the sweep ended
        raw[0] = (pair0, boundary + TWO_PI, lo0)

    arcs = []
    dirs = []
    for (ca, cb), hi, lo in raw:
        va, vb = verts[ca], verts[cb]
        c = _arc_circle(va, vb, omega)
        arcs.append(Arc(c, _apex(va, c, hi), _apex(va, c, lo), 2.0 * (hi - lo)))
        dirs.append((hi - 0.5 * omega - 0.5 * math.pi, lo - 0.5 * omega - 0.5 * math.pi))

    tol = cloud_tolerance(arcs)
    m = len(arcs)
    pivots = []
    for idx in range(m):
        prev_pair = raw[idx - 1][0]
        next_pair = raw[idx][0]
        kind = PivotKind.PLAIN
        vertex = None
        if stationary[idx] is not None or prev_pair[0] == next_pair[1]:
            vertex = stationary[idx] if stationary[idx] is not None else prev_pair[0]
            theta = thetas[vertex] if thetas[vertex] is not None else 0.0
            kind = PivotKind.STRICTLY_NARROW if theta < omega - eps else PivotKind.NARROW
        if m > 1 and arcs[idx - 1].circle.same_as(arcs[idx].circle, tol.pos):
            kind = PivotKind.HIDDEN
        pivots.append(Pivot(arcs[idx].start, kind, idx, vertex,
                            dirs[idx - 1][1], dirs[idx][0]))
    return Cloud(tuple(arcs), tuple(pivots), omega, False, tol)


def maximal_cloud(c: Cloud) -> Cloud:
    """Merge consecutive co-circular arcs (drop hidden pivots)."""
    arcs = c.arcs
    n = len(arcs)
    tol = c.tol
    same = [arcs[i - 1].circle.same_as(arcs[i].circle, tol.pos) for i in range(n)]
    if n == 1 or all(same):
        a0 = arcs[0]
        full = Arc(a0.circle, a0.start, a0.start, TWO_PI)
        return Cloud((full,), (), c.omega, True, tol)
    first = same.index(False)
    merged = []
    kept = []
    contains_zero = 0
    for k in range(n):
        i = (first + k) % n
        if same[i]:
            prev = merged[-1]
            merged[-1] = Arc(prev.circle, prev.start, arcs[i].end, prev.measure + arcs[i].measure)
        else:
            merged.append(arcs[i])
            kept.append(c.pivots[i] if c.pivots else None)
        if i == 0:
            contains_zero = len(merged) - 1
    merged = merged[contains_zero:] + merged[:contains_zero]
    kept = kept[contains_zero:] + kept[:contains_zero]
    pivots = []
    for idx, pv in enumerate(kept):
        if pv is None:
            pivots.append(Pivot(merged[idx].start, PivotKind.UNKNOWN, idx))
        else:
            pivots.append(replace(pv, index=idx))
    return Cloud(tuple(merged), tuple(pivots), c.omega, True, tol)


# -- turn arithmetic --------------------------------------------------------

def locate(c: Cloud, p, arc: int | None = None) -> CloudPoint:
    """CloudPoint for a location ``p`` on the cloud (optionally on a known arc)."""
    candidates = [arc] if arc is not None else range(len(c.arcs))
    best = None
    for i in candidates:
        a = c.arcs[i]
        off = a.offset_of(p)
        if off > a.measure:
            # outside the arc: snap to the nearer endpoint
            off = a.measure if off - a.measure < TWO_PI - off else 0.0
        q = a.point_at(off)
        d = dist(q, p)
        if best is None or d < best[0]:
            best = (d, i, off, q)
    d, i, off, q = best
    if d > c.tol.pos * 10 and arc is None:
        raise OmegaCloudError(f"point {tuple(p)} is not on the cloud")
    return CloudPoint(i, off, q)


def turn(c: Cloud, s: CloudPoint, t: CloudPoint, full: bool = False) -> float:
    """Total angular measure met going clockwise from ``s`` to ``t``.

    With ``full=True`` and ``s == t`` the whole loop is measured.
    """
    n = len(c.arcs)
    eps = c.tol.ang
    if s.arc == t.arc and t.offset >= s.offset - eps and not (full and abs(t.offset - s.offset) <= eps):
        return max(0.0, t.offset - s.offset)
    total = c.arcs[s.arc].measure - s.offset
    i = (s.arc + 1) % n
    while i != t.arc:
        total += c.arcs[i].measure
        i = (i + 1) % n
    return total + t.offset


def point_at_turn(c: Cloud, s: CloudPoint, tau: float) -> CloudPoint:
    """The point reached after turning ``tau`` clockwise from ``s``.

    Lands exactly on a pivot when ``tau`` hits an arc boundary.
    """
    eps = c.tol.ang
    total = c.total_measure
    if tau < -eps or tau > total + eps * len(c.arcs):
        raise TurnOutOfRange(f"turn {tau} outside [0, {total}]")
    n = len(c.arcs)
    i, off = s.arc, s.offset
    remaining = max(tau, 0.0)
    for _ in range(n + 1):
        room = c.arcs[i].measure - off
        if remaining < room - eps:
            off += remaining
            return CloudPoint(i, off, c.arcs[i].point_at(off))
        remaining -= room
        i = (i + 1) % n
        off = 0.0
        if remaining <= eps:
            return CloudPoint(i, 0.0, c.arcs[i].start)
    return CloudPoint(s.arc, s.offset, s.point)


@dataclass(frozen=True)
class MeasureReport:
    total: float
    expected: float
    deficits: dict
    ok: bool


def total_measure_check(c: Cloud, p: ConvexPolygon, omega: float, tol: float = 1e-9) -> MeasureReport:
    """Compare the cloud's total measure with 2(2pi - sum of narrow deficits).

    ``deficits`` maps every narrow vertex to ``omega - theta``.
    """
    n = len(p.vertices)
    deficits = {}
    for v in range(n):
        theta = internal_angle(p, v) if n >= 3 else 0.0
        if theta <= omega + base_eps():
            deficits[v] = max(0.0, omega - theta)
    expected = 2.0 * (TWO_PI - math.fsum(deficits.values()))
    total = c.total_measure
    ok = abs(total - expected) <= tol
    if not ok:
        raise IdentityViolated(f"total measure {total} != {expected}")
    return MeasureReport(total, expected, deficits, ok)
