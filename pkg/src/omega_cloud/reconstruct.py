"""Recover a convex polygon from its maximal omega-cloud.

Two entry points: :func:`reconstruct_aware` when the wedge angle is known,
and :func:`reconstruct_oblivious` when it is only known to be below pi/2.
Both walk the arc sequence with a constant number of cursors; the only
growing state is the list of strictly narrow pivots, whose length is
bounded by ``2pi / (pi - omega)``.
"""

import math
from dataclasses import dataclass, field
from typing import NamedTuple

from .cloud import Cloud, CloudPoint, maximal_cloud, omega_cloud, turn
from .errors import (
    AmbiguousOmega,
    CertificationFailed,
    ContactOffCircle,
    InvalidCloud,
    NonClosing,
    NotASegment,
    OmegaCloudError,
    SingleCircleAmbiguous,
    StrictNarrowEncountered,
)
from .geometry import (
    TWO_PI,
    ConvexPolygon,
    Point2,
    angle_at,
    cross,
    bbox_diameter,
    direction,
    dist,
    second_circle_intersection,
    second_on_line,
    validate_convex,
)
from .oracle import MatchReport, match_clouds

CERT_TOL = 1e-6
REFINE_TOL = 1e-6


class Line(NamedTuple):
    point: Point2
    direction: float


@dataclass(frozen=True)
class NarrowRecord:
    """A strictly narrow pivot with the lines of its two polygon edges.

    ``left_line`` carries the edge after the pivot (the left arm of the
    departing wedge), ``right_line`` the edge before it (the right arm of
    the arriving wedge).  Both directions point away from the pivot.
    """
    pivot: CloudPoint
    left_line: Line
    right_line: Line

    @property
    def location(self) -> Point2:
        return self.pivot.point


@dataclass
class Stats:
    pivot_visits: int = 0
    trailing_steps: int = 0
    working_set: int = 0


@dataclass
class FirstPass:
    records: list
    terminal: CloudPoint
    trailing: CloudPoint
    stats: Stats = field(default_factory=Stats)


@dataclass(frozen=True)
class ReconstructionResult:
    polygon: ConvexPolygon
    omega: float
    certified: bool
    pivot_visits: int = 0
    trailing_steps: int = 0
    working_set: int = 0
    narrow_count: int = 0
    match: MatchReport | None = None


def _check_omega(omega: float) -> float:
    omega = float(omega)
    if not 0.0 < omega < math.pi:
        raise OmegaCloudError(f"omega {omega} outside (0, pi)")
    return omega


def _walk(c: Cloud, cp: CloudPoint, amount: float):
    """Move ``amount`` clockwise from ``cp``; returns (point, pivots passed)."""
    arcs = c.arcs
    n = len(arcs)
    eps = c.tol.ang
    i, off = cp.arc, cp.offset
    steps = 0
    remaining = amount
    while True:
        room = arcs[i].measure - off
        if remaining < room - eps:
            off += remaining
            return CloudPoint(i, off, arcs[i].point_at(off)), steps
        remaining -= room
        i = (i + 1) % n
        off = 0.0
        steps += 1
        if remaining <= eps:
            return CloudPoint(i, 0.0, arcs[i].start), steps
        if steps > 2 * n:
            raise InvalidCloud("turn exceeds the length of the cloud")


def _walk_back(c: Cloud, arc: int, amount: float):
    """The point ``amount`` before the start of ``arc``."""
    arcs = c.arcs
    n = len(arcs)
    eps = c.tol.ang
    i = arc
    steps = 0
    remaining = amount
    while True:
        i = (i - 1) % n
        steps += 1
        m = arcs[i].measure
        if remaining < m - eps:
            off = m - remaining
            return CloudPoint(i, off, arcs[i].point_at(off)), steps
        remaining -= m
        if remaining <= eps:
            return CloudPoint(i, 0.0, arcs[i].start), steps
        if steps > n:
            raise InvalidCloud("turn exceeds the length of the cloud")


def _multiple(measure: float, unit: float, eps: float) -> int:
    """``t`` when ``measure`` is t whole units (t >= 1), else 0."""
    t = round(measure / unit)
    if t >= 1 and abs(measure - t * unit) <= t * eps:
        return t
    return 0


def _passes_through(c: Cloud, arc_index: int, p: Point2, chord: float) -> bool:
    circ = c.arcs[arc_index].circle
    # tolerance shrinks with the chord so tiny arcs are not misread
    tol = min(c.tol.pos, max(1e-6 * chord, 1e-13 * circ.radius))
    return abs(dist(p, circ.center) - circ.radius) <= tol


def first_pass(c: Cloud, omega: float) -> FirstPass:
    """Find the strictly narrow pivots that are not hidden.

    Pivots are examined from arc 0 onwards with a trailing point ``v``
    kept ``2(pi - omega)`` behind the current pivot ``u``.  Every pivot is
    either classified once or skipped by a jump that provably passes no
    narrow pivot.
    """
    omega = _check_omega(omega)
    arcs = c.arcs
    n = len(arcs)
    if n < 2:
        raise SingleCircleAmbiguous("a single circle does not determine the polygon")
    eps = c.tol.ang
    span = 2.0 * (math.pi - omega)
    stats = Stats()

    u = CloudPoint(0, 0.0, arcs[0].start)
    v, back = _walk_back(c, 0, span)
    stats.trailing_steps += back
    records = []
    steps = 0

    def advance(u, v, amount):
        nonlocal steps
        u2, k = _walk(c, u, amount)
        v2, kv = _walk(c, v, amount)
        steps += k
        stats.pivot_visits += k
        stats.trailing_steps += kv
        return u2, v2

    def record_if_strict(u, v, w):
        if angle_at(u.point, v.point, w.point) < omega - eps:
            records.append(NarrowRecord(
                u,
                Line(u.point, direction(u.point, w.point)),
                Line(u.point, direction(u.point, v.point)),
            ))
            stats.working_set = max(stats.working_set, len(records) + 2)

    stats.working_set = 2
    while steps < n:
        if u.offset > 0.0:
            u, v = advance(u, v, arcs[u.arc].measure - u.offset)
            continue
        i = u.arc
        g = arcs[i].measure
        t = _multiple(g, span, eps)
        if t == 1:
            # (b) the following arc spans exactly one turn unit
            w = CloudPoint((i + 1) % n, 0.0, arcs[(i + 1) % n].start)
            record_if_strict(u, v, w)
            v = u
            u, _ = advance(u, u, g)
        elif t > 1:
            # (c) a run of co-circular arcs joined at hidden pivots
            w = CloudPoint(i, span, arcs[i].point_at(span))
            record_if_strict(u, v, w)
            v = CloudPoint(i, g - span, arcs[i].point_at(g - span))
            u = CloudPoint((i + 1) % n, 0.0, arcs[(i + 1) % n].start)
            steps += 1
            stats.pivot_visits += 1
        elif g < span:
            chord = dist(arcs[i].start, arcs[i].end)
            if _passes_through(c, (i + 1) % n, u.point, chord):
                # (a-i) narrow: jump one turn unit ahead
                w, k = _walk(c, u, span)
                record_if_strict(u, v, w)
                v = u
                u = w
                steps += k
                stats.pivot_visits += k
            else:
                # (a-ii) not narrow
                u, v = advance(u, v, g)
        else:
            raise InvalidCloud(
                f"arc {i} has measure {g:.12g}, above 2(pi - omega) = {span:.12g} "
                "and not a whole multiple of it")
    return FirstPass(records, u, v, stats)


def _contacts(c: Cloud, i: int, off: float, seg: float, d: float, omega: float):
    arc = c.arcs[i]
    mid = arc.point_at(off + 0.5 * seg)
    dm = d - 0.25 * seg
    a, ta = second_on_line(arc.circle, mid, dm + 0.5 * omega)
    b, tb = second_on_line(arc.circle, mid, dm - 0.5 * omega)
    if ta < -c.tol.pos or tb < -c.tol.pos:
        raise ContactOffCircle(f"wedge arm misses the circle of arc {i}")
    return a, b


def _dedup(points, tol):
    out = []
    for p in points:
        if not out or dist(out[-1], p) > tol:
            out.append(p)
    return out


def chain_reconstruct(c: Cloud, u: CloudPoint, v: CloudPoint, dir_r_u: float, omega: float,
                      full: bool = False, stats: Stats | None = None) -> list:
    """Vertices touched while the apex runs from ``u`` to ``v``.

    ``dir_r_u`` is the direction of the departing wedge at ``u``.  The
    portion must hold no strictly narrow pivot.  With ``full=True`` and
    ``u == v`` the whole loop is traversed.  Vertices come out clockwise,
    each once.
    """
    omega = _check_omega(omega)
    arcs = c.arcs
    n = len(arcs)
    eps = c.tol.ang
    span = 2.0 * (math.pi - omega)
    merge = 100.0 * c.tol.pos
    check = CERT_TOL * bbox_diameter([a.start for a in arcs])
    pairs = []

    def on_arm(q, p1, p2):
        return abs(cross(p1 - q, p2 - q)) <= check * max(dist(p1, q), dist(p2, q), check)

    def push(a, b, q):
        if pairs:
            pa, pb = pairs[-1]
            if not (dist(pa, a) <= check or dist(pb, b) <= check or dist(pa, b) <= check
                    # both arms leave their vertices at one pivot
                    or (on_arm(q, pa, a) and on_arm(q, pb, b))):
                raise StrictNarrowEncountered("wedge contacts jump between consecutive arcs")
        pairs.append((a, b))

    d = dir_r_u
    i, off = u.arc, u.offset
    first = True
    while True:
        arc = arcs[i]
        last = i == v.arc and v.offset >= off - eps and not (first and full)
        end = v.offset if last else arc.measure
        seg = end - off
        if seg > eps:
            t = _multiple(arc.measure, span, eps) if arc.measure > span + eps else 1
            if arc.measure > span + eps:
                if t < 2:
                    raise InvalidCloud(f"arc {i} exceeds 2(pi - omega) without being a multiple")
                if off > eps or end < arc.measure - eps:
                    raise InvalidCloud("portion starts or ends inside a hidden-pivot run")
                pts = [arc.start] + [arc.point_at(k * span) for k in range(1, t)] + [arc.end]
                for k in range(t):
                    push(pts[k + 1], pts[k], pts[k])
                d = direction(pts[-1], pts[-2]) + 0.5 * omega
            else:
                push(*_contacts(c, i, off, seg, d, omega), arc.point_at(off))
                d -= 0.5 * seg
        if last:
            break
        i = (i + 1) % n
        off = 0.0
        first = False
        if stats is not None:
            stats.pivot_visits += 1

    if not pairs:
        return []
    right = _dedup([b for _, b in pairs], merge)
    left = _dedup([a for a, _ in pairs], merge)
    out = []
    for p in right:
        if dist(p, left[0]) <= merge:
            break
        out.append(p)
    out.append(left[0])
    for p in left[1:]:
        if dist(p, right[0]) <= merge:
            break
        out.append(p)
    return out


def second_pass(c: Cloud, omega: float, first: FirstPass) -> list:
    """Assemble the polygon from the portions between strictly narrow pivots."""
    omega = _check_omega(omega)
    arcs = c.arcs
    n = len(arcs)
    span = 2.0 * (math.pi - omega)
    records = first.records
    stats = first.stats
    if not records:
        x, xp = first.terminal, first.trailing
        d = direction(x.point, xp.point) + 0.5 * omega
        return chain_reconstruct(c, x, x, d, omega, full=True, stats=stats)
    k = len(records)
    out = []
    for idx, rec in enumerate(records):
        nxt = records[(idx + 1) % k]
        i = rec.pivot.arc
        t = _multiple(arcs[i].measure, span, c.tol.ang)
        if k > 1 and nxt.pivot.arc == (i + 1) % n and t >= 1:
            # one maximal arc: its hidden vertices are equally spaced
            out.append(rec.location)
            out.extend(arcs[i].point_at(j * span) for j in range(1, t))
            stats.pivot_visits += 1
            continue
        d = rec.left_line.direction - 0.5 * omega
        pts = chain_reconstruct(c, rec.pivot, nxt.pivot, d, omega, full=(k == 1), stats=stats)
        if k > 1:
            if not pts or dist(pts[-1], nxt.location) > CERT_TOL * bbox_diameter([a.start for a in arcs]):
                raise NonClosing("portion does not end at the next narrow pivot")
            pts = pts[:-1]
        out.extend(pts)
    return out


def certify(polygon: ConvexPolygon, omega: float, c: Cloud) -> MatchReport:
    """Recompute the maximal cloud of ``polygon`` and compare it with ``c``."""
    fwd = maximal_cloud(omega_cloud(polygon, omega))
    diam = bbox_diameter([a.start for a in c.arcs] + [a.circle.center for a in c.arcs])
    return match_clouds(fwd, c, CERT_TOL * diam, CERT_TOL)


def _polygon(points) -> ConvexPolygon:
    if len(points) < 2:
        raise InvalidCloud(f"reconstruction produced {len(points)} vertices")
    try:
        return validate_convex(points)
    except OmegaCloudError as exc:
        raise CertificationFailed(f"reconstructed vertices are not a convex polygon: {exc}") from exc


def _finish(c, omega, points, do_certify, stats, narrow_count):
    polygon = _polygon(points)
    report = None
    if do_certify:
        report = certify(polygon, omega, c)
        if not report.verdict:
            raise CertificationFailed(
                f"cloud of the reconstruction differs (position error {report.max_vertex_error:.3g}, "
                f"arc error {report.max_arc_error:.3g})")
    return ReconstructionResult(polygon, omega, report is not None, stats.pivot_visits,
                                stats.trailing_steps, stats.working_set, narrow_count, report)


def reconstruct_aware(c: Cloud, omega: float, certify: bool = True) -> ReconstructionResult:
    """Reconstruct the polygon whose maximal omega-cloud is ``c``."""
    omega = _check_omega(omega)
    c = maximal_cloud(c)
    if len(c.arcs) < 2:
        raise SingleCircleAmbiguous("a single circle does not determine the polygon")
    try:
        first = first_pass(c, omega)
        points = second_pass(c, omega, first)
        return _finish(c, omega, points, certify, first.stats, len(first.records))
    except OmegaCloudError:
        better = refine_omega(c, omega)
        if better is None or better == omega:
            raise
    first = first_pass(c, better)
    points = second_pass(c, better, first)
    return _finish(c, better, points, certify, first.stats, len(first.records))


def refine_omega(c: Cloud, omega: float, tol: float = REFINE_TOL) -> float | None:
    """Wedge angle implied by arcs that are near-multiples of ``2(pi - omega)``.

    Lets a rounded angle (say, typed with seven decimals) still reconstruct.
    """
    span = 2.0 * (math.pi - omega)
    found = []
    for arc in c.arcs:
        t = round(arc.measure / span)
        if t >= 1 and abs(arc.measure - t * span) <= t * tol:
            found.append(math.pi - arc.measure / (2 * t))
    if not found:
        return None
    return math.fsum(found) / len(found)


# -- omega unknown ----------------------------------------------------------

def _ray_hit(c: Cloud, origin: Point2, angle: float, skip: float):
    """First point of the cloud hit by the ray, as (arc, offset)."""
    ux, uy = math.cos(angle), math.sin(angle)
    best = None
    for i, arc in enumerate(c.arcs):
        cen = arc.circle.center
        fx, fy = origin.x - cen.x, origin.y - cen.y
        b = fx * ux + fy * uy
        disc = b * b - (fx * fx + fy * fy - arc.circle.radius ** 2)
        if disc < 0.0:
            continue
        root = math.sqrt(disc)
        for t in (-b - root, -b + root):
            if t <= skip or (best is not None and t >= best[0]):
                continue
            q = Point2(origin.x + t * ux, origin.y + t * uy)
            off = arc.offset_of(q)
            if off <= arc.measure + c.tol.ang:
                best = (t, i, min(off, arc.measure))
    return best


def _try_normal_pivot(c: Cloud, i: int, total: float):
    """Wedge angle and departing direction at non-narrow pivot ``i``."""
    arcs = c.arcs
    u = arcs[i].start
    try:
        x, tangent = second_circle_intersection(arcs[i - 1].circle, arcs[i].circle, u, c.tol)
    except OmegaCloudError:
        return None
    if tangent:
        return None
    arm = direction(u, x)
    hit = _ray_hit(c, u, arm, 100.0 * c.tol.pos)
    if hit is None:
        return None
    _, j, off = hit
    ahead = turn(c, CloudPoint(i, 0.0, u), CloudPoint(j, off, arcs[j].point_at(off)))
    # left arm: the hit lies one turn unit ahead; right arm: one unit behind
    w_left = math.pi - 0.5 * ahead
    w_right = math.pi - 0.5 * (total - ahead)
    if 0.0 < w_left < 0.5 * math.pi:
        return w_left, arm - 0.5 * w_left
    if 0.0 < w_right < 0.5 * math.pi:
        return w_right, arm + 0.5 * w_right
    return None


def reconstruct_oblivious(c: Cloud, certify: bool = True, attempts: int = 4) -> ReconstructionResult:
    """Reconstruct polygon and wedge angle, knowing only that omega < pi/2."""
    c = maximal_cloud(c)
    arcs = c.arcs
    n = len(arcs)
    if n < 2:
        raise InvalidCloud("a circle is not the cloud of any polygon for omega < pi/2")
    eps = c.tol.ang
    stats = Stats(working_set=3)

    # total measure and the equal-measure test
    total = math.fsum(a.measure for a in arcs)
    equal = all(abs(a.measure - arcs[0].measure) <= 10 * eps for a in arcs)
    stats.pivot_visits += n
    # runs of arcs whose circles pass through the run's opening pivot
    omegas = []
    i = 0
    while i < n:
        stats.pivot_visits += 1
        j = i + 1
        run = arcs[i].measure
        chord = dist(arcs[i].start, arcs[i].end)
        while j - i < n and _passes_through(c, j % n, arcs[i].start, chord):
            run += arcs[j % n].measure
            stats.pivot_visits += 1
            j += 1
        if j - i >= n:
            # every circle meets one pivot: only a segment does that
            omegas = []
            break
        if j - i >= 2:
            omegas.append(math.pi - 0.5 * run)
        i = max(j, i + 1) if j - i >= 2 else i + 1
    stats.working_set = max(stats.working_set, 3 + len(omegas))

    def run_aware(omega):
        res = reconstruct_aware(c, omega, certify=certify)
        return ReconstructionResult(res.polygon, res.omega, res.certified,
                                    res.pivot_visits + stats.pivot_visits,
                                    res.trailing_steps, max(res.working_set, stats.working_set),
                                    res.narrow_count, res.match)

    def all_narrow():
        omega = math.pi - 0.5 * arcs[0].measure
        if not (equal and 0.0 < omega < 0.5 * math.pi):
            return None
        return _finish(c, omega, [a.start for a in arcs], certify, stats, n)

    if omegas:
        lo, hi = min(omegas), max(omegas)
        if hi - lo > 1e-7:
            raise AmbiguousOmega(f"runs imply different wedge angles ({lo:.12g} .. {hi:.12g})")
        omega = math.fsum(omegas) / len(omegas)
        if not 0.0 < omega < 0.5 * math.pi:
            raise InvalidCloud(f"recovered omega {omega:.12g} is not below pi/2")
        return run_aware(omega)

    if abs(total - 2.0 * TWO_PI) <= max(n, 4) * eps:
        res = None
        if equal:
            try:
                res = all_narrow()
            except OmegaCloudError:
                res = None
        if res is not None:
            return res
        last_error = None
        for i in range(min(attempts, n)):
            found = _try_normal_pivot(c, i, total)
            stats.pivot_visits += n
            if found is None:
                continue
            omega, d = found
            start = CloudPoint(i, 0.0, arcs[i].start)
            try:
                pts = chain_reconstruct(c, start, start, d, omega, full=True, stats=stats)
                return _finish(c, omega, pts, certify, stats, 0)
            except OmegaCloudError as exc:
                last_error = exc
        if last_error is not None:
            raise last_error
        raise InvalidCloud("no pivot yields a consistent wedge placement")

    res = all_narrow()
    if res is None:
        raise NotASegment("every pivot is narrow but the arcs do not form a segment's cloud")
    return res
