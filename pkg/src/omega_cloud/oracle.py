"""Brute-force reference machinery.

Nothing here shares code with the sweep in :mod:`omega_cloud.cloud`: the
minimal wedge is found directly from support vertices at a given
direction, which makes these functions usable as an independent check.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import GenerationFailed, OmegaCloudError
from .geometry import TWO_PI, ConvexPolygon, Point2, Wedge, base_eps, bbox_diameter, validate_convex


def _support(verts: np.ndarray, normal_angle: float) -> int:
    proj = verts @ np.array([math.cos(normal_angle), math.sin(normal_angle)])
    top = proj.max()
    ties = np.flatnonzero(proj >= top - 1e-12 * (1.0 + abs(top)))
    if len(ties) == 1:
        return int(ties[0])
    # tie: take the clockwise-later vertex of the touching edge
    n = len(verts)
    s = set(int(t) for t in ties)
    for t in ties:
        if (int(t) + 1) % n not in s:
            return int(t)
    return int(ties[-1])


def minimal_wedge_at_direction(p: ConvexPolygon, d: float, omega: float) -> Wedge:
    """The minimal omega-wedge of ``p`` whose bisector points along ``d``."""
    if not 0.0 < omega < math.pi:
        raise OmegaCloudError(f"omega {omega} outside (0, pi)")
    verts = np.asarray(p.vertices, dtype=float)
    alpha = d + 0.5 * omega
    beta = d - 0.5 * omega
    a = verts[_support(verts, alpha + 0.5 * math.pi)]
    b = verts[_support(verts, beta - 0.5 * math.pi)]
    ua = np.array([math.cos(alpha), math.sin(alpha)])
    ub = np.array([math.cos(beta), math.sin(beta)])
    # a - s*ua = b - t*ub
    m = np.column_stack([-ua, ub])
    s, _ = np.linalg.solve(m, b - a)
    apex = a - s * ua
    return Wedge(Point2(float(apex[0]), float(apex[1])), d, omega)


def sampled_cloud(p: ConvexPolygon, omega: float, m: int) -> np.ndarray:
    """Apices of the minimal wedges at ``m`` evenly spaced directions.

    Vectorised over directions; returns an ``(m, 2)`` array.
    """
    if m < 3:
        raise OmegaCloudError("need at least 3 sample directions")
    verts = np.asarray(p.vertices, dtype=float)
    d = np.arange(m) * (TWO_PI / m)
    alpha = d + 0.5 * omega
    beta = d - 0.5 * omega
    na = np.stack([np.cos(alpha + 0.5 * math.pi), np.sin(alpha + 0.5 * math.pi)], axis=1)
    nb = np.stack([np.cos(beta - 0.5 * math.pi), np.sin(beta - 0.5 * math.pi)], axis=1)
    ha = (na @ verts.T).max(axis=1)
    hb = (nb @ verts.T).max(axis=1)
    # intersect the two supporting lines  na.x = ha,  nb.x = hb
    det = na[:, 0] * nb[:, 1] - na[:, 1] * nb[:, 0]
    x = (ha * nb[:, 1] - hb * na[:, 1]) / det
    y = (na[:, 0] * hb - nb[:, 0] * ha) / det
    return np.stack([x, y], axis=1)


def distance_to_cloud(points: np.ndarray, cloud) -> np.ndarray:
    """Distance from each point to the nearest arc of ``cloud``."""
    pts = np.asarray(points, dtype=float)
    best = np.full(len(pts), np.inf)
    for arc in cloud.arcs:
        c = arc.circle
        cx, cy = c.center
        dx = pts[:, 0] - cx
        dy = pts[:, 1] - cy
        radial = np.abs(np.hypot(dx, dy) - c.radius)
        s0 = math.atan2(arc.start.y - cy, arc.start.x - cx)
        off = np.mod(s0 - np.arctan2(dy, dx), TWO_PI)
        inside = off <= arc.measure
        de = np.minimum(np.hypot(pts[:, 0] - arc.start.x, pts[:, 1] - arc.start.y),
                        np.hypot(pts[:, 0] - arc.end.x, pts[:, 1] - arc.end.y))
        best = np.minimum(best, np.where(inside, radial, de))
    return best


def random_convex_polygon(n: int, seed: int, retries: int = 100) -> ConvexPolygon:
    """Deterministic random convex n-gon inscribed in a random ellipse.

    Small ``n`` use i.i.d. sorted angles; large ``n`` use one jittered angle
    per equal sector so that vertices stay separated.
    """
    if not 3 <= n <= 100_000:
        raise OmegaCloudError(f"n={n} outside [3, 100000]")
    rng = np.random.default_rng(seed)
    eps = base_eps()
    for _ in range(retries):
        if n <= 256:
            t = np.sort(rng.uniform(0.0, TWO_PI, n))
        else:
            t = (np.arange(n) + rng.uniform(0.05, 0.95, n)) * (TWO_PI / n)
        rx, ry = rng.uniform(0.5, 2.0, 2)
        rot = rng.uniform(0.0, TWO_PI)
        cx, cy = rng.uniform(-1.0, 1.0, 2)
        x = rx * np.cos(t)
        y = ry * np.sin(t)
        cr, sr = math.cos(rot), math.sin(rot)
        xs = cx + cr * x - sr * y
        ys = cy + sr * x + cr * y
        # clockwise order
        pts = np.stack([xs, ys], axis=1)[::-1]
        e = np.roll(pts, -1, axis=0) - pts
        lengths = np.hypot(e[:, 0], e[:, 1])
        diam = bbox_diameter(pts.tolist())
        if lengths.min() < 1e-4 * diam * (64.0 / max(n, 64)):
            continue
        prev = np.roll(e, 1, axis=0)
        turn = np.arctan2(prev[:, 0] * e[:, 1] - prev[:, 1] * e[:, 0],
                          (prev * e).sum(axis=1))
        theta = math.pi + turn
        if theta.min() <= eps or theta.max() >= math.pi - eps:
            continue
        try:
            return validate_convex([tuple(map(float, q)) for q in pts])
        except OmegaCloudError:
            continue
    raise GenerationFailed(f"could not generate a convex {n}-gon")


def sample_omega(p: ConvexPolygon, rng, lo: float, hi: float, gap: float = 1e-4, tries: int = 1000) -> float:
    """Wedge angle in (lo, hi) kept ``gap`` away from knife edges.

    Avoids every internal angle of ``p`` and every pi(1 - 1/k), k <= 64,
    where narrow or hidden classification would hinge on rounding.
    """
    n = len(p.vertices)
    bad = [math.pi * (1.0 - 1.0 / k) for k in range(2, 65)]
    if n >= 3:
        v = np.asarray(p.vertices, dtype=float)
        e1 = np.roll(v, 1, axis=0) - v
        e2 = np.roll(v, -1, axis=0) - v
        cr = np.abs(e1[:, 0] * e2[:, 1] - e1[:, 1] * e2[:, 0])
        bad.extend(np.arctan2(cr, (e1 * e2).sum(axis=1)).tolist())
    bad = np.asarray(bad)
    for _ in range(tries):
        w = float(rng.uniform(lo, hi))
        if np.abs(bad - w).min() >= gap:
            return w
    raise GenerationFailed("no wedge angle clear of degeneracies")


@dataclass(frozen=True)
class MatchReport:
    max_vertex_error: float
    max_arc_error: float
    verdict: bool


def match_polygons(p: ConvexPolygon, q: ConvexPolygon, tol: float) -> MatchReport:
    """Compare vertex lists up to a cyclic shift."""
    a, b = p.vertices, q.vertices
    if len(a) != len(b):
        return MatchReport(math.inf, 0.0, False)
    n = len(a)
    shift = min(range(n), key=lambda k: math.dist(a[k], b[0]))
    err = max(math.dist(a[(k + shift) % n], b[k]) for k in range(n))
    return MatchReport(err, 0.0, err <= tol)


def match_clouds(c1, c2, tol_pos: float, tol_ang: float) -> MatchReport:
    """Compare two clouds arc by arc up to a cyclic shift.

    Vertex error covers endpoints and centers, arc error covers radii and
    measures.
    """
    a, b = c1.arcs, c2.arcs
    if len(a) != len(b):
        return MatchReport(math.inf, math.inf, False)
    n = len(a)
    shift = min(range(n), key=lambda k: math.dist(a[k].start, b[0].start))
    pos_err = 0.0
    arc_err = 0.0
    for k in range(n):
        x, y = a[(k + shift) % n], b[k]
        pos_err = max(pos_err, math.dist(x.start, y.start), math.dist(x.end, y.end),
                      math.dist(x.circle.center, y.circle.center))
        arc_err = max(arc_err, abs(x.measure - y.measure),
                      abs(x.circle.radius - y.circle.radius) / max(y.circle.radius, 1e-300))
    return MatchReport(pos_err, arc_err, pos_err <= tol_pos and arc_err <= tol_ang)
