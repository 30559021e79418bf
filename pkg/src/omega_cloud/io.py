"""JSON polygon and cloud files.

Floats go through ``json`` which writes the shortest repr that round-trips,
so ``load(save(x))`` is bit-exact.  Cloud files carry redundant fields
(center, radius, endpoints, measure); the loader checks that they agree
and that the arcs close up, but keeps the stored numbers unchanged.
"""

import json
import math

from .cloud import Cloud, Pivot, PivotKind, check_closure, cloud_tolerance
from .errors import OmegaCloudError
from .geometry import Circle, ConvexPolygon, Tolerance, make_arc, point, tolerance_for, validate_convex

FORMAT_VERSION = 1


class FormatError(OmegaCloudError):
    code = "format_error"


def _pair(v, what):
    if not (isinstance(v, (list, tuple)) and len(v) == 2):
        raise FormatError(f"{what} must be an [x, y] pair")
    return point(_num(v[0], what), _num(v[1], what))


def _num(v, what):
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise FormatError(f"{what} must be a number")
    v = float(v)
    if not math.isfinite(v):
        raise FormatError(f"{what} must be finite")
    return v


def _check_version(doc):
    if not isinstance(doc, dict):
        raise FormatError("top level must be an object")
    if doc.get("format-version") != FORMAT_VERSION:
        raise FormatError(f"unsupported format-version {doc.get('format-version')!r}")


def polygon_to_dict(p: ConvexPolygon) -> dict:
    return {"format-version": FORMAT_VERSION, "vertices": [[v.x, v.y] for v in p.vertices]}


def polygon_from_dict(doc) -> ConvexPolygon:
    _check_version(doc)
    verts = doc.get("vertices")
    if not isinstance(verts, list):
        raise FormatError("vertices must be a list")
    return validate_convex([_pair(v, "vertex") for v in verts])


def cloud_to_dict(c: Cloud) -> dict:
    return {
        "format-version": FORMAT_VERSION,
        "omega": c.omega,
        "maximal": bool(c.maximal),
        "arcs": [
            {
                "center": [a.circle.center.x, a.circle.center.y],
                "radius": a.circle.radius,
                "start": [a.start.x, a.start.y],
                "end": [a.end.x, a.end.y],
                "measure": a.measure,
            }
            for a in c.arcs
        ],
    }


def cloud_from_dict(doc) -> Cloud:
    _check_version(doc)
    omega = doc.get("omega")
    if omega is not None:
        omega = _num(omega, "omega")
    maximal = doc.get("maximal", False)
    if not isinstance(maximal, bool):
        raise FormatError("maximal must be a boolean")
    raw = doc.get("arcs")
    if not isinstance(raw, list) or not raw:
        raise FormatError("arcs must be a non-empty list")
    parsed = []
    for k, r in enumerate(raw):
        if not isinstance(r, dict):
            raise FormatError(f"arc {k} must be an object")
        try:
            parsed.append((_pair(r["center"], "center"), _num(r["radius"], "radius"),
                           _pair(r["start"], "start"), _pair(r["end"], "end"),
                           _num(r["measure"], "measure")))
        except KeyError as exc:
            raise FormatError(f"arc {k} lacks field {exc.args[0]}") from None
    pts = [q[2] for q in parsed] + [q[0] for q in parsed]
    base = tolerance_for(pts)
    # on-circle checks scale with the circle, not just the point spread
    arcs = []
    for k, (cen, r, s, e, m) in enumerate(parsed):
        tol = Tolerance(max(base.pos, 1e-9 * r) * 10, base.ang * 10)
        try:
            arcs.append(make_arc(Circle(cen, r), s, e, m, tol, reproject=False))
        except OmegaCloudError as exc:
            raise FormatError(f"arc {k}: {exc}") from None
    tol = cloud_tolerance(arcs)
    try:
        check_closure(arcs, tol)
    except OmegaCloudError as exc:
        raise FormatError(str(exc)) from None
    pivots = tuple(Pivot(a.start, PivotKind.UNKNOWN, i) for i, a in enumerate(arcs)) if len(arcs) > 1 else ()
    return Cloud(tuple(arcs), pivots, omega, maximal, tol)


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=1, allow_nan=False) + "\n"


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, ValueError) as exc:
        raise FormatError(f"cannot read {path}: {exc}") from None


def load_polygon(path) -> ConvexPolygon:
    return polygon_from_dict(_read(path))


def load_cloud(path) -> Cloud:
    return cloud_from_dict(_read(path))


def load_any(path):
    """Polygon or cloud, told apart by their keys."""
    doc = _read(path)
    if isinstance(doc, dict) and "arcs" in doc:
        return cloud_from_dict(doc)
    return polygon_from_dict(doc)


def save(path, doc: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(doc))
