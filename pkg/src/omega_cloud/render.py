"""SVG figures of polygons and clouds.

The polygon is filled, cloud arcs are bold, pivots are small disks and the
supporting circles are thin.  Output is deterministic: numbers are printed
with six decimals and elements appear in input order.
"""

import math

from .cloud import Cloud
from .errors import OmegaCloudError
from .geometry import ConvexPolygon

PAD = 0.08


def _f(x: float) -> str:
    s = f"{x:.6f}"
    return "0.000000" if s == "-0.000000" else s


def _arc_path(arc) -> str:
    c, r = arc.circle.center, arc.circle.radius
    if arc.is_full_circle:
        a = arc.start
        b = arc.point_at(math.pi)
        return (f"M {_f(a.x)} {_f(a.y)} A {_f(r)} {_f(r)} 0 0 0 {_f(b.x)} {_f(b.y)} "
                f"A {_f(r)} {_f(r)} 0 0 0 {_f(a.x)} {_f(a.y)}")
    large = 1 if arc.measure > math.pi else 0
    s, e = arc.start, arc.end
    return f"M {_f(s.x)} {_f(s.y)} A {_f(r)} {_f(r)} 0 {large} 0 {_f(e.x)} {_f(e.y)}"


def _extent(items):
    pts = []
    for it in items:
        if isinstance(it, ConvexPolygon):
            pts.extend(it.vertices)
        else:
            for arc in it.arcs:
                k = 16
                pts.extend(arc.point_at(arc.measure * j / k) for j in range(k + 1))
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    return min(xs), min(ys), max(xs), max(ys)


def render_svg(items, width: int = 600, circles: bool = True) -> str:
    """SVG text for a list of polygons and clouds."""
    if not items:
        raise OmegaCloudError("nothing to render")
    for it in items:
        if isinstance(it, Cloud) and not it.arcs:
            raise OmegaCloudError("cloud has no arcs")
    x0, y0, x1, y1 = _extent(items)
    span = max(x1 - x0, y1 - y0, 1e-12)
    x0 -= PAD * span
    y0 -= PAD * span
    x1 += PAD * span
    y1 += PAD * span
    w, h = x1 - x0, y1 - y0
    height = max(1, round(width * h / w))
    thin = 0.002 * span
    bold = 0.008 * span
    dot = 0.012 * span
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="{_f(x0)} {_f(-y1)} {_f(w)} {_f(h)}">',
        '<g transform="scale(1 -1)">',
    ]
    for it in items:
        if isinstance(it, ConvexPolygon):
            v = it.vertices
            d = " ".join(("M" if k == 0 else "L") + f" {_f(p.x)} {_f(p.y)}" for k, p in enumerate(v)) + " Z"
            out.append(f'<path class="polygon" d="{d}" fill="#c8d8ec" stroke="#1f3f66" '
                       f'stroke-width="{_f(thin)}"/>')
    for it in items:
        if not isinstance(it, Cloud):
            continue
        if circles:
            seen = []
            for arc in it.arcs:
                c = arc.circle
                if any(c.same_as(o, 1e-9 * span) for o in seen):
                    continue
                seen.append(c)
                out.append(f'<circle class="support" cx="{_f(c.center.x)}" cy="{_f(c.center.y)}" '
                           f'r="{_f(c.radius)}" fill="none" stroke="#999999" stroke-width="{_f(thin)}"/>')
        for arc in it.arcs:
            out.append(f'<path class="arc" d="{_arc_path(arc)}" fill="none" stroke="#b22222" '
                       f'stroke-width="{_f(bold)}"/>')
        if len(it.arcs) > 1:
            for arc in it.arcs:
                out.append(f'<circle class="pivot" cx="{_f(arc.start.x)}" cy="{_f(arc.start.y)}" '
                           f'r="{_f(dot)}" fill="#000000"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
