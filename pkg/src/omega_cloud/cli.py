"""Command line front end.

Exit codes: 0 success, 1 round-trip mismatch, 2 bad input, 3 invalid
cloud, 4 single-circle cloud, 5 certification failure.  Diagnostics go to
stderr as one JSON object per line.
"""

import argparse
import json
import math
import sys

from . import io
from .cloud import maximal_cloud, omega_cloud
from .errors import CertificationFailed, InvalidCloud, OmegaCloudError, SingleCircleAmbiguous
from .geometry import validate_convex
from .oracle import match_polygons, random_convex_polygon, sample_omega
from .reconstruct import reconstruct_aware, reconstruct_oblivious
from .render import render_svg

EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_INVALID = 3
EXIT_CIRCLE = 4
EXIT_CERT = 5

MATCH_TOL = 1e-6
OMEGA_MATCH_TOL = 1e-9


class CliError(Exception):
    def __init__(self, code: int, kind: str, message: str):
        super().__init__(message)
        self.exit_code = code
        self.kind = kind


def _diag(kind: str, message: str, code: int) -> None:
    print(json.dumps({"error": kind, "message": message, "exit": code}), file=sys.stderr)


def _omega(text: str) -> float:
    try:
        w = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not (math.isfinite(w) and 0.0 < w < math.pi):
        raise argparse.ArgumentTypeError("omega out of range")
    return w


def _seed(text: str) -> int:
    try:
        s = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= s < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return s


def _sizes(text: str) -> list:
    """``8`` or an inclusive range ``3..64``."""
    try:
        if ".." in text:
            lo, hi = (int(x) for x in text.split("..", 1))
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad size {text!r}") from None
    if not 3 <= lo <= hi <= 100_000:
        raise argparse.ArgumentTypeError("sizes must lie in 3..100000")
    return list(range(lo, hi + 1))


def _emit(text: str, out) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load(loader, path):
    try:
        return loader(path)
    except OmegaCloudError as exc:
        raise CliError(EXIT_USAGE, getattr(exc, "code", "error"), str(exc)) from None


def cmd_cloud(args) -> int:
    p = _load(io.load_polygon, args.input)
    c = omega_cloud(p, args.omega)
    if args.maximal:
        c = maximal_cloud(c)
    _emit(io.dumps(io.cloud_to_dict(c)), args.out)
    return 0


def cmd_reconstruct(args) -> int:
    c = _load(io.load_cloud, args.input)
    if (args.omega is None) == (not args.oblivious):
        raise CliError(EXIT_USAGE, "usage", "give exactly one of --omega and --oblivious")
    try:
        if args.oblivious:
            res = reconstruct_oblivious(c, certify=not args.no_certify)
        else:
            res = reconstruct_aware(c, args.omega, certify=not args.no_certify)
    except SingleCircleAmbiguous as exc:
        raise CliError(EXIT_CIRCLE, exc.code, str(exc)) from None
    except CertificationFailed as exc:
        raise CliError(EXIT_CERT, exc.code, str(exc)) from None
    except OmegaCloudError as exc:
        # anything else the reconstruction trips over means the cloud is bad
        raise CliError(EXIT_INVALID, InvalidCloud.code if not isinstance(exc, InvalidCloud) else exc.code,
                       str(exc)) from None
    report = {"omega": res.omega, "certified": res.certified,
              "pivot_visits": res.pivot_visits, "narrow_count": res.narrow_count}
    doc = io.polygon_to_dict(res.polygon)
    doc["report"] = report
    _emit(io.dumps(doc), args.out)
    if args.out:
        print(json.dumps(report))
    return 0


def _corrupt(p):
    """The same polygon with its first vertex pulled towards the centroid."""
    v = p.vertices
    cx = sum(q.x for q in v) / len(v)
    cy = sum(q.y for q in v) / len(v)
    moved = [(v[0].x + 0.05 * (cx - v[0].x), v[0].y + 0.05 * (cy - v[0].y))] + [tuple(q) for q in v[1:]]
    return validate_convex(moved)


def roundtrip(sizes, omega, seed, count, corrupt=False, oblivious=True):
    """Run forward and inverse maps on ``count`` random polygons.

    Returns a list of per-check summaries and the overall verdict.
    """
    import numpy as np

    rng = np.random.default_rng(seed)
    rows = {"aware": [0, 0, 0.0], "oblivious": [0, 0, 0.0]}
    for k in range(count):
        n = int(sizes[k % len(sizes)])
        p = random_convex_polygon(n, int(rng.integers(0, 2 ** 63)))
        w = float(omega) if omega is not None else sample_omega(p, rng, 0.1, math.pi - 0.1)
        src = _corrupt(p) if corrupt and k == 0 else p
        c = maximal_cloud(omega_cloud(src, w))
        tol = MATCH_TOL * p.diameter()
        checks = [("aware", lambda: reconstruct_aware(c, w))]
        if oblivious and w < 0.5 * math.pi:
            checks.append(("oblivious", lambda: reconstruct_oblivious(c)))
        for name, run in checks:
            row = rows[name]
            try:
                res = run()
                m = match_polygons(res.polygon, p, tol)
                ok = m.verdict and res.certified and abs(res.omega - w) <= OMEGA_MATCH_TOL
                err = m.max_vertex_error / p.diameter()
            except OmegaCloudError:
                ok, err = False, math.inf
            row[0 if ok else 1] += 1
            row[2] = max(row[2], err)
    table = [(name, r[0], r[1], r[2]) for name, r in rows.items() if r[0] + r[1]]
    return table, all(r[2] == 0 for r in table)


def cmd_roundtrip(args) -> int:
    table, ok = roundtrip(args.n, args.omega, args.seed, args.count, args.corrupt, not args.aware_only)
    lines = [f"{'check':<10} {'pass':>6} {'fail':>6} {'max rel err':>12}"]
    for name, good, bad, err in table:
        lines.append(f"{name:<10} {good:>6} {bad:>6} {err:>12.3e}")
    lines.append("PASS" if ok else "FAIL")
    _emit("\n".join(lines) + "\n", args.out)
    return 0 if ok else EXIT_MISMATCH


def cmd_render(args) -> int:
    items = [_load(io.load_any, path) for path in args.inputs]
    try:
        svg = render_svg(items)
    except OmegaCloudError as exc:
        raise CliError(EXIT_USAGE, exc.code, str(exc)) from None
    _emit(svg, args.out)
    return 0


def cmd_generate(args) -> int:
    sizes = args.n
    if len(sizes) != 1:
        raise CliError(EXIT_USAGE, "usage", "generate takes a single --n")
    try:
        p = random_convex_polygon(sizes[0], args.seed)
    except OmegaCloudError as exc:
        raise CliError(EXIT_USAGE, exc.code, str(exc)) from None
    _emit(io.dumps(io.polygon_to_dict(p)), args.out)
    return 0


class _Parser(argparse.ArgumentParser):
    """Reports usage errors as JSON diagnostics instead of plain text."""

    def error(self, message):
        raise CliError(EXIT_USAGE, "usage", message)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="omega-cloud", description="Omega-clouds of convex polygons.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cloud", help="compute the omega-cloud of a polygon file")
    p.add_argument("input")
    p.add_argument("--omega", type=_omega, required=True, help="wedge angle in radians")
    p.add_argument("--maximal", action="store_true", help="merge co-circular arcs")
    p.add_argument("--out")
    p.set_defaults(func=cmd_cloud)

    p = sub.add_parser("reconstruct", help="recover the polygon from a cloud file")
    p.add_argument("input")
    p.add_argument("--omega", type=_omega)
    p.add_argument("--oblivious", action="store_true", help="recover omega as well (omega < pi/2)")
    p.add_argument("--no-certify", action="store_true", help="skip the forward re-check")
    p.add_argument("--out")
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("roundtrip", help="random forward/inverse checks")
    p.add_argument("--n", type=_sizes, default=[8], help="vertex count or range such as 3..64")
    p.add_argument("--omega", type=_omega, help="fixed wedge angle (random when omitted)")
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--corrupt", action="store_true", help="swap in one wrong cloud")
    p.add_argument("--aware-only", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_roundtrip)

    p = sub.add_parser("render", help="draw polygon and cloud files as SVG")
    p.add_argument("inputs", nargs="+")
    p.add_argument("--out")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("generate", help="write a random convex polygon file")
    p.add_argument("--n", type=_sizes, default=[8])
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_generate)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
        if getattr(args, "count", 1) < 1:
            raise CliError(EXIT_USAGE, "usage", "count must be positive")
        return args.func(args)
    except CliError as exc:
        _diag(exc.kind, str(exc), exc.exit_code)
        return exc.exit_code
    except OmegaCloudError as exc:
        _diag(getattr(exc, "code", "error"), str(exc), EXIT_USAGE)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
