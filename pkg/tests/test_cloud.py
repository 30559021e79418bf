import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from omega_cloud.cloud import (
    CloudPoint,
    PivotKind,
    check_closure,
    locate,
    maximal_cloud,
    omega_cloud,
    point_at_turn,
    total_measure_check,
    turn,
)
from omega_cloud.errors import IdentityViolated, OmegaCloudError, TurnOutOfRange
from omega_cloud.geometry import TWO_PI, validate_convex
from omega_cloud.oracle import minimal_wedge_at_direction, random_convex_polygon, sample_omega

from conftest import on_unit_circle

HALF = math.pi / 2


def pivot(c, i):
    return CloudPoint(i, 0.0, c.arcs[i].start)


def test_triangle_right_wedge(triangle):
    c = omega_cloud(triangle, HALF)
    assert len(c.arcs) == 3
    mids = {(round((p.x + q.x) / 2, 12), round((p.y + q.y) / 2, 12))
            for p, q in zip(triangle.vertices, triangle.vertices[1:] + triangle.vertices[:1])}
    for arc in c.arcs:
        assert abs(arc.measure - math.pi) < 1e-12
        assert abs(arc.circle.radius - 0.5) < 1e-12
        assert (round(arc.circle.center.x, 12), round(arc.circle.center.y, 12)) in mids
    assert [p.kind for p in c.pivots] == [PivotKind.STRICTLY_NARROW] * 3
    assert all(min(math.dist(p.location, v) for v in triangle.vertices) < 1e-12 for p in c.pivots)
    assert abs(c.total_measure - 3 * math.pi) < 1e-12


def test_square_right_wedge(square):
    c = omega_cloud(square, HALF)
    assert len(c.arcs) == 4
    assert all(abs(a.measure - math.pi) < 1e-12 and abs(a.circle.radius - 0.5) < 1e-12 for a in c.arcs)
    assert [p.kind for p in c.pivots] == [PivotKind.NARROW] * 4
    assert abs(c.total_measure - 4 * math.pi) < 1e-12


def test_hexagon_hidden_pivots(hexagon):
    w = 5 * math.pi / 6
    c = omega_cloud(hexagon, w)
    assert len(c.arcs) == 6
    for arc in c.arcs:
        assert abs(arc.measure - math.pi / 3) < 1e-12
        assert math.dist(arc.circle.center, (0, 0)) < 1e-12 and abs(arc.circle.radius - 1) < 1e-12
    assert all(p.kind is PivotKind.HIDDEN for p in c.pivots)


def test_first_arc_holds_direction_zero(square):
    c = omega_cloud(square, 1.0)
    apex = minimal_wedge_at_direction(square, 0.0, 1.0).apex
    assert locate(c, apex).arc == 0


def test_segment_cloud():
    seg = validate_convex([(0, 0), (1, 0)])
    c = omega_cloud(seg, math.pi / 3)
    assert len(c.arcs) == 2
    assert all(abs(a.measure - 4 * math.pi / 3) < 1e-12 for a in c.arcs)


def test_bad_omega(square):
    for w in (0.0, math.pi, -1.0):
        with pytest.raises(OmegaCloudError):
            omega_cloud(square, w)


# -- maximal_cloud ----------------------------------------------------------

def test_hexagon_maximal_is_full_circle(hexagon):
    m = maximal_cloud(omega_cloud(hexagon, 5 * math.pi / 6))
    assert m.maximal and len(m.arcs) == 1 and m.arcs[0].is_full_circle
    assert m.pivots == ()
    assert abs(m.arcs[0].circle.radius - 1) < 1e-12


def test_maximal_without_cocircular(square):
    c = omega_cloud(square, 1.0)
    m = maximal_cloud(c)
    assert m.maximal and not c.maximal
    assert m.arcs == c.arcs


def test_two_cocircular_arcs_merge():
    d = math.pi / 180
    # a, b, c on the unit circle 60 degrees apart; d, e inside it
    a, b, c = [(math.cos(t * d), math.sin(t * d)) for t in (150, 90, 30)]
    p = validate_convex([a, b, c, (0.5, -0.9), (-0.5, -0.9)])
    cl = omega_cloud(p, 5 * math.pi / 6)
    m = maximal_cloud(cl)
    assert len(m.arcs) == len(cl.arcs) - 1
    merged = [arc for arc in m.arcs if abs(arc.measure - 2 * math.pi / 3) < 1e-12]
    assert len(merged) == 1 and abs(merged[0].circle.radius - 1) < 1e-12


# -- turn and point_at_turn --------------------------------------------------

def test_turn_examples(triangle):
    c = omega_cloud(triangle, HALF)
    s = pivot(c, 0)
    assert turn(c, s, s) == 0.0
    assert abs(turn(c, s, pivot(c, 1)) - math.pi) < 1e-12
    assert abs(turn(c, s, s, full=True) - 3 * math.pi) < 1e-12


def test_point_at_turn_examples(triangle):
    c = omega_cloud(triangle, HALF)
    s = pivot(c, 0)
    same = point_at_turn(c, s, 0.0)
    assert (same.arc, same.offset) == (0, 0.0) and math.dist(same.point, s.point) < 1e-15
    nxt = point_at_turn(c, s, math.pi)
    assert nxt.arc == 1 and nxt.offset == 0.0
    back = point_at_turn(c, s, c.total_measure)
    assert back.arc == 0 and back.offset == 0.0
    with pytest.raises(TurnOutOfRange):
        point_at_turn(c, s, 4 * math.pi)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.floats(0.0, 1.0))
def test_point_at_turn_inverts_turn(seed, frac):
    p = random_convex_polygon(6, seed)
    c = omega_cloud(p, 1.0)
    s = pivot(c, 0)
    tau = frac * c.total_measure
    w = point_at_turn(c, s, tau)
    assert abs(turn(c, s, w) - tau) < 1e-9 or abs(tau - c.total_measure) < 1e-9


# -- total measure ---------------------------------------------------------

def test_total_measure_examples(square, triangle):
    r = total_measure_check(omega_cloud(square, HALF), square, HALF)
    assert r.ok and abs(r.total - 4 * math.pi) < 1e-12 and all(v == 0 for v in r.deficits.values())
    r = total_measure_check(omega_cloud(triangle, HALF), triangle, HALF)
    assert abs(r.total - 3 * math.pi) < 1e-12
    assert abs(sum(r.deficits.values()) - 3 * math.pi / 6) < 1e-12


def test_total_measure_all_wide(hexagon):
    r = total_measure_check(omega_cloud(hexagon, 1.0), hexagon, 1.0)
    assert r.deficits == {} and abs(r.total - 4 * math.pi) < 1e-12


def test_total_measure_mismatch_raises(square, triangle):
    with pytest.raises(IdentityViolated):
        total_measure_check(omega_cloud(triangle, HALF), square, HALF)


# -- properties over random polygons ----------------------------------------

instances = st.tuples(st.integers(3, 40), st.integers(0, 2 ** 32))


def make_instance(n, seed, lo=0.1, hi=math.pi - 0.1):
    p = random_convex_polygon(n, seed)
    w = sample_omega(p, np.random.default_rng(seed), lo, hi)
    return p, w


@settings(max_examples=80, deadline=None)
@given(instances)
def test_structural_invariants(inst):
    p, w = make_instance(*inst)
    n = len(p)
    c = omega_cloud(p, w)
    span = 2 * (math.pi - w)
    check_closure(c.arcs, c.tol)
    assert n <= len(c.pivots) <= 2 * n
    assert all(a.measure <= span + 1e-9 for a in c.arcs)
    assert total_measure_check(c, p, w).ok
    m = maximal_cloud(c)
    for a in m.arcs:
        if a.measure > span + 1e-9:
            t = round(a.measure / span)
            assert t >= 2 and abs(a.measure - t * span) <= t * 1e-9


@settings(max_examples=60, deadline=None)
@given(instances)
def test_narrow_pivots_sit_on_vertices(inst):
    p, w = make_instance(*inst)
    c = omega_cloud(p, w)
    for pv in c.pivots:
        if pv.kind.narrow:
            assert math.dist(pv.location, p.vertices[pv.vertex]) < 1e-9 * p.diameter()
            theta = p.internal_angle(pv.vertex)
            assert theta <= w + 1e-9
            assert (pv.kind is PivotKind.STRICTLY_NARROW) == (theta < w - 1e-9) or pv.kind is PivotKind.HIDDEN


@settings(max_examples=60, deadline=None)
@given(instances)
def test_half_measure_turns_wedge(inst):
    # along an arc the wedge direction drops by half the arc's measure
    p, w = make_instance(*inst)
    c = omega_cloud(p, w)
    k = len(c.arcs)
    for i, arc in enumerate(c.arcs):
        d0 = c.pivots[i].d_out
        d1 = c.pivots[(i + 1) % k].d_in
        drop = (d0 - d1) % TWO_PI
        assert abs(drop - arc.measure / 2) < 1e-9 or abs(drop - arc.measure / 2 - TWO_PI) < 1e-9


def regular(k, phase=0.3):
    return on_unit_circle([phase - 2 * math.pi * j / k for j in range(k)])


def pentagon_with_hidden_vertex():
    d = math.pi / 180
    a, b, c = [(math.cos(t * d), math.sin(t * d)) for t in (150, 90, 30)]
    return validate_convex([a, b, c, (0.5, -0.9), (-0.5, -0.9)]), 5 * math.pi / 6


@pytest.mark.parametrize("k", [0, 5, 6, 7, 9, 12])
def test_hidden_pivot_neighbourhood(k):
    if k:
        # a hidden vertex has theta = 2w - pi, so w = pi - pi/k here
        p, w = regular(k), math.pi - math.pi / k
    else:
        p, w = pentagon_with_hidden_vertex()
    c = omega_cloud(p, w)
    span = 2 * (math.pi - w)
    n = len(c.pivots)
    hidden = [i for i, pv in enumerate(c.pivots) if pv.kind is PivotKind.HIDDEN]
    assert hidden
    for i in hidden:
        assert abs(c.arcs[i - 1].measure - span) < 1e-9 and abs(c.arcs[i].measure - span) < 1e-9
        assert c.pivots[i - 1].kind.narrow and c.pivots[(i + 1) % n].kind.narrow


@settings(max_examples=25, deadline=None)
@given(instances)
def test_apex_moves_counterclockwise_as_direction_grows(inst):
    p, w = make_instance(*inst)
    c = omega_cloud(p, w)
    step = 0.01
    prev = locate(c, minimal_wedge_at_direction(p, 0.0, w).apex)
    for k in range(1, 80):
        cur = locate(c, minimal_wedge_at_direction(p, k * step, w).apex)
        back = turn(c, cur, prev)
        # clockwise from the new apex to the old one: at most twice the step
        assert back <= 2 * step + 1e-7 or c.total_measure - back < 1e-7
        prev = cur
