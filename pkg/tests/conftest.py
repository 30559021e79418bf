import math

import pytest

from omega_cloud.geometry import validate_convex

SQRT3 = math.sqrt(3.0)


def on_unit_circle(angles):
    return validate_convex([(math.cos(t), math.sin(t)) for t in angles])


def ace_angles():
    """Triangle a, c, e on the unit circle with angles pi/3, 16pi/45, 14pi/45."""
    a = math.pi / 2
    c = a - 32 * math.pi / 45
    e = c - 28 * math.pi / 45
    return a, c, e


@pytest.fixture
def triangle():
    return validate_convex([(0.0, 0.0), (0.5, SQRT3 / 2), (1.0, 0.0)])


@pytest.fixture
def square():
    return validate_convex([(0.0, 0.0), (0.0, 1.0), (1.0, 1.0), (1.0, 0.0)])


@pytest.fixture
def hexagon():
    return on_unit_circle([-k * math.pi / 3 for k in range(6)])


@pytest.fixture
def ace():
    return on_unit_circle(ace_angles())


def arc_midpoint(p, q, omega):
    """Midpoint of the arc outside edge p->q (clockwise polygon) from which
    the edge is seen under ``omega`` > pi/2."""
    dx, dy = q[0] - p[0], q[1] - p[1]
    length = math.hypot(dx, dy)
    radius = length / (2 * math.sin(omega))
    sagitta = radius * (1 + math.cos(omega))
    nx, ny = -dy / length, dx / length
    return (0.5 * (p[0] + q[0]) + nx * sagitta, 0.5 * (p[1] + q[1]) + ny * sagitta)


@pytest.fixture
def abcdef(ace):
    """ace with the midpoints b, d, f of its three cloud arcs (omega = 2pi/3)."""
    a, c, e = ace.vertices
    w = 2 * math.pi / 3
    return validate_convex([a, arc_midpoint(a, c, w), c, arc_midpoint(c, e, w), e, arc_midpoint(e, a, w)])


def cap_polygon(step_deg):
    """Co-circular cap spanning 120 degrees on the unit circle over a short base.

    At the returned omega every inner cap vertex is hidden, so the maximal
    cloud holds one arc of 120/step_deg turn units.
    """
    k = 120 // step_deg + 1
    d = math.pi / 180
    cap = [(math.cos((90 - (j - (k - 1) / 2) * step_deg) * d),
            math.sin((90 - (j - (k - 1) / 2) * step_deg) * d)) for j in range(k)]
    return validate_convex(cap + [(0.5, -0.9), (-0.5, -0.9)]), math.pi - step_deg * d / 2
