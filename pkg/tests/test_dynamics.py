"""Dual-number differentiation, brackets and integrators."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from superint import _scalars as sm
from superint.dynamics import (BarrierCollisionError, Dual, bracket,
                               drift_report, gradient, integrate_leapfrog,
                               integrate_rk4)
from superint.model import (Observable, ParamsTTW, PhasePoint, RationalIndex,
                            convert, make_ttw_h, make_ttw_l2)

val = st.floats(-2.0, 2.0, allow_nan=False)


@settings(max_examples=50, deadline=None)
@given(x=val, y=val)
def test_dual_first_derivative(x, y):
    f = lambda u, v: u * u * v + sm.sin(u) * v * v
    d = f(Dual(x, 1.0), y)
    assert math.isclose(d.eps, 2 * x * y + math.cos(x) * y * y,
                        rel_tol=1e-12, abs_tol=1e-12)


def test_dual_nesting_keeps_channels_apart():
    # d2f/dxdy of x^2 y^3 via nested duals; the inner variable must be
    # wrapped with a zero-eps dual too, otherwise the two epsilon
    # channels merge and the result picks up a d2f/dx2 contribution
    f = lambda u, v: u * u * v * v * v
    x, y = 1.3, 0.7

    def df_dx(xx, yy):
        return f(Dual(xx, 1.0), Dual(yy, 0.0)).eps

    outer = df_dx(Dual(x, 0.0), Dual(y, 1.0))
    assert math.isclose(outer.eps, 2 * x * 3 * y * y, rel_tol=1e-12)


def test_dual_scalar_helpers_dispatch():
    d = Dual(0.3, 1.0)
    assert math.isclose(sm.exp(d).eps, math.exp(0.3), rel_tol=1e-14)
    assert math.isclose(sm.cos(d).eps, -math.sin(0.3), rel_tol=1e-14)
    assert math.isclose(sm.sqrt(d).eps, 0.5 / math.sqrt(0.3), rel_tol=1e-14)
    z = sm.exp(Dual(0.1 + 0.2j, 1.0))
    assert abs(z.eps - np.exp(0.1 + 0.2j)) < 1e-14


def test_gradient_matches_finite_differences():
    params = ParamsTTW(1.0, 0.7, 0.3)
    h = make_ttw_h(params, RationalIndex(3, 2))
    pt = PhasePoint.cartesian(1.1, 0.6, 0.4, -0.2)
    g = gradient(h, pt)
    eps = 1e-6
    for i in range(4):
        co = list(pt.coords)
        co[i] += eps
        up = h(pt.with_coords(*co))
        co[i] -= 2 * eps
        dn = h(pt.with_coords(*co))
        assert math.isclose(g[i], (up - dn) / (2 * eps),
                            rel_tol=1e-7, abs_tol=1e-7)


def test_bracket_canonical_pairs():
    q1 = Observable("q1", "cartesian", lambda x, y, px, py: x)
    p1 = Observable("p1", "cartesian", lambda x, y, px, py: px)
    p2 = Observable("p2", "cartesian", lambda x, y, px, py: py)
    pt = PhasePoint.cartesian(0.5, 0.25, 1.0, 2.0)
    assert bracket(q1, p1, pt) == pytest.approx(1.0)
    assert bracket(p1, q1, pt) == pytest.approx(-1.0)
    assert bracket(q1, p2, pt) == pytest.approx(0.0)


def test_bracket_chart_mix_and_jacobi():
    params = ParamsTTW(1.0, 0.5, 0.25)
    k = RationalIndex(2, 1)
    h = make_ttw_h(params, k)
    l2 = make_ttw_l2(params, k)
    ang = Observable("ang", "cartesian", lambda x, y, px, py: x * py - y * px)
    pt = PhasePoint.cartesian(0.9, 0.4, 0.3, 0.7)
    assert abs(bracket(l2, h, pt)) < 1e-9

    # Jacobi identity, numerically: nested brackets via the dual chain
    def nest(f, g):
        name = "{%s,%s}" % (f.name, g.name)
        return Observable(name, "cartesian",
                          lambda x, y, px, py: bracket(
                              f, g, PhasePoint.cartesian(x, y, px, py)))

    jac = (bracket(nest(h, ang), l2, pt) + bracket(nest(ang, l2), h, pt)
           + bracket(nest(l2, h), ang, pt))
    assert abs(jac) < 1e-6


def test_leapfrog_oscillator_period_and_reversibility():
    # pure oscillator: H = p^2 + q^2 with qdot = 2p, so the period is pi
    h = make_ttw_h(ParamsTTW(1.0, 0.0, 0.0), RationalIndex(1))
    start = PhasePoint.cartesian(1.0, 0.3, 0.2, -0.4)
    n = int(round(math.pi / 1e-4))
    traj = integrate_leapfrog(h, start, 1e-4, n)
    end = traj.states[-1]
    assert max(abs(a - b) for a, b in zip(end.coords, start.coords)) < 1e-3

    back = integrate_leapfrog(
        h, end.with_coords(end.coords[0], end.coords[1],
                           -end.coords[2], -end.coords[3]), 1e-4, n)
    fin = back.states[-1]
    assert math.isclose(fin.coords[0], start.coords[0], abs_tol=1e-6)
    assert math.isclose(fin.coords[1], start.coords[1], abs_tol=1e-6)


def test_leapfrog_energy_drift_bounded():
    params = ParamsTTW(1.0, 1.0, 1.0)
    k = RationalIndex(2)
    h = make_ttw_h(params, k)
    start = PhasePoint.polar(1.2, 0.35, 0.2, 0.5)
    traj = integrate_leapfrog(h, start, 1e-4, 20000, record_every=200)
    rep = drift_report(traj, (h,))
    assert rep[h.name] < 1e-7


def test_leapfrog_steps_zero_records_start():
    h = make_ttw_h(ParamsTTW(1.0, 0.0, 0.0), RationalIndex(1))
    traj = integrate_leapfrog(h, PhasePoint.cartesian(1.0, 0.0, 0.0, 0.5),
                              1e-3, 0)
    assert len(traj.states) == 1
    assert traj.times[0] == 0.0


def test_barrier_collision_is_reported():
    # start deep on the sin-wall slope with a step far too coarse for
    # it: the energy-jump halving bottoms out and reports the collision
    params = ParamsTTW(0.0, 0.0, 1.0)
    h = make_ttw_h(params, RationalIndex(2))
    start = PhasePoint.polar(1.0, 1e-4, 0.0, -0.5)
    with pytest.raises(BarrierCollisionError):
        integrate_leapfrog(h, start, 0.01, 50)


def test_rk4_matches_leapfrog_on_smooth_stretch():
    params = ParamsTTW(1.0, 0.5, 0.5)
    k = RationalIndex(3, 2)
    h = make_ttw_h(params, k)
    start = PhasePoint.polar(1.1, 0.5, 0.1, 0.4)
    n = 2000
    t1 = integrate_leapfrog(h, start, 1e-4, n)
    t2 = integrate_rk4(h, start, 1e-4, n)
    a = convert(t1.states[-1], "cartesian")
    b = convert(t2.states[-1], "cartesian")
    assert max(abs(x - y) for x, y in zip(a.coords, b.coords)) < 1e-6


def test_rk4_in_logpolar_chart_conserves_h():
    params = ParamsTTW(1.0, 1.0, 1.0)
    k = RationalIndex(1, 6)   # wedge wider than the plane: cover chart
    h = make_ttw_h(params, k)
    start = PhasePoint.logpolar(0.0, 4.5, 0.2, 0.3)
    traj = integrate_rk4(h, start, 1e-4, 20000, chart="logpolar",
                         record_every=500)
    rep = drift_report(traj, (h,))
    assert rep[h.name] < 1e-10
    assert all(s.chart == "logpolar" for s in traj.states)


def test_drift_report_normalizes_small_reference():
    h = make_ttw_h(ParamsTTW(1.0, 0.0, 0.0), RationalIndex(1))
    traj = integrate_leapfrog(h, PhasePoint.cartesian(0.6, 0.0, 0.0, 0.4),
                              1e-3, 100, record_every=10)
    tiny = Observable("tiny", "cartesian", lambda x, y, px, py: 1e-8 * x)
    rep = drift_report(traj, (tiny,))
    # reference |f(0)| < 1, so the divisor clamps at 1
    assert rep["tiny"] < 1e-7
