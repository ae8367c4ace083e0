"""Closure detection and the k scan."""

import math

import numpy as np
import pytest

from superint.model import ParamsTTW, PhasePoint, RationalIndex, make_ttw_h
from superint.orbits import (ClosureResult, _FloatIndex, closure_distance_near,
                             find_closure, scan_k, wedge_starts)

SEED = 20260815


def test_float_index_probe():
    fi = _FloatIndex(1.414213562)
    assert fi.as_float == 1.414213562
    assert "1.414213562" in str(fi)


def test_oscillator_period_is_pi():
    h = make_ttw_h(ParamsTTW(1.0, 0.0, 0.0), RationalIndex(1))
    start = PhasePoint.cartesian(1.0, 0.3, 0.2, -0.4)
    res = find_closure(h, start, dt=1e-3, horizon=5.0, tol=1e-4)
    assert res.closed
    assert res.period == pytest.approx(math.pi, abs=1e-4)


def test_rational_k_closes_irrational_does_not():
    params = ParamsTTW(1.0, 1.0, 1.0)
    rng = np.random.default_rng(SEED)
    k = RationalIndex(3, 2)
    h = make_ttw_h(params, k)
    start = next(iter(wedge_starts(k, 1, rng)))
    res = find_closure(h, start, dt=1e-3, horizon=50.0, tol=1e-4, k=k)
    assert res.closed and res.period is not None

    fi = _FloatIndex(1.414213562)
    hi = make_ttw_h(ParamsTTW(1.0, 1.0, 1.0), fi)
    rng = np.random.default_rng(SEED)
    start = next(iter(wedge_starts(fi, 1, rng)))
    res = find_closure(hi, start, dt=1e-3, horizon=50.0, tol=1e-4, k=fi)
    assert not res.closed
    assert res.distance > 1e-4   # best miss recorded


def test_closure_distance_near_period():
    h = make_ttw_h(ParamsTTW(1.0, 0.0, 0.0), RationalIndex(1))
    start = PhasePoint.cartesian(1.0, 0.3, 0.2, -0.4)
    at_period = closure_distance_near(h, start, math.pi, dt=1e-3)
    assert at_period < 1e-4
    halfway = closure_distance_near(h, start, math.pi / 2, dt=1e-3)
    assert halfway > 0.1


def test_wedge_starts_stay_in_wedge():
    k = RationalIndex(3, 2)
    rng = np.random.default_rng(SEED)
    pts = wedge_starts(k, 8, rng)
    for pt in pts:
        assert pt.chart == "polar"
        theta = pt.coords[1]
        assert 0.0 < theta < math.pi / (2 * k.as_float)


def test_scan_k_shape_and_determinism():
    params = ParamsTTW(1.0, 1.0, 1.0)
    cells1 = scan_k([RationalIndex(1), 1.414213562], params, n_starts=2,
                    horizon=8.0, seed=SEED)
    cells2 = scan_k([RationalIndex(1), 1.414213562], params, n_starts=2,
                    horizon=8.0, seed=SEED)
    assert len(cells1) == 4
    assert all(isinstance(c, ClosureResult) for c in cells1)
    assert [c.distance for c in cells1] == [c.distance for c in cells2]
    assert all(c.k == 1.0 for c in cells1[:2])
    assert cells1[2].k == pytest.approx(1.414213562)


def test_scan_k_captures_integration_errors():
    # a negative radial coupling pulls the orbit into the origin; the
    # cell reports the failure instead of raising
    params = ParamsTTW(-3.0, 0.0, 1e-4)
    cells = scan_k([RationalIndex(1)], params, n_starts=2, horizon=12.0,
                   dt=5e-3, seed=SEED)
    assert len(cells) == 2
    # every cell either finished (possibly open) or carries an error tag
    for c in cells:
        assert c.error is None or isinstance(c.error, str)
