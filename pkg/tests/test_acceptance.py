"""Acceptance gate: the nine primary criteria, one line each.

Each test drives one criterion at its stated tolerance and budget and
prints a single [PASS]/[FAIL] line with the measured numbers.  The
heavy numeric criterion (5) integrates 42 trajectories at dt = 1e-4
over t in [0, 10] and takes several minutes on its own.
"""

import json
import math
import time

import numpy as np
import pytest

from superint import ladder
from superint.cas import charts, repair, suites
from superint.dynamics import bracket, drift_report, integrate_rk4
from superint.model import (Observable, ParamsHolo, ParamsTTW, PhasePoint,
                            RationalIndex, convert, make_holo_h, make_holo_l,
                            make_ttw_h, make_ttw_l2, params_from_k2_cartesian)
from superint.orbits import find_closure, scan_k
from superint.report import MISMATCH, PASS

SEED = 20260815

# all coprime (p, q) with p + q <= 8
COPRIME_PAIRS = [(1, 1), (1, 2), (2, 1), (1, 3), (3, 1), (1, 4), (4, 1),
                 (2, 3), (3, 2), (1, 5), (5, 1), (1, 6), (6, 1), (2, 5),
                 (5, 2), (3, 4), (4, 3), (1, 7), (7, 1), (3, 5), (5, 3)]


_CAPSYS = None


@pytest.fixture(autouse=True)
def _verdicts_to_terminal(capsys):
    global _CAPSYS
    _CAPSYS = capsys
    yield
    _CAPSYS = None


def line(n, ok, text):
    msg = "[%s] criterion %d: %s" % ("PASS" if ok else "FAIL", n, text)
    if _CAPSYS is not None:
        # suspend capture so the verdict lines land in the run log itself
        with _CAPSYS.disabled():
            print(msg, flush=True)
    else:
        print(msg, flush=True)


def by_name(rep):
    return {c.name: c for c in rep.checks}


def wedge_points(family, k, count, rng):
    lo, hi = (0.4, 2.6) if family == "ttw" else (0.1, 2.8)
    return [PhasePoint.logpolar(rng.uniform(-0.25, 0.25),
                                rng.uniform(lo, hi) / (2 * k.as_float),
                                rng.uniform(0.3, 1.3), rng.uniform(0.3, 1.3))
            for _ in range(count)]


def test_criterion_1_classical_k2_exact_suite():
    t0 = time.monotonic()
    rep = suites.suite_ttw_k2_classical()
    elapsed = time.monotonic() - t0
    names = by_name(rep)
    clean = names["printed table: {C1,R}"].status == PASS
    c2r = names["printed table: {C2,R}"]
    r2 = names["printed table: R^2"]
    emitted = (c2r.status == MISMATCH and "a^2*c^2" in c2r.residual
               and r2.status == MISMATCH and "a^2*c*C1^2" in r2.residual)
    ok = rep.passed and clean and emitted and elapsed <= 120.0
    line(1, ok, "exact classical k=2 suite; printed comparison emitted, "
         "clean subset exact, 2 corrupted coefficients flagged (%.1fs)"
         % elapsed)
    assert rep.passed
    assert clean and emitted
    assert elapsed <= 120.0


def test_criterion_2_holo_k3_exact_suite():
    t0 = time.monotonic()
    rep = suites.suite_holo_k3_classical()
    elapsed = time.monotonic() - t0
    names = by_name(rep)
    wanted = ("{K1,K2} = 3i K1^2", "{K1,K3} = 6i K2",
              "{K2,K3} = 6i K1 (K3 + a)",
              "constraint K1^2 K3 - K2^2 + a(K1^2 - H^3) = 0")
    relations = all(names[w].status == PASS for w in wanted)
    ok = rep.passed and relations and elapsed <= 60.0
    line(2, ok, "exact holo k=3 suite; all four algebra relations exact "
         "(%.1fs)" % elapsed)
    assert rep.passed and relations
    assert elapsed <= 60.0


def test_criterion_3_quantum_suites():
    t0 = time.monotonic()
    rep = suites.suite_quantum("all")
    elapsed = time.monotonic() - t0
    names = by_name(rep)
    commutes = [c for n, c in names.items() if n.startswith("commutes")]
    sym_recorded = any("symmetriz" in k for k in rep.conventions)
    casimir = names["printed table: Casimir R^2"].status == MISMATCH
    ok = (rep.passed and commutes and all(c.status == PASS for c in commutes)
          and sym_recorded and casimir and elapsed <= 300.0)
    line(3, ok, "exact quantum suites; symmetrizer convention recorded, "
         "corrupted Casimir emitted as reported-mismatch only (%.1fs)"
         % elapsed)
    assert rep.passed
    assert commutes and all(c.status == PASS for c in commutes)
    assert sym_recorded and casimir
    assert elapsed <= 300.0


def test_criterion_4_symbolic_ladder():
    t0 = time.monotonic()
    rep = suites.suite_ttw_general()
    elapsed = time.monotonic() - t0
    names = by_name(rep)
    orders_ok = True
    for (p, q) in suites.LADDER_PAIRS:
        tag = "k=%d/%d" % (p, q)
        full = 2 * (p + q)
        if (p + q) % 2 == 0:
            expect = {"C": full, "D": full - 1}
        else:
            expect = {"C'": full - 1, "D'": full}
        for label, order in expect.items():
            key = "%s: %s momentum order %d" % (tag, label, order)
            orders_ok &= key in names and names[key].status == PASS
        orders_ok &= names["%s: {%s, H} = 0"
                           % (tag, max(expect))].status == PASS
        for label in expect:
            dep = "%s: %s independent of (H, L2)" % (tag, label)
            orders_ok &= names[dep].status == PASS
    ok = rep.passed and orders_ok and elapsed <= 600.0
    line(4, ok, "symbolic ladder for six (p,q): exact polynomials, "
         "conserved, parity-law degrees, independent of L2 (%.1fs)" % elapsed)
    assert rep.passed and orders_ok
    assert elapsed <= 600.0


PAIR_TOL = 1e-10
PURITY_TOL = 1e-10   # extraction engine default: leak above this raises
BRACKET_TOL = 1e-9
DRIFT_TOL = 1e-6


def _const_observable(family, params, k, which):
    def fn(q1, q2, p1, p2):
        pt = PhasePoint.logpolar(q1, q2, p1, p2)
        return ladder.extract_constants(family, pt, params, k)[which].value
    return Observable("const%d" % which, "logpolar", fn)


def test_criterion_5_numeric_ladder_all_coprime_pairs():
    t0 = time.monotonic()
    worst = {"pair": 0.0, "bracket": 0.0, "drift": 0.0}
    for family in ("ttw", "holo"):
        params = ParamsTTW(1.0, 1.0, 1.0) if family == "ttw" \
            else ParamsHolo(1.0)
        for (p, q) in COPRIME_PAIRS:
            k = RationalIndex(p, q)
            h = make_ttw_h(params, k) if family == "ttw" \
                else make_holo_h(params, k)
            l2 = make_ttw_l2(params, k) if family == "ttw" \
                else make_holo_l(params, k)
            rng = np.random.default_rng(SEED + 7 * p + q)
            pts = wedge_points(family, k, 100, rng)

            obs = (_const_observable(family, params, k, 0),
                   _const_observable(family, params, k, 1))
            for pt in pts:
                for pair in (ladder.pair_A(family, pt, params, k),
                             ladder.pair_B(family, pt, params, k)):
                    worst["pair"] = max(worst["pair"],
                                        pair.identity_residual())
                # extraction enforces purity at 1e-10; a leak raises
                ladder.extract_constants(family, pt, params, k)
                for ob in obs:
                    val = abs(complex(bracket(ob, h, pt)))
                    scale = max(1.0, abs(complex(ob(pt))))
                    worst["bracket"] = max(worst["bracket"], val / scale)

            # drift along one t in [0, 10] trajectory, dt = 1e-4, in the
            # cover chart (the wedge exceeds the plane for k < 1/2)
            start = PhasePoint.logpolar(
                rng.uniform(-0.05, 0.05),
                rng.uniform(1.0, 2.1) / (2 * k.as_float),
                rng.uniform(0.1, 0.35), rng.uniform(0.1, 0.35))
            traj = integrate_rk4(h, start, 1e-4, 100000, chart="logpolar",
                                 record_every=1000)
            rep = drift_report(traj, (h, l2) + obs)
            worst["drift"] = max(worst["drift"], max(rep.values()))
    elapsed = time.monotonic() - t0
    ok = (worst["pair"] <= PAIR_TOL and worst["bracket"] <= BRACKET_TOL
          and worst["drift"] <= DRIFT_TOL)
    line(5, ok, "numeric ladder, 21 coprime pairs x 2 families: pair "
         "identities %.1e <= 1e-10, purity clean at 1e-10, brackets %.1e "
         "<= 1e-9 at 100 points, drift %.1e <= 1e-6 on t in [0,10] "
         "(%.0fs)" % (worst["pair"], worst["bracket"], worst["drift"],
                      elapsed))
    assert worst["pair"] <= PAIR_TOL
    assert worst["bracket"] <= BRACKET_TOL
    assert worst["drift"] <= DRIFT_TOL


CROSS_TOL = 1e-10


def test_criterion_6_explicit_cross_checks():
    t0 = time.monotonic()
    rng = np.random.default_rng(SEED)
    worst = 0.0

    # k = 1/2 barrier: C' = 2 * fifth, D' = i * sixth (factors recorded)
    params = ParamsTTW(0.9, 1.2, 0.7)
    k = RationalIndex(1, 2)
    for pt in wedge_points("ttw", k, 100, rng):
        cv, dv = ladder.extract_constants("ttw", pt, params, k)
        fifth, sixth = ladder.explicit_ttw_khalf(pt, params)
        worst = max(worst,
                    abs(cv.value - 2 * fifth) / max(1.0, abs(cv.value)),
                    abs(dv.value - 1j * sixth) / max(1.0, abs(dv.value)))

    # holo k = 2: C' = c_val, D' = s_val (factor 1 each)
    ph = ParamsHolo(1.3)
    k = RationalIndex(2, 1)
    for pt in wedge_points("holo", k, 100, rng):
        cv, dv = ladder.extract_constants("holo", pt, ph, k)
        s_val, c_val = ladder.explicit_holo_k2(pt, ph)
        worst = max(worst,
                    abs(cv.value - c_val) / max(1.0, abs(cv.value)),
                    abs(dv.value - s_val) / max(1.0, abs(dv.value)))

    # holo k = 3: C = -i * K2, D = -i * K1
    ph = ParamsHolo(0.8)
    k = RationalIndex(3, 1)
    for pt in wedge_points("holo", k, 100, rng):
        cv, dv = ladder.extract_constants("holo", pt, ph, k)
        k1v, k2v, _ = ladder.explicit_holo_k3(pt, ph)
        worst = max(worst,
                    abs(cv.value + 1j * k2v) / max(1.0, abs(cv.value)),
                    abs(dv.value + 1j * k1v) / max(1.0, abs(dv.value)))

    # barrier k = 2, cartesian letters: C' = -(1/4){C1,C2}, D' = i times
    # the closure combination below
    a, b, c = 0.8, 1.1, 0.6
    pc = ParamsTTW(a, b, c)
    pe = params_from_k2_cartesian(a, b, c)
    k = RationalIndex(2, 1)

    def exp_obs(which):
        return Observable("C%d" % (which + 1), "cartesian",
                          lambda x, y, px, py: ladder.explicit_ttw_k2(
                              PhasePoint.cartesian(x, y, px, py), pc)[which])

    c1_obs, c2_obs = exp_obs(0), exp_obs(1)
    for pt in wedge_points("ttw", k, 100, rng):
        cv, dv = ladder.extract_constants("ttw", pt, pe, k)
        c1v, c2v = ladder.explicit_ttw_k2(pt, pc)
        x, y, px, py = convert(pt, "cartesian").coords
        hv = (px * px + py * py + a * (x * x + y * y)
              + b * (x * x + y * y) / (x * x - y * y) ** 2
              + c * (x * x + y * y) / (x * x * y * y))
        pred_c = -0.25 * bracket(c1_obs, c2_obs, pt)
        pred_d = 1j * (2 * c1v * c2v - c1v * hv * hv - 2 * b * hv * hv
                       + 2 * c * hv * hv + 2 * b * c2v + 4 * c * c2v
                       + 4 * a * b * c1v + 4 * a * b * b + 8 * a * b * c)
        worst = max(worst,
                    abs(cv.value - pred_c) / max(1.0, abs(cv.value)),
                    abs(dv.value - pred_d) / max(1.0, abs(dv.value)))

    # parameter-map identity, exact: L2(beta=b, gamma=4c) = C1 + b + 2c
    chart = charts.ttw_k2_classical()
    ring = chart.ring
    from superint.cas import RatFun
    bb, cc = ring.var("b"), ring.var("c")
    resid = (chart.objects["L2_image"] - chart.objects["C1"]
             - RatFun(chart.base, bb + 2 * cc)).reduce()
    exact = resid.is_zero()

    elapsed = time.monotonic() - t0
    ok = worst <= CROSS_TOL and exact
    line(6, ok, "explicit forms vs engine at 100 points each: worst "
         "%.1e <= 1e-10 (factors 2, i; 1, 1; -i, -i; -1/4 bracket, i); "
         "L2 map identity exact (%.1fs)" % (worst, elapsed))
    assert worst <= CROSS_TOL
    assert exact


def test_criterion_7_repair_certificates():
    t0 = time.monotonic()
    ok = True
    for target in repair.REPAIR_TARGETS:
        cert = repair.derive_repair(target)
        ok &= cert["residual"] == "0"
        ok &= bool(cert["coefficients"])
        ok &= "inconsistent" in cert["negative_control"]
    elapsed = time.monotonic() - t0
    line(7, ok, "three repair certificates with exact zero conservation "
         "residuals and inconsistent negative controls (%.1fs)" % elapsed)
    assert ok


def test_criterion_8_orbit_phenomenology():
    t0 = time.monotonic()
    params = ParamsTTW(1.0, 1.0, 1.0)
    ks = [RationalIndex(1), RationalIndex(2), RationalIndex(3, 2)]
    cells = scan_k(ks, params, n_starts=5, dt=1e-3, horizon=50.0, tol=1e-4,
                   seed=SEED)
    closed_all = all(c.closed for c in cells)

    h_osc = make_ttw_h(ParamsTTW(1.0, 0.0, 0.0), RationalIndex(1))
    res = find_closure(h_osc, PhasePoint.cartesian(1.0, 0.3, 0.2, -0.4),
                       dt=1e-4, horizon=5.0, tol=1e-4)
    period_ok = res.closed and abs(res.period - math.pi) <= 1e-4

    proxy = 1.414213562
    cells_i = scan_k([proxy], params, n_starts=5, dt=1e-3, horizon=50.0,
                     tol=1e-4, seed=SEED)
    open_all = all((not c.closed) for c in cells_i)

    elapsed = time.monotonic() - t0
    ok = closed_all and period_ok and open_all
    line(8, ok, "k in {1, 2, 3/2} close within horizon 50 at 1e-4 for "
         "5 starts each; oscillator period %.7f = pi +- 1e-4; irrational "
         "proxy 1.414213562 stays open, best miss %.2e (recorded as "
         "expectation) (%.0fs)"
         % (res.period if res.period else float("nan"),
            min(c.distance for c in cells_i), elapsed))
    assert closed_all
    assert period_ok
    assert open_all


def test_criterion_9_one_variable_models():
    t0 = time.monotonic()
    rep = suites.suite_models()
    elapsed = time.monotonic() - t0
    names = by_name(rep)
    model_1d = [c for n, c in names.items() if n.startswith("1-D model")]
    draws = [c for n, c in names.items() if "at 20 admissible draws" in n
             or "at 20 draws" in n]
    ok = (rep.passed and model_1d and all(c.status == PASS
                                          for c in model_1d) and draws)
    line(9, ok, "one-dimensional quantum model exact; classical models "
         "hold at 20 admissible draws to 1e-9 (%.1fs)" % elapsed)
    assert rep.passed
    assert model_1d and all(c.status == PASS for c in model_1d)
    assert draws
