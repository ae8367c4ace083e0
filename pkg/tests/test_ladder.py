"""Hyperbolic ladder: pairs, composition, parity extraction and the
explicit closed forms."""

import numpy as np
import pytest

from superint import ladder
from superint.dynamics import bracket
from superint.ladder import (DegenerateRadicalError, PurityViolationError,
                             RadicalValue, compose_multiple, compose_sum,
                             extract_constants, independence_check, pair_A,
                             pair_B)
from superint.model import (Observable, ParamsHolo, ParamsTTW, PhasePoint,
                            RationalIndex, SingularPointError,
                            params_from_k2_cartesian)

SEED = 20260815


def wedge_point(rng, k, family="ttw"):
    lo, hi = (0.4, 2.6) if family == "ttw" else (0.1, 2.8)
    return PhasePoint.logpolar(rng.uniform(-0.25, 0.25),
                               rng.uniform(lo, hi) / (2 * k.as_float),
                               rng.uniform(0.3, 1.3), rng.uniform(0.3, 1.3))


@pytest.mark.parametrize("family", ["ttw", "holo"])
@pytest.mark.parametrize("pq", [(1, 1), (2, 1), (1, 2), (3, 2), (5, 3)])
def test_pair_identities(family, pq):
    k = RationalIndex(*pq)
    params = ParamsTTW(1.0, 0.8, 0.6) if family == "ttw" else ParamsHolo(1.1)
    rng = np.random.default_rng(SEED)
    for _ in range(10):
        pt = wedge_point(rng, k, family)
        for pair in (pair_A(family, pt, params, k),
                     pair_B(family, pt, params, k)):
            assert pair.identity_residual() < 1e-12


def test_compose_multiple_matches_repeated_sum():
    k = RationalIndex(1, 1)
    params = ParamsTTW(1.0, 0.8, 0.6)
    rng = np.random.default_rng(SEED)
    pt = wedge_point(rng, k)
    a = pair_A("ttw", pt, params, k)
    tripled = compose_multiple(a, 3)
    manual = compose_sum(compose_sum(a, a), a)
    for x, y in ((tripled.c, manual.c), (tripled.s, manual.s)):
        diff = x + y * (-1)
        assert all(abs(complex(v)) < 1e-10 for v in diff.comps.values())


@pytest.mark.parametrize("pq,labels,orders", [
    ((1, 1), ("C", "D"), (4, 3)),        # p+q even: plain labels
    ((3, 1), ("C", "D"), (8, 7)),
    ((1, 2), ("C'", "D'"), (5, 6)),      # p+q odd: crossed orders
    ((2, 1), ("C'", "D'"), (5, 6)),
    ((3, 2), ("C'", "D'"), (9, 10)),
])
def test_ttw_parity_law(pq, labels, orders):
    k = RationalIndex(*pq)
    params = ParamsTTW(1.0, 0.8, 0.6)
    rng = np.random.default_rng(SEED)
    pt = wedge_point(rng, k)
    cons = extract_constants("ttw", pt, params, k)
    assert tuple(ec.label for ec in cons) == labels
    assert tuple(ec.order for ec in cons) == orders


@pytest.mark.parametrize("pq,orders", [
    ((1, 1), (2, 1)),
    ((3, 1), (4, 3)),
    ((2, 1), (2, 3)),
])
def test_holo_parity_law(pq, orders):
    k = RationalIndex(*pq)
    params = ParamsHolo(1.1)
    rng = np.random.default_rng(SEED)
    pt = wedge_point(rng, k, "holo")
    cons = extract_constants("holo", pt, params, k)
    assert tuple(ec.order for ec in cons) == orders


def test_extracted_constants_conserved_pointwise():
    k = RationalIndex(3, 2)
    params = ParamsTTW(1.0, 1.0, 1.0)
    from superint.model import make_ttw_h
    h = make_ttw_h(params, k)
    rng = np.random.default_rng(SEED)

    def const(which):
        def fn(q1, q2, p1, p2):
            pt = PhasePoint.logpolar(q1, q2, p1, p2)
            return extract_constants("ttw", pt, params, k)[which].value
        return Observable("K%d" % which, "logpolar", fn)

    pts = [wedge_point(rng, k) for _ in range(5)]
    for which in (0, 1):
        obs = const(which)
        for pt in pts:
            assert abs(bracket(obs, h, pt)) < 1e-9 * max(1.0, abs(obs(pt)))


def test_purity_violation_on_wrong_normalizer():
    # multiply the normalizer by a stray rho1: every component lands on
    # the wrong parity mask and extraction must refuse
    k = RationalIndex(3, 2)
    params = ParamsTTW(1.0, 0.8, 0.6)
    rng = np.random.default_rng(SEED)
    pt = wedge_point(rng, k)
    a = pair_A("ttw", pt, params, k)
    b = pair_B("ttw", pt, params, k)
    total = compose_sum(compose_multiple(a, k.q), compose_multiple(b, k.p))
    basis = total.c.basis
    norm = (RadicalValue.radical(basis, 1) ** k.q
            * RadicalValue.radical(basis, 2) ** k.p
            * RadicalValue.radical(basis, 0))
    with pytest.raises(PurityViolationError):
        ladder._extract_one(total.c * norm, 0 if (k.p + k.q) % 2 == 0 else 1)


def test_wall_point_raises():
    k = RationalIndex(2, 1)
    params = ParamsTTW(1.0, 1.0, 1.0)
    pt = PhasePoint.logpolar(0.0, 0.0, 0.5, 0.5)   # sin(2k theta) = 0
    with pytest.raises(SingularPointError):
        extract_constants("ttw", pt, params, k)


def test_holo_zero_coupling_degenerate():
    k = RationalIndex(2, 1)
    pt = PhasePoint.logpolar(0.1, 0.3, 0.5, 0.5)
    with pytest.raises(DegenerateRadicalError):
        extract_constants("holo", pt, ParamsHolo(0.0), k)


def test_independence_check_positive_and_negative():
    k = RationalIndex(2, 1)
    params = ParamsTTW(1.0, 0.8, 0.6)
    from superint.model import make_ttw_h, make_ttw_l2
    h = make_ttw_h(params, k)
    l2 = make_ttw_l2(params, k)
    rng = np.random.default_rng(SEED)
    pts = [wedge_point(rng, k) for _ in range(6)]

    def fn(q1, q2, p1, p2):
        pt = PhasePoint.logpolar(q1, q2, p1, p2)
        return extract_constants("ttw", pt, params, k)[0].value

    obs = Observable("C", "logpolar", fn)
    ok, witness = independence_check(obs, l2, pts)
    assert ok and witness in pts
    flat, _ = independence_check(l2, l2, pts)
    assert not flat
    conserved, _ = independence_check(obs, h, pts)
    assert not conserved


# -- explicit closed forms against the engine --------------------------------
# Each explicit form matches the extracted constant up to one constant
# factor, recorded here next to the check.


def test_explicit_ttw_khalf_factors():
    params = ParamsTTW(0.9, 1.2, 0.7)
    k = RationalIndex(1, 2)
    rng = np.random.default_rng(SEED)
    for _ in range(10):
        pt = wedge_point(rng, k)
        cv, dv = extract_constants("ttw", pt, params, k)
        fifth, sixth = ladder.explicit_ttw_khalf(pt, params)
        assert abs(cv.value - 2 * fifth) <= 1e-10 * max(1.0, abs(cv.value))
        assert abs(dv.value - 1j * sixth) <= 1e-10 * max(1.0, abs(dv.value))


def test_explicit_holo_k2_factors():
    params = ParamsHolo(1.3)
    k = RationalIndex(2, 1)
    rng = np.random.default_rng(SEED)
    for _ in range(10):
        pt = wedge_point(rng, k, "holo")
        cv, dv = extract_constants("holo", pt, params, k)
        s_val, c_val = ladder.explicit_holo_k2(pt, params)
        assert abs(cv.value - c_val) <= 1e-10 * max(1.0, abs(cv.value))
        assert abs(dv.value - s_val) <= 1e-10 * max(1.0, abs(dv.value))


def test_explicit_holo_k3_factors():
    params = ParamsHolo(0.8)
    k = RationalIndex(3, 1)
    rng = np.random.default_rng(SEED)
    for _ in range(10):
        pt = wedge_point(rng, k, "holo")
        cv, dv = extract_constants("holo", pt, params, k)
        k1v, k2v, _ = ladder.explicit_holo_k3(pt, params)
        assert abs(cv.value + 1j * k2v) <= 1e-10 * max(1.0, abs(cv.value))
        assert abs(dv.value + 1j * k1v) <= 1e-10 * max(1.0, abs(dv.value))


def test_explicit_ttw_k2_against_engine():
    # cartesian letters (a, b, c); the engine runs on the family letters
    # through beta = b, gamma = 4c
    a, b, c = 0.8, 1.1, 0.6
    pc = ParamsTTW(a, b, c)
    pe = params_from_k2_cartesian(a, b, c)
    k = RationalIndex(2, 1)
    rng = np.random.default_rng(SEED)

    def obs(which):
        return Observable("C%d" % (which + 1), "cartesian",
                          lambda x, y, px, py: ladder.explicit_ttw_k2(
                              PhasePoint.cartesian(x, y, px, py), pc)[which])

    c1_obs, c2_obs = obs(0), obs(1)
    from superint.model import convert
    for _ in range(10):
        pt = wedge_point(rng, k)
        cv, dv = extract_constants("ttw", pt, pe, k)
        c1v, c2v = ladder.explicit_ttw_k2(pt, pc)
        x, y, px, py = convert(pt, "cartesian").coords
        hv = (px * px + py * py + a * (x * x + y * y)
              + b * (x * x + y * y) / (x * x - y * y) ** 2
              + c * (x * x + y * y) / (x * x * y * y))
        pred_c = -0.25 * bracket(c1_obs, c2_obs, pt)
        pred_d = 1j * (2 * c1v * c2v - c1v * hv * hv - 2 * b * hv * hv
                       + 2 * c * hv * hv + 2 * b * c2v + 4 * c * c2v
                       + 4 * a * b * c1v + 4 * a * b * b + 8 * a * b * c)
        assert abs(cv.value - pred_c) <= 1e-9 * max(1.0, abs(cv.value))
        assert abs(dv.value - pred_d) <= 1e-10 * max(1.0, abs(dv.value))


def test_explicit_ttw_k2_conserved():
    a, b, c = 0.8, 1.1, 0.6
    pc = ParamsTTW(a, b, c)
    k = RationalIndex(2, 1)

    def h_fn(x, y, px, py):
        return (px * px + py * py + a * (x * x + y * y)
                + b * (x * x + y * y) / (x * x - y * y) ** 2
                + c * (x * x + y * y) / (x * x * y * y))

    h = Observable("H", "cartesian", h_fn)
    rng = np.random.default_rng(SEED)
    for which in (0, 1):
        obs = Observable("C%d" % (which + 1), "cartesian",
                         lambda x, y, px, py, w=which: ladder.explicit_ttw_k2(
                             PhasePoint.cartesian(x, y, px, py), pc)[w])
        for _ in range(5):
            pt = wedge_point(rng, k)
            assert abs(bracket(obs, h, pt)) < 1e-9 * max(1.0, abs(obs(pt)))
