"""Higher-order constants from the hyperbolic ladder, numerically.

For any rational index k = p/q both families carry two polynomial
constants of motion beyond H and the separation constant.  They fall
out of hyperbolic addition: q copies of the angular pair plus p copies
of the radial pair, normalized by the right radical powers, leave one
pure parity component each.  Here we extract them at a point, confirm
{., H} = 0 by automatic differentiation, and watch them hold still
along a trajectory.
"""

import numpy as np

from superint import ladder
from superint.dynamics import bracket, drift_report, integrate_rk4
from superint.model import (Observable, ParamsHolo, ParamsTTW, PhasePoint,
                            RationalIndex, make_holo_h, make_ttw_h,
                            make_ttw_l2)

rng = np.random.default_rng(7)

## extraction at a point, barrier family at k = 5/2
params = ParamsTTW(1.0, 1.0, 1.0)
k = RationalIndex(5, 2)
pt = PhasePoint.logpolar(0.1, 1.3 / (2 * k.as_float), 0.8, 1.0)
for ec in ladder.extract_constants("ttw", pt, params, k):
    print("%-3s order %-3d value %s" % (ec.label, ec.order, ec.value))

## conservation check by dual-number bracket at random wedge points
h = make_ttw_h(params, k)


def constant(which):
    def fn(q1, q2, p1, p2):
        p = PhasePoint.logpolar(q1, q2, p1, p2)
        return ladder.extract_constants("ttw", p, params, k)[which].value
    return Observable("KD"[which], "logpolar", fn)


worst = 0.0
for _ in range(20):
    probe = PhasePoint.logpolar(rng.uniform(-0.2, 0.2),
                                rng.uniform(0.4, 2.6) / (2 * k.as_float),
                                rng.uniform(0.3, 1.2), rng.uniform(0.3, 1.2))
    for which in (0, 1):
        obs = constant(which)
        worst = max(worst, abs(bracket(obs, h, probe))
                    / max(1.0, abs(obs(probe))))
print("worst |{const, H}| over 20 points: %.2e" % worst)

## drift along a trajectory, holomorphic family at k = 3/2
ph = ParamsHolo(1.0)
kh = RationalIndex(3, 2)
hh = make_holo_h(ph, kh)
start = PhasePoint.logpolar(0.0, 0.5, 0.25, 0.3)


def hconst(which):
    def fn(q1, q2, p1, p2):
        p = PhasePoint.logpolar(q1, q2, p1, p2)
        return ladder.extract_constants("holo", p, ph, kh)[which].value
    return Observable("CD"[which], "logpolar", fn)


traj = integrate_rk4(hh, start, 1e-3, 10000, chart="logpolar",
                     record_every=100)
rep = drift_report(traj, (hh, hconst(0), hconst(1)))
print("relative drift over t in [0, 10]:")
for name, val in rep.items():
    print("  %-8s %.2e" % (name, val))
