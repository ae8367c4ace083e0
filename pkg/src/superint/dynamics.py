"""Forward-mode gradients, canonical brackets and integrators.

The bracket here is the canonical one with ``{x, px} = +1``, i.e.
``{f,g} = sum_i df/dq_i dg/dp_i - df/dp_i dg/dq_i``, evaluated in the
chart of the supplied point (all three charts are canonical, so the
value is chart-independent).  Integration offers a position-Verlet
leapfrog for the real barrier dynamics, whose kinetic term is exactly
``px**2 + py**2`` in Cartesian coordinates, and a general RK4 for the
complex holomorphic flow.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._scalars import Dual
from .model import Observable, PhasePoint, convert

__all__ = [
    "Dual",
    "gradient",
    "bracket",
    "Trajectory",
    "integrate_leapfrog",
    "integrate_rk4",
    "drift_report",
    "BarrierCollisionError",
    "DivergenceError",
]


class BarrierCollisionError(RuntimeError):
    """Step-size refinement bottomed out against a potential wall."""


class DivergenceError(RuntimeError):
    """A trajectory coordinate left the trusted numerical range."""


def gradient(obs: Observable, point: PhasePoint):
    """Partials of ``obs`` with respect to the point's own coordinates.

    Returns the 4-tuple ``(d/dq1, d/dq2, d/dp1, d/dp2)``.  Each partial
    comes from one dual-number evaluation, so the result is exact up to
    rounding (no finite-difference step enters anywhere).

    Every coordinate is wrapped, not just the perturbed one: the zero
    eps on the bystanders keeps this level's duals outermost, so the
    coordinates may themselves be duals from an enclosing gradient
    (nested brackets need this; a lone ``Dual(c, 1)`` next to a raw
    outer dual would conflate the two eps channels).
    """
    coords = point.coords
    out = []
    for i in range(4):
        seeded = [Dual(c, 1.0 if j == i else 0.0)
                  for j, c in enumerate(coords)]
        val = obs(point.with_coords(*seeded))
        out.append(val.eps if isinstance(val, Dual) else 0.0)
    return tuple(out)


def _grad_batch(obs: Observable, point: PhasePoint):
    # all four partials from a single evaluation; array-valued points
    # get one-hot eps rows that broadcast against the batch axis
    coords = point.coords
    shape = getattr(coords[0], "shape", ())
    eye = np.eye(4)
    seeded = [Dual(c, eye[i].reshape((4,) + (1,) * len(shape)))
              for i, c in enumerate(coords)]
    val = obs(point.with_coords(*seeded))
    if not isinstance(val, Dual):
        z = np.zeros((4,) + shape)
        return tuple(z)
    eps = val.eps + np.zeros((4,) + shape)
    return tuple(eps[i] for i in range(4))


def bracket(f: Observable, g: Observable, point: PhasePoint):
    """Canonical Poisson bracket ``{f, g}`` at ``point``."""
    df = gradient(f, point)
    dg = gradient(g, point)
    return (df[0] * dg[2] - df[2] * dg[0]
            + df[1] * dg[3] - df[3] * dg[1])


@dataclass
class Trajectory:
    """Recorded states of one integration run.

    ``times`` is strictly increasing and aligned with ``states``; with
    ``record_every=1`` there are ``steps + 1`` states.  States may hold
    arrays, in which case the trajectory is a batch sharing time grid.
    """

    times: list = field(default_factory=list)
    states: list = field(default_factory=list)

    def append(self, t, state):
        self.times.append(t)
        self.states.append(state)

    def __len__(self):
        return len(self.states)

    def series(self, obs: Observable):
        """Values of ``obs`` along the trajectory, stacked when batched."""
        vals = [obs(s) for s in self.states]
        try:
            return np.asarray(vals)
        except Exception:
            return vals


def _maxabs(x):
    return float(np.max(np.abs(x)))


def _leap_step(h, x, y, px, py, dt, e0, depth):
    # position Verlet: half drift (qdot = 2p), full kick, half drift
    x1 = x + dt * px
    y1 = y + dt * py
    gx, gy, _, _ = _grad_batch(h, PhasePoint.cartesian(x1, y1, px, py))
    px1 = px - dt * gx
    py1 = py - dt * gy
    x2 = x1 + dt * px1
    y2 = y1 + dt * py1
    e1 = h(PhasePoint.cartesian(x2, y2, px1, py1))
    if _maxabs(e1 - e0) > 1e-3 * max(1.0, _maxabs(e0)):
        if depth >= 20:
            raise BarrierCollisionError(
                "energy jump persisted through 20 step halvings")
        hx, hy, hpx, hpy, em = _leap_step(h, x, y, px, py, dt / 2, e0, depth + 1)
        return _leap_step(h, hx, hy, hpx, hpy, dt / 2, em, depth + 1)
    return x2, y2, px1, py1, e1


def integrate_leapfrog(h: Observable, point0: PhasePoint, dt: float,
                       steps: int, record_every: int = 1) -> Trajectory:
    """Symplectic position-Verlet integration in the Cartesian chart.

    A step that jumps the energy by more than 1e-3 (relative) is retried
    with halved substeps, up to 20 levels; running out of levels raises
    :class:`BarrierCollisionError`.  Only every ``record_every``-th state
    is stored (plus the final one).
    """
    p = convert(point0, "cartesian")
    x, y, px, py = p.coords
    traj = Trajectory()
    traj.append(0.0, PhasePoint.cartesian(x, y, px, py))
    e = h(PhasePoint.cartesian(x, y, px, py))
    for n in range(1, steps + 1):
        x, y, px, py, e = _leap_step(h, x, y, px, py, dt, e, 0)
        if n % record_every == 0 or n == steps:
            traj.append(n * dt, PhasePoint.cartesian(x, y, px, py))
    return traj


def integrate_rk4(h: Observable, point0: PhasePoint, dt: float,
                  steps: int, chart: str | None = None,
                  record_every: int = 1) -> Trajectory:
    """Classical RK4 for the canonical equations in a fixed chart.

    Works over complex coordinates; any coordinate magnitude above 1e12
    aborts with :class:`DivergenceError`.
    """
    chart = chart or point0.chart
    p = convert(point0, chart)
    state = list(p.coords)

    def rhs(s):
        g = _grad_batch(h, PhasePoint(chart, *s))
        return (g[2], g[3], -g[0], -g[1])

    traj = Trajectory()
    traj.append(0.0, PhasePoint(chart, *state))
    for n in range(1, steps + 1):
        k1 = rhs(state)
        k2 = rhs([s + dt / 2 * k for s, k in zip(state, k1)])
        k3 = rhs([s + dt / 2 * k for s, k in zip(state, k2)])
        k4 = rhs([s + dt * k for s, k in zip(state, k3)])
        state = [s + dt / 6 * (a + 2 * b + 2 * c + d)
                 for s, a, b, c, d in zip(state, k1, k2, k3, k4)]
        if any(_maxabs(s) > 1e12 for s in state):
            raise DivergenceError(f"coordinate exceeded 1e12 at step {n}")
        if n % record_every == 0 or n == steps:
            traj.append(n * dt, PhasePoint(chart, *state))
    return traj


def drift_report(traj: Trajectory, observables) -> dict:
    """Worst relative drift of each observable along a trajectory.

    Reports ``max_t |f(t) - f(0)| / max(1, |f(0)|)`` per observable; a
    batched trajectory reports the worst column.
    """
    if isinstance(observables, dict):
        items = observables.items()
    else:
        items = [(obs.name, obs) for obs in observables]
    out = {}
    for name, obs in items:
        vals = [obs(s) for s in traj.states]
        ref = vals[0]
        num = max(_maxabs(v - ref) for v in vals[1:]) if len(vals) > 1 else 0.0
        out[name] = num / max(1.0, _maxabs(ref))
    return out
