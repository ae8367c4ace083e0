"""Potential families, separation constants and chart conversions.

Two families of superintegrable plane Hamiltonians live here:

* the deformed oscillator with angular barriers,
  ``H = pr**2 + ptheta**2/r**2 + a*r**2 + b/(r*cos(k*theta))**2
  + c/(r*sin(k*theta))**2``, and
* the holomorphic family ``H = px**2 + py**2 +
  a*(x+iy)**(k-1)/(x-iy)**(k+1)``,

both indexed by a rational ``k = p/q``.  Hamiltonians and their
second-order separation constants are exposed as chart-aware
:class:`Observable` values, generic over any scalar type supported by
:mod:`superint._scalars` so the same code serves dynamics, duals and
batched numerics.

Parameter normalisation: ``ParamsTTW`` always carries the generic polar
letters (alias ``alpha, beta, gamma``).  The printed Cartesian closed
forms for k = 2 use a different scale for the sine-barrier strength;
:func:`params_from_k2_cartesian` maps those letters in (``beta = b``,
``gamma = 4*c``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import _scalars as sm

__all__ = [
    "SingularPointError",
    "RationalIndex",
    "ParamsTTW",
    "ParamsHolo",
    "params_from_k2_cartesian",
    "PhasePoint",
    "convert",
    "Observable",
    "make_ttw_h",
    "make_ttw_l2",
    "make_holo_h",
    "make_holo_l",
]

CHARTS = ("cartesian", "polar", "logpolar")

# coordinate labels per chart, used by reports and CSV headers
COORD_NAMES = {
    "cartesian": ("x", "y", "px", "py"),
    "polar": ("r", "theta", "pr", "ptheta"),
    "logpolar": ("R", "theta", "pR", "ptheta"),
}


class SingularPointError(ValueError):
    """Evaluation or conversion hit a singular configuration."""


@dataclass(frozen=True)
class RationalIndex:
    """Rational deformation index ``k = p/q`` in lowest terms."""

    p: int
    q: int = 1

    def __post_init__(self):
        if not (isinstance(self.p, int) and isinstance(self.q, int)):
            raise TypeError("p and q must be integers")
        if self.p < 1 or self.q < 1:
            raise ValueError("p and q must be positive")
        if gcd(self.p, self.q) != 1:
            raise ValueError(f"{self.p}/{self.q} is not in lowest terms")

    @property
    def value(self) -> Fraction:
        return Fraction(self.p, self.q)

    @property
    def as_float(self) -> float:
        return self.p / self.q

    def __str__(self):
        return f"{self.p}/{self.q}"


@dataclass(frozen=True)
class ParamsTTW:
    """Oscillator strength and the two angular barrier strengths.

    The fields are the generic polar parameters; ``alpha``, ``beta``,
    ``gamma`` are aliases for the same quantities.  Real dynamics wants
    ``a, b, c >= 0`` so the barriers confine the motion to one wedge.
    """

    a: complex
    b: complex
    c: complex

    @property
    def alpha(self):
        return self.a

    @property
    def beta(self):
        return self.b

    @property
    def gamma(self):
        return self.c


def params_from_k2_cartesian(a, b, c) -> ParamsTTW:
    """Polar parameters matching the printed k = 2 Cartesian letters.

    The Cartesian closed forms write the sine barrier as
    ``c*(x**2+y**2)/(x**2*y**2)`` which is a quarter of the generic
    polar strength, hence ``beta = b`` and ``gamma = 4*c``.
    """
    return ParamsTTW(a, b, 4 * c)


@dataclass(frozen=True)
class ParamsHolo:
    """Coupling of the holomorphic potential."""

    a: complex


@dataclass(frozen=True)
class PhasePoint:
    """A phase-space point tagged with its chart.

    ``(q1, q2, p1, p2)`` reads ``(x, y, px, py)``, ``(r, theta, pr,
    ptheta)`` or ``(R, theta, pR, ptheta)`` depending on ``chart``.
    Coordinates may be floats, complex numbers, numpy arrays or duals.
    """

    chart: str
    q1: object
    q2: object
    p1: object
    p2: object

    def __post_init__(self):
        if self.chart not in CHARTS:
            raise ValueError(f"unknown chart {self.chart!r}")

    @classmethod
    def cartesian(cls, x, y, px, py):
        return cls("cartesian", x, y, px, py)

    @classmethod
    def polar(cls, r, theta, pr, ptheta):
        return cls("polar", r, theta, pr, ptheta)

    @classmethod
    def logpolar(cls, R, theta, pR, ptheta):
        return cls("logpolar", R, theta, pR, ptheta)

    @property
    def coords(self):
        return (self.q1, self.q2, self.p1, self.p2)

    def with_coords(self, q1, q2, p1, p2):
        return PhasePoint(self.chart, q1, q2, p1, p2)


def _to_polar(pt: PhasePoint) -> PhasePoint:
    if pt.chart == "polar":
        return pt
    if pt.chart == "cartesian":
        x, y, px, py = pt.coords
        rsq = x * x + y * y
        if not isinstance(rsq, sm.Dual) and rsq == 0:
            raise SingularPointError("polar chart undefined at the origin")
        r = sm.sqrt(rsq)
        theta = sm.atan2(y, x)
        pr = (x * px + y * py) / r
        ptheta = x * py - y * px
        return PhasePoint.polar(r, theta, pr, ptheta)
    # logpolar
    R, theta, pR, ptheta = pt.coords
    r = sm.exp(R)
    return PhasePoint.polar(r, theta, pR / r, ptheta)


def _from_polar(pt: PhasePoint, chart: str) -> PhasePoint:
    r, theta, pr, ptheta = pt.coords
    if chart == "polar":
        return pt
    if chart == "cartesian":
        co = sm.cos(theta)
        si = sm.sin(theta)
        x = r * co
        y = r * si
        px = pr * co - ptheta * si / r
        py = pr * si + ptheta * co / r
        return PhasePoint.cartesian(x, y, px, py)
    # logpolar; pR = r*pr is the momentum conjugate to R = log r
    return PhasePoint.logpolar(sm.log(r), theta, r * pr, ptheta)


def convert(point: PhasePoint, chart: str) -> PhasePoint:
    """Canonical change of chart.  Round trips are identity to 1e-12."""
    if chart not in CHARTS:
        raise ValueError(f"unknown chart {chart!r}")
    if chart == point.chart:
        return point
    return _from_polar(_to_polar(point), chart)


class Observable:
    """A named, chart-aware scalar function of a phase point.

    ``fn`` takes the four coordinates of the natural chart.  Alternate
    native evaluations (used where a chart admits an exact closed form
    with honest singularity detection) live in ``alt``.  Division by an
    exact zero anywhere inside surfaces as :class:`SingularPointError`.
    """

    def __init__(self, name, chart, fn, alt=None):
        self.name = name
        self.chart = chart
        self.fn = fn
        self.alt = dict(alt) if alt else {}

    def __repr__(self):
        return f"Observable({self.name!r}, chart={self.chart!r})"

    def __call__(self, point: PhasePoint):
        fn = self.alt.get(point.chart)
        if fn is None:
            if point.chart != self.chart:
                point = convert(point, self.chart)
            fn = self.fn
        try:
            return fn(*point.coords)
        except ZeroDivisionError as err:
            raise SingularPointError(
                f"{self.name} singular at the given point") from err


def _wall_guard(name, co, si, b, c):
    # exact-zero walls only; floats never land on them by accident.
    # A wall with zero coupling is not a wall.
    for val, coeff, which in ((co, b, "cos"), (si, c, "sin")):
        if coeff == 0:
            continue
        v = val.val if isinstance(val, sm.Dual) else val
        if not hasattr(v, "shape") and v == 0:
            raise SingularPointError(f"{name} singular: {which}(k*theta) = 0")


def make_ttw_h(params: ParamsTTW, k: RationalIndex) -> Observable:
    """Hamiltonian of the oscillator-with-barriers family.

    Polar form ``pr**2 + ptheta**2/r**2 + a*r**2 + b/(r*cos(k*theta))**2
    + c/(r*sin(k*theta))**2``; the log-polar evaluation multiplies the
    bracket by ``exp(-2R)``.  For k = 2 the Cartesian closed form (with
    the parameter map of :func:`params_from_k2_cartesian`) is evaluated
    natively, so its singular sets x**2 = y**2 and x*y = 0 are detected
    exactly.
    """
    a, b, c = params.a, params.b, params.c
    kf = k.as_float

    def polar_fn(r, theta, pr, ptheta):
        co = sm.cos(kf * theta)
        si = sm.sin(kf * theta)
        _wall_guard("ttw H", co, si, b, c)
        rsq = r * r
        val = pr * pr + (ptheta * ptheta) / rsq + a * rsq
        if b != 0:
            val = val + b / (rsq * co * co)
        if c != 0:
            val = val + c / (rsq * si * si)
        return val

    def logpolar_fn(R, theta, pR, ptheta):
        co = sm.cos(kf * theta)
        si = sm.sin(kf * theta)
        _wall_guard("ttw H", co, si, b, c)
        w = sm.exp(2.0 * R)
        val = pR * pR + ptheta * ptheta + a * w * w
        if b != 0:
            val = val + b / (co * co)
        if c != 0:
            val = val + c / (si * si)
        return val / w

    alt = {"logpolar": logpolar_fn}

    if k.p == 2 and k.q == 1:
        bc, cc = b, c / 4  # printed Cartesian letters

        def cart_fn(x, y, px, py):
            rsq = x * x + y * y
            val = px * px + py * py + a * rsq
            if bc != 0:
                d1 = x * x - y * y
                val = val + bc * rsq / (d1 * d1)
            if cc != 0:
                val = val + cc * rsq / (x * x * y * y)
            return val

        alt["cartesian"] = cart_fn

    return Observable("H_ttw", "polar", polar_fn, alt)


def make_ttw_l2(params: ParamsTTW, k: RationalIndex) -> Observable:
    """Second-order separation constant ``L2`` of the barrier family."""
    b, c = params.b, params.c
    kf = k.as_float

    def fn(q1, theta, p1, ptheta):
        co = sm.cos(kf * theta)
        si = sm.sin(kf * theta)
        _wall_guard("L2", co, si, b, c)
        val = ptheta * ptheta
        if b != 0:
            val = val + b / (co * co)
        if c != 0:
            val = val + c / (si * si)
        return val

    # theta and ptheta are shared by the polar and log-polar charts
    return Observable("L2", "polar", fn, alt={"logpolar": fn})


def make_holo_h(params: ParamsHolo, k: RationalIndex) -> Observable:
    """Hamiltonian of the holomorphic family.

    The log-polar form ``exp(-2R)*(pR**2 + ptheta**2 + a*exp(2i*k*theta))``
    is the native one: it is entire in all four coordinates, which pins
    the branch of the rational power for non-integer k.  For integer k
    the Cartesian rational form is evaluated directly.
    """
    a = params.a
    kf = k.as_float

    def logpolar_fn(R, theta, pR, ptheta):
        w = sm.exp(2.0 * R)
        return (pR * pR + ptheta * ptheta
                + a * sm.exp(2j * kf * theta)) / w

    alt = {}
    if k.q == 1:
        n = k.p

        def cart_fn(x, y, px, py):
            zbar = x - 1j * y
            if not hasattr(zbar, "shape") and not isinstance(zbar, sm.Dual) \
                    and zbar == 0:
                raise SingularPointError("holo H singular at x = i*y")
            return (px * px + py * py
                    + a * (x + 1j * y) ** (n - 1) / zbar ** (n + 1))

        alt["cartesian"] = cart_fn

    return Observable("H_holo", "logpolar", logpolar_fn, alt)


def make_holo_l(params: ParamsHolo, k: RationalIndex) -> Observable:
    """Angular constant ``L = ptheta**2 + a*exp(2i*k*theta)``."""
    a = params.a
    kf = k.as_float

    def fn(q1, theta, p1, ptheta):
        return ptheta * ptheta + a * sm.exp(2j * kf * theta)

    return Observable("L", "logpolar", fn, alt={"polar": fn})
