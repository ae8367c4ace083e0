"""Scalar-generic math kernel.

Every observable in this package is written once and evaluated over
plain floats, complex numbers, numpy arrays (for batched point samples)
and first-order dual numbers (for forward-mode differentiation).  The
module-level functions dispatch on the argument type; ``Dual`` carries
the chain rule.  Nothing here knows about Hamiltonians.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

__all__ = ["Dual", "sin", "cos", "exp", "log", "sqrt", "atan2"]


class Dual:
    """First-order dual number ``val + eps*d`` with ``d**2 = 0``.

    ``val`` and ``eps`` may be floats, complex numbers, numpy arrays or
    further ``Dual`` instances (nesting gives second derivatives, which
    the bracket Jacobi test relies on).
    """

    __slots__ = ("val", "eps")

    def __init__(self, val, eps=0.0):
        self.val = val
        self.eps = eps

    def __repr__(self):
        return f"Dual({self.val!r}, {self.eps!r})"

    # arithmetic ------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, Dual):
            return Dual(self.val + other.val, self.eps + other.eps)
        return Dual(self.val + other, self.eps)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Dual):
            return Dual(self.val - other.val, self.eps - other.eps)
        return Dual(self.val - other, self.eps)

    def __rsub__(self, other):
        return Dual(other - self.val, -self.eps)

    def __mul__(self, other):
        if isinstance(other, Dual):
            return Dual(self.val * other.val,
                        self.val * other.eps + self.eps * other.val)
        return Dual(self.val * other, self.eps * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Dual):
            inv = 1.0 / other.val
            return Dual(self.val * inv,
                        (self.eps - self.val * inv * other.eps) * inv)
        return Dual(self.val / other, self.eps / other)

    def __rtruediv__(self, other):
        inv = 1.0 / self.val
        return Dual(other * inv, -other * inv * inv * self.eps)

    def __neg__(self):
        return Dual(-self.val, -self.eps)

    def __pos__(self):
        return self

    def __pow__(self, n):
        if not isinstance(n, int):
            raise TypeError("Dual only supports integer powers")
        if n == 0:
            return Dual(self.val * 0 + 1.0, self.eps * 0)
        if n < 0:
            return 1.0 / self.__pow__(-n)
        out = self
        for _ in range(n - 1):
            out = out * self
        return out

    # value-part comparisons; used by step-size guards, never by math
    def __abs__(self):
        return abs(self.val)

    def __eq__(self, other):
        other = other.val if isinstance(other, Dual) else other
        return self.val == other

    def __hash__(self):
        return hash(self.val)

    # elementary functions --------------------------------------------

    def sin(self):
        return Dual(sin(self.val), cos(self.val) * self.eps)

    def cos(self):
        return Dual(cos(self.val), -sin(self.val) * self.eps)

    def exp(self):
        v = exp(self.val)
        return Dual(v, v * self.eps)

    def log(self):
        return Dual(log(self.val), self.eps / self.val)

    def sqrt(self):
        v = sqrt(self.val)
        return Dual(v, self.eps / (2.0 * v))


def _is_complex(x):
    return isinstance(x, complex) or (
        isinstance(x, np.ndarray) and np.iscomplexobj(x))


def sin(x):
    if isinstance(x, Dual):
        return x.sin()
    if isinstance(x, np.ndarray):
        return np.sin(x)
    if isinstance(x, complex):
        return cmath.sin(x)
    return math.sin(x)


def cos(x):
    if isinstance(x, Dual):
        return x.cos()
    if isinstance(x, np.ndarray):
        return np.cos(x)
    if isinstance(x, complex):
        return cmath.cos(x)
    return math.cos(x)


def exp(x):
    if isinstance(x, Dual):
        return x.exp()
    if isinstance(x, np.ndarray):
        return np.exp(x)
    if isinstance(x, complex):
        return cmath.exp(x)
    return math.exp(x)


def log(x):
    if isinstance(x, Dual):
        return x.log()
    if isinstance(x, np.ndarray):
        return np.log(x)
    if isinstance(x, complex):
        return cmath.log(x)
    return math.log(x)


def sqrt(x):
    if isinstance(x, Dual):
        return x.sqrt()
    if isinstance(x, np.ndarray):
        return np.sqrt(x)
    if isinstance(x, complex):
        return cmath.sqrt(x)
    return math.sqrt(x)


def atan2(y, x):
    """Angle of the point ``(x, y)``.

    Real arguments use the standard two-argument arctangent.  Complex
    arguments use the principal branch of ``-i*log((x+iy)/r)``, which
    round-trips exactly with ``r = sqrt(x**2 + y**2)``.
    """
    if isinstance(y, Dual) or isinstance(x, Dual):
        yv, ye = (y.val, y.eps) if isinstance(y, Dual) else (y, 0.0)
        xv, xe = (x.val, x.eps) if isinstance(x, Dual) else (x, 0.0)
        v = atan2(yv, xv)
        d = xv * xv + yv * yv
        return Dual(v, (xv * ye - yv * xe) / d)
    if _is_complex(x) or _is_complex(y):
        r = sqrt(x * x + y * y)
        return -1j * log((x + 1j * y) / r)
    if isinstance(x, np.ndarray) or isinstance(y, np.ndarray):
        return np.arctan2(y, x)
    return math.atan2(y, x)
