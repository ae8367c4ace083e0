"""Rational functions with denominators kept in factored form.

Every chart registers the finitely many polynomials that are ever
allowed to appear in a denominator (coordinate walls, radicand
numerators).  A RatFun is then a numerator polynomial over a multiset
of registered factors, and cancellation is exact trial division by
those factors, never a general gcd.  Equality is decided by
cross-multiplication, so an unreduced intermediate is merely larger,
not wrong.

``inverse`` factors the numerator over the same registry (up to a
scalar times a Laurent monomial), which is exactly what the ladder
needs to divide by radicand numerators.
"""

from __future__ import annotations

from fractions import Fraction

from .gaussian import GaussRat
from .rings import Poly, Ring

__all__ = ["FactorBase", "RatFun"]


class FactorBase:
    """Named denominator factors for one ring."""

    def __init__(self, ring: Ring, factors: dict):
        self.ring = ring
        self.factors = {}
        for name, poly in factors.items():
            if not isinstance(poly, Poly) or poly.ring is not ring:
                raise ValueError("factor %r is not a polynomial of this ring"
                                 % (name,))
            if poly.is_zero() or poly.is_scalar():
                raise ValueError("factor %r must be nonconstant" % (name,))
            self.factors[name] = poly
        self._expand_cache = {}

    def expand(self, powers: dict) -> Poly:
        """The product of the registered factors at the given powers."""
        key = tuple(sorted((n, e) for n, e in powers.items() if e))
        hit = self._expand_cache.get(key)
        if hit is not None:
            return hit
        out = self.ring.one()
        for name, e in key:
            out = out * self.factors[name] ** e
        self._expand_cache[key] = out
        return out

    def __repr__(self):
        return "FactorBase(%s)" % (", ".join(sorted(self.factors)),)


class RatFun:
    """num / prod(factor**power) with powers over a FactorBase."""

    __slots__ = ("base", "num", "den")

    def __init__(self, base: FactorBase, num: Poly, den: dict = None):
        self.base = base
        self.num = num
        if num.is_zero():
            self.den = {}
        else:
            self.den = {n: e for n, e in (den or {}).items() if e}
            for n, e in self.den.items():
                if n not in base.factors or e < 0:
                    raise ValueError("bad denominator entry %r: %r" % (n, e))

    # -- constructors ------------------------------------------------------
    @classmethod
    def from_poly(cls, base, poly: Poly) -> "RatFun":
        return cls(base, poly)

    @classmethod
    def scalar(cls, base, c) -> "RatFun":
        return cls(base, base.ring.const(c))

    def _coerce(self, other):
        if isinstance(other, RatFun):
            if other.base is not self.base:
                raise ValueError("mixed factor bases")
            return other
        if isinstance(other, Poly):
            return RatFun(self.base, other)
        if isinstance(other, (GaussRat, int, Fraction)):
            return RatFun.scalar(self.base, other)
        return None

    # -- predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return not self.den

    def __bool__(self):
        return not self.num.is_zero()

    @property
    def numerator(self) -> Poly:
        return self.num

    @property
    def denominator(self) -> Poly:
        return self.base.expand(self.den)

    # -- reduction ---------------------------------------------------------
    def reduce(self) -> "RatFun":
        """Cancel registered factors out of the numerator, exactly."""
        if not self.den or self.num.is_zero():
            return self
        num = self.num
        den = dict(self.den)
        for name in sorted(den):
            f = self.base.factors[name]
            while den.get(name, 0):
                q = num.div_exact(f)
                if q is None:
                    break
                num = q
                den[name] -= 1
        return RatFun(self.base, num, den)

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not self.den and not other.den:
            return RatFun(self.base, self.num + other.num)
        names = set(self.den) | set(other.den)
        den = {n: max(self.den.get(n, 0), other.den.get(n, 0)) for n in names}
        lift_s = {n: den[n] - self.den.get(n, 0) for n in names}
        lift_o = {n: den[n] - other.den.get(n, 0) for n in names}
        num = (self.num * self.base.expand(lift_s)
               + other.num * self.base.expand(lift_o))
        return RatFun(self.base, num, den)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self):
        return RatFun(self.base, -self.num, self.den)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        den = dict(self.den)
        for n, e in other.den.items():
            den[n] = den.get(n, 0) + e
        out = RatFun(self.base, self.num * other.num, den)
        return out.reduce() if den else out

    __rmul__ = __mul__

    def inverse(self) -> "RatFun":
        """1/self; the numerator must factor over the registered base
        up to a scalar times a Laurent monomial."""
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        rest = self.num
        den = {}
        changed = True
        while changed and not rest.is_monomial():
            changed = False
            for name, f in self.base.factors.items():
                q = rest.div_exact(f)
                if q is not None:
                    den[name] = den.get(name, 0) + 1
                    rest = q
                    changed = True
        if not rest.is_monomial():
            raise ValueError("numerator does not factor over the base: %s"
                             % (rest,))
        (e, c), = rest.terms.items()
        ring = self.base.ring
        for i, ei in enumerate(e):
            if ei and ring.names[i] not in ring.laurent:
                raise ValueError("leftover non-Laurent monomial factor %s"
                                 % (rest,))
        inv_mono = Poly(ring, {tuple(-x for x in e): GaussRat(1) / c})
        num = self.base.expand(self.den) * inv_mono
        return RatFun(self.base, num, den).reduce()

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("exponent must be int")
        if n < 0:
            return self.inverse() ** (-n)
        out = RatFun.scalar(self.base, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- comparison -----------------------------------------------------------
    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.den == other.den:
            return self.num == other.num
        return (self.num * self.base.expand(other.den)
                == other.num * self.base.expand(self.den))

    __hash__ = None

    # -- calculus ----------------------------------------------------------
    def diff(self, name: str) -> "RatFun":
        return self.derive(lambda p: p.diff(name))

    def derive(self, dpoly) -> "RatFun":
        """Apply a derivation given by its action on polynomials.

        Quotient rule over the factored denominator: each factor's power
        climbs by one and the result is reduced, so no gcd is needed.
        """
        if not self.den:
            return RatFun(self.base, dpoly(self.num))
        names = sorted(self.den)
        den1 = {n: self.den[n] + 1 for n in names}
        allf = self.base.expand({n: 1 for n in names})
        num = dpoly(self.num) * allf
        for n in names:
            others = self.base.expand({m: 1 for m in names if m != n})
            num = num - (self.num * dpoly(self.base.factors[n])
                         * others * self.den[n])
        return RatFun(self.base, num, den1).reduce()

    # -- evaluation --------------------------------------------------------
    def subs_numeric(self, assign: dict) -> complex:
        val = self.num.subs_numeric(assign)
        for n, e in self.den.items():
            val /= self.base.factors[n].subs_numeric(assign) ** e
        return val

    # -- display -------------------------------------------------------------
    def __str__(self):
        if not self.den:
            return str(self.num)
        dbits = []
        for n in sorted(self.den):
            e = self.den[n]
            dbits.append(n if e == 1 else "%s^%d" % (n, e))
        return "(%s) / (%s)" % (self.num, " * ".join(dbits))

    def __repr__(self):
        s = str(self)
        if len(s) > 120:
            s = s[:117] + "..."
        return "RatFun(%s)" % (s,)
