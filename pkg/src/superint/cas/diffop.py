"""Differential operators with exact rational-function coefficients.

An operator is a sparse map {multi-index: RatFun} over a fixed tuple
of differentiation variables.  Composition is the generalised Leibniz
rule; derivative chains of the right factor's coefficients are cached
per term so high-order compositions stay affordable.

Products respect noncommutativity: ``A * f`` composes A with the
multiplication operator f (Leibniz), while ``f * A`` multiplies
coefficients on the left.  Plain scalars commute and may sit on either
side.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import comb

from .gaussian import GaussRat
from .ratfun import FactorBase, RatFun
from .rings import Poly

__all__ = ["DiffOp", "op_compose", "op_commutator", "sym2", "sym3"]


class DiffOp:
    """sum_alpha a_alpha(x) * d^alpha over fixed variables."""

    __slots__ = ("base", "dvars", "terms")

    def __init__(self, base: FactorBase, dvars, terms: dict):
        self.base = base
        self.dvars = tuple(dvars)
        n = len(self.dvars)
        clean = {}
        for midx, coeff in terms.items():
            midx = tuple(midx)
            if len(midx) != n or any(m < 0 for m in midx):
                raise ValueError("bad multi-index %r" % (midx,))
            coeff = _as_ratfun(base, coeff)
            if not coeff.is_zero():
                clean[midx] = coeff
        self.terms = clean

    # -- constructors -----------------------------------------------------
    @classmethod
    def func(cls, base, dvars, f) -> "DiffOp":
        """Multiplication operator by the function f."""
        return cls(base, dvars, {(0,) * len(tuple(dvars)): f})

    @classmethod
    def identity(cls, base, dvars) -> "DiffOp":
        return cls.func(base, dvars, RatFun.scalar(base, 1))

    @classmethod
    def partial(cls, base, dvars, name, order: int = 1) -> "DiffOp":
        dvars = tuple(dvars)
        midx = [0] * len(dvars)
        midx[dvars.index(name)] = order
        return cls(base, dvars, {tuple(midx): RatFun.scalar(base, 1)})

    def _like(self, terms: dict) -> "DiffOp":
        return DiffOp(self.base, self.dvars, terms)

    # -- predicates ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def order(self) -> int:
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            cur = out.get(m)
            out[m] = c if cur is None else cur + c
        return self._like(out)

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
        return other + (-self)

    def __neg__(self):
        return self._like({m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, DiffOp):
            return op_compose(self, other)
        if isinstance(other, (RatFun, Poly)):
            return op_compose(self, DiffOp.func(self.base, self.dvars, other))
        if isinstance(other, (GaussRat, int, Fraction)):
            c = GaussRat.coerce(other)
            return self._like({m: v * c for m, v in self.terms.items()})
        return NotImplemented

    def __rmul__(self, other):
        # functions and scalars multiply coefficients on the left
        if isinstance(other, (RatFun, Poly, GaussRat, int, Fraction)):
            f = _as_ratfun(self.base, other)
            return self._like({m: f * v for m, v in self.terms.items()})
        return NotImplemented

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def _coerce(self, other):
        if isinstance(other, DiffOp):
            if other.base is not self.base or other.dvars != self.dvars:
                raise ValueError("operators over different charts")
            return other
        if isinstance(other, (RatFun, Poly, GaussRat, int, Fraction)):
            return DiffOp.func(self.base, self.dvars, other)
        return None

    # -- action -------------------------------------------------------------
    def apply(self, f) -> RatFun:
        f = _as_ratfun(self.base, f)
        out = RatFun.scalar(self.base, 0)
        for midx, coeff in self.terms.items():
            g = f
            for name, k in zip(self.dvars, midx):
                for _ in range(k):
                    g = g.diff(name)
            out = out + coeff * g
        return out

    def map_coeffs(self, fn) -> "DiffOp":
        return self._like({m: fn(c) for m, c in self.terms.items()})

    # -- display ------------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for m in sorted(self.terms, reverse=True):
            ds = "*".join(
                "d%s%s" % (v, "" if k == 1 else "^%d" % k)
                for v, k in zip(self.dvars, m) if k)
            c = str(self.terms[m])
            bits.append("(%s)%s" % (c, "*" + ds if ds else ""))
        return " + ".join(bits)

    def __repr__(self):
        s = str(self)
        if len(s) > 120:
            s = s[:117] + "..."
        return "DiffOp(%s)" % (s,)


def _as_ratfun(base, value) -> RatFun:
    if isinstance(value, RatFun):
        if value.base is not base:
            raise ValueError("mixed factor bases")
        return value
    if isinstance(value, Poly):
        return RatFun(base, value)
    if isinstance(value, (GaussRat, int, Fraction)):
        return RatFun.scalar(base, value)
    raise TypeError("cannot use %r as a coefficient"
                    % (type(value).__name__,))


def op_compose(A: DiffOp, B: DiffOp) -> DiffOp:
    """Operator product A o B via the generalised Leibniz rule.

    d^a (b g) = sum_{c <= a} binom(a, c) (d^{a-c} b) d^c g, applied per
    pair of terms; derivatives of each B coefficient are cached across
    all A terms that need them.
    """
    if A.base is not B.base or A.dvars != B.dvars:
        raise ValueError("operators over different charts")
    nv = len(A.dvars)
    out = {}
    deriv_cache = []  # parallel to B terms: {delta: RatFun}
    bterms = list(B.terms.items())
    for _, bc in bterms:
        deriv_cache.append({(0,) * nv: bc})
    for alpha, ac in A.terms.items():
        ranges = [range(a + 1) for a in alpha]
        for gamma in product(*ranges):
            delta = tuple(a - g for a, g in zip(alpha, gamma))
            weight = 1
            for a, g in zip(alpha, gamma):
                weight *= comb(a, g)
            for (beta, _), cache in zip(bterms, deriv_cache):
                dcoeff = _deriv(cache, delta, A.dvars)
                if dcoeff.is_zero():
                    continue
                key = tuple(g + b for g, b in zip(gamma, beta))
                piece = ac * dcoeff
                if weight != 1:
                    piece = piece * weight
                cur = out.get(key)
                out[key] = piece if cur is None else cur + piece
    return DiffOp(A.base, A.dvars, out)


def _deriv(cache: dict, delta: tuple, dvars) -> RatFun:
    hit = cache.get(delta)
    if hit is not None:
        return hit
    for i, d in enumerate(delta):
        if d:
            prev = list(delta)
            prev[i] -= 1
            lower = _deriv(cache, tuple(prev), dvars)
            val = lower.diff(dvars[i])
            cache[delta] = val
            return val
    raise AssertionError("empty derivative chain")


def op_commutator(A: DiffOp, B: DiffOp) -> DiffOp:
    return op_compose(A, B) - op_compose(B, A)


def sym2(A: DiffOp, B: DiffOp) -> DiffOp:
    """AB + BA."""
    return op_compose(A, B) + op_compose(B, A)


def sym3(A: DiffOp, B: DiffOp, C: DiffOp) -> DiffOp:
    """Full six-permutation symmetrisation, no 1/6 normalisation."""
    out = None
    for X, Y, Z in ((A, B, C), (A, C, B), (B, A, C),
                    (B, C, A), (C, A, B), (C, B, A)):
        term = op_compose(op_compose(X, Y), Z)
        out = term if out is None else out + term
    return out
