"""Sparse exact polynomial rings over Q(i).

A Ring fixes an ordered tuple of variable names.  Variables flagged as
Laurent may carry negative exponents.  A ring may also declare one trig
pair (c, s) subject to c**2 + s**2 = 1; polynomials are kept in the
canonical form where the exponent of c is 0 or 1, rewriting
c**2 -> 1 - s**2.  That rewrite is confluent, so reducing greedily in
the constructor is enough to make equality a dict comparison.

The quotient by (c**2 + s**2 - 1) is an integral domain, which is what
makes exact trial division meaningful here.  Division by an element
with a c-odd part goes through the conjugate trick: f/g multiplies
numerator and denominator by the c-conjugate of g, after which the
denominator is c-free and ordinary multivariate division applies.
"""

from __future__ import annotations

from fractions import Fraction

from .gaussian import GaussRat

__all__ = ["Ring", "Poly", "degree"]

_ZERO = GaussRat(0)
_ONE = GaussRat(1)

# Trial division walks leading terms in lex order; exact divisions
# terminate after exactly len(quotient) steps, so this only trips on
# wildly non-exact inputs (treated as "does not divide").
_DIV_ITER_CAP = 200_000


class Ring:
    """Variable layout shared by a family of Poly instances."""

    def __init__(self, names, laurent=(), trig=None):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")
        self.index = {n: i for i, n in enumerate(self.names)}
        self.laurent = frozenset(laurent)
        for n in self.laurent:
            if n not in self.index:
                raise ValueError("unknown Laurent variable %r" % (n,))
        if trig is not None:
            c, s = trig
            if c not in self.index or s not in self.index:
                raise ValueError("trig pair names must be ring variables")
            if c in self.laurent or s in self.laurent:
                raise ValueError("trig variables cannot be Laurent")
            self.trig = (self.index[c], self.index[s])
        else:
            self.trig = None
        self.nvars = len(self.names)
        self._zero_exp = (0,) * self.nvars

    # -- element constructors -------------------------------------------
    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return Poly(self, {self._zero_exp: _ONE})

    def const(self, c) -> "Poly":
        c = GaussRat.coerce(c)
        if c.is_zero():
            return self.zero()
        return Poly(self, {self._zero_exp: c})

    def var(self, name, power: int = 1) -> "Poly":
        i = self.index[name]
        if power < 0 and name not in self.laurent:
            raise ValueError("%r does not admit negative exponents" % (name,))
        exp = [0] * self.nvars
        exp[i] = power
        return Poly(self, {tuple(exp): _ONE})

    def vars(self, *names):
        return tuple(self.var(n) for n in names)

    def __repr__(self):
        return "Ring(%s)" % (", ".join(self.names),)


class Poly:
    """Sparse exact polynomial: {exponent tuple: GaussRat}."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms: dict, reduced: bool = False):
        self.ring = ring
        if reduced:
            self.terms = terms
        else:
            self.terms = _canonical(ring, terms)

    # -- predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_scalar(self) -> bool:
        return not self.terms or (len(self.terms) == 1
                                  and self.ring._zero_exp in self.terms)

    def scalar_value(self) -> GaussRat:
        if not self.terms:
            return _ZERO
        if self.is_scalar():
            return self.terms[self.ring._zero_exp]
        raise ValueError("polynomial is not a scalar")

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    # -- coercion ---------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.ring is not self.ring:
                raise ValueError("mixed rings")
            return other
        if isinstance(other, (GaussRat, int, Fraction)):
            return self.ring.const(other)
        return None

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            nc = out.get(e, _ZERO) + c
            if nc.is_zero():
                out.pop(e, None)
            else:
                out[e] = nc
        return Poly(self.ring, out, reduced=True)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            nc = out.get(e, _ZERO) - c
            if nc.is_zero():
                out.pop(e, None)
            else:
                out[e] = nc
        return Poly(self.ring, out, reduced=True)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self):
        return Poly(self.ring, {e: -c for e, c in self.terms.items()},
                    reduced=True)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_scalar():
            c = other.scalar_value()
            if c.is_zero():
                return self.ring.zero()
            return Poly(self.ring,
                        {e: k * c for e, k in self.terms.items()},
                        reduced=True)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                nc = out.get(e, _ZERO) + c1 * c2
                if nc.is_zero():
                    out.pop(e, None)
                else:
                    out[e] = nc
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("exponent must be int")
        if n < 0:
            if not self.is_monomial():
                raise ValueError("negative power of a non-monomial")
            (e, c), = self.terms.items()
            for i, ei in enumerate(e):
                if ei and self.ring.names[i] not in self.ring.laurent:
                    raise ValueError("negative power needs Laurent variables")
            inv_e = tuple(x * n for x in e)
            return Poly(self.ring, {inv_e: c ** n})
        out = self.ring.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    # -- calculus -----------------------------------------------------------
    def diff(self, name: str) -> "Poly":
        """Formal partial derivative; trig variables are treated as free
        generators here (chart derivations supply the chain rule)."""
        i = self.ring.index[name]
        out = {}
        for e, c in self.terms.items():
            if not e[i]:
                continue
            ne = list(e)
            ne[i] -= 1
            out[tuple(ne)] = c * e[i]
        return Poly(self.ring, out)

    # -- structure ------------------------------------------------------------
    def coeff_map(self, name: str):
        """Split along one variable: {power: Poly without that variable}."""
        i = self.ring.index[name]
        buckets = {}
        for e, c in self.terms.items():
            ne = list(e)
            p = ne[i]
            ne[i] = 0
            buckets.setdefault(p, {})[tuple(ne)] = c
        return {p: Poly(self.ring, t, reduced=True)
                for p, t in sorted(buckets.items())}

    def subs_scalar(self, name: str, value) -> "Poly":
        """Substitute one variable by an exact scalar."""
        value = GaussRat.coerce(value)
        i = self.ring.index[name]
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                if e[i] < 0 and value.is_zero():
                    raise ZeroDivisionError("zero into a negative power")
                c = c * value ** e[i]
            if c.is_zero():
                continue
            ne = list(e)
            ne[i] = 0
            ne = tuple(ne)
            nc = out.get(ne, _ZERO) + c
            if nc.is_zero():
                out.pop(ne, None)
            else:
                out[ne] = nc
        return Poly(self.ring, out, reduced=True)

    def subs_numeric(self, assign: dict) -> complex:
        vals = [complex(assign[n]) for n in self.ring.names]
        total = 0j
        for e, c in self.terms.items():
            term = c.to_complex()
            for v, p in zip(vals, e):
                if p:
                    term *= v ** p
            total += term
        return total

    def map_scalars(self, f) -> "Poly":
        out = {}
        for e, c in self.terms.items():
            nc = f(c)
            if not nc.is_zero():
                out[e] = nc
        return Poly(self.ring, out, reduced=True)

    # -- division -----------------------------------------------------------
    def div_exact(self, other: "Poly"):
        """Exact quotient self/other in the ring, or None.

        With a trig pair present the divisor is first rationalised:
        f/g = f*conj(g) / (g*conj(g)) where conj flips the sign of the
        c-odd part, making the actual divisor c-free.
        """
        other = self._coerce(other)
        if other is None or other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return self.ring.zero()
        ring = self.ring
        if ring.trig is not None:
            ci = ring.trig[0]
            if any(e[ci] for e in other.terms):
                gbar = other._trig_conj()
                return (self * gbar).div_exact(other * gbar)
            if any(e[ci] for e in self.terms):
                p0, p1 = self._trig_split()
                q0 = p0.div_exact(other)
                if q0 is None:
                    return None
                q1 = p1.div_exact(other)
                if q1 is None:
                    return None
                c = ring.var(ring.names[ci])
                return q0 + q1 * c
        return _div_free(self, other)

    def _trig_conj(self) -> "Poly":
        ci = self.ring.trig[0]
        return Poly(self.ring,
                    {e: (-c if e[ci] & 1 else c)
                     for e, c in self.terms.items()},
                    reduced=True)

    def _trig_split(self):
        """Return (p0, p1) with self = p0 + p1*c and both c-free."""
        ci = self.ring.trig[0]
        t0, t1 = {}, {}
        for e, c in self.terms.items():
            if e[ci]:
                ne = list(e)
                ne[ci] = 0
                t1[tuple(ne)] = c
            else:
                t0[e] = c
        return (Poly(self.ring, t0, reduced=True),
                Poly(self.ring, t1, reduced=True))

    # -- display ----------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            factors = []
            for name, p in zip(self.ring.names, e):
                if p == 1:
                    factors.append(name)
                elif p:
                    factors.append("%s^%d" % (name, p))
            body = "*".join(factors)
            cs = str(c)
            if body:
                if cs == "1":
                    bits.append(body)
                elif cs == "-1":
                    bits.append("-" + body)
                else:
                    bits.append("%s*%s" % (cs, body))
            else:
                bits.append(cs)
        out = bits[0]
        for b in bits[1:]:
            out += " - " + b[1:] if b.startswith("-") else " + " + b
        return out

    def __repr__(self):
        s = str(self)
        if len(s) > 120:
            s = s[:117] + "..."
        return "Poly(%s)" % (s,)


def degree(poly: Poly, names) -> int:
    """Total degree in the given variables; -1 for the zero polynomial."""
    if poly.is_zero():
        return -1
    idx = [poly.ring.index[n] for n in names]
    return max(sum(e[i] for i in idx) for e in poly.terms)


# -- internals ------------------------------------------------------------

def _canonical(ring: Ring, terms: dict) -> dict:
    out = {}
    pending = list(terms.items())
    while pending:
        e, c = pending.pop()
        if isinstance(c, (int, Fraction)):
            c = GaussRat(c)
        if c.is_zero():
            continue
        for i, p in enumerate(e):
            if p < 0 and ring.names[i] not in ring.laurent:
                raise ValueError("negative exponent on non-Laurent %r"
                                 % (ring.names[i],))
        if ring.trig is not None:
            ci, si = ring.trig
            if e[ci] >= 2:
                # c^2 -> 1 - s^2, one step at a time; confluent.
                e1 = list(e)
                e1[ci] -= 2
                pending.append((tuple(e1), c))
                e2 = list(e1)
                e2[si] += 2
                pending.append((tuple(e2), -c))
                continue
        nc = out.get(e, _ZERO) + c
        if nc.is_zero():
            out.pop(e, None)
        else:
            out[e] = nc
    return out


def _div_free(num: Poly, den: Poly):
    """Multivariate exact division when the divisor is trig-conjugation
    free (or the ring has no trig pair).  Returns the quotient Poly or
    None when the division is not exact."""
    ring = num.ring
    laurent = [n in ring.laurent for n in ring.names]
    dlt = max(den.terms)
    dlc = den.terms[dlt]
    r = dict(num.terms)
    q = {}
    steps = 0
    while r:
        steps += 1
        if steps > _DIV_ITER_CAP:
            return None
        rlt = max(r)
        diff = tuple(a - b for a, b in zip(rlt, dlt))
        if any(d < 0 and not laurent[i] for i, d in enumerate(diff)):
            return None
        c = r[rlt] / dlc
        q[diff] = c
        for m, cm in den.terms.items():
            mm = tuple(a + b for a, b in zip(diff, m))
            nc = r.get(mm, _ZERO) - c * cm
            if nc.is_zero():
                r.pop(mm, None)
            else:
                r[mm] = nc
    return Poly(ring, q, reduced=True)
