"""Gaussian rational scalars: exact a + b*i with rational a, b."""

from __future__ import annotations

from fractions import Fraction

__all__ = ["GaussRat"]


def _frac(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError("rational part must be int, Fraction or string, "
                    "got %r" % (x,))


class GaussRat:
    """Element of Q(i).  Immutable, hashable, exact.

    Accepts ints, Fractions, fraction strings ("32/3") and complex
    literals with integer parts (3+4j) as constructor input.  Floats
    are rejected: nothing in this package may round.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussRat):
            if im != 0:
                raise ValueError("cannot add an imaginary part to a GaussRat")
            object.__setattr__(self, "re", re.re)
            object.__setattr__(self, "im", re.im)
            return
        if isinstance(re, complex):
            if im != 0:
                raise ValueError("complex input carries its own imaginary part")
            if re.real != int(re.real) or re.imag != int(re.imag):
                raise TypeError("complex input must have integer parts")
            object.__setattr__(self, "re", Fraction(int(re.real)))
            object.__setattr__(self, "im", Fraction(int(re.imag)))
            return
        object.__setattr__(self, "re", _frac(re))
        object.__setattr__(self, "im", _frac(im))

    def __setattr__(self, *a):
        raise AttributeError("GaussRat is immutable")

    # -- constructors ---------------------------------------------------
    @classmethod
    def i(cls) -> "GaussRat":
        return cls(0, 1)

    @classmethod
    def coerce(cls, x) -> "GaussRat":
        if isinstance(x, GaussRat):
            return x
        return cls(x)

    # -- predicates -----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_one(self) -> bool:
        return self.re == 1 and not self.im

    def is_real(self) -> bool:
        return not self.im

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        other = GaussRat.coerce(other)
        return GaussRat(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = GaussRat.coerce(other)
        return GaussRat(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return GaussRat.coerce(other) - self

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __mul__(self, other):
        other = GaussRat.coerce(other)
        return GaussRat(self.re * other.re - self.im * other.im,
                        self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def conj(self) -> "GaussRat":
        return GaussRat(self.re, -self.im)

    def __truediv__(self, other):
        other = GaussRat.coerce(other)
        n = other.re * other.re + other.im * other.im
        if not n:
            raise ZeroDivisionError("division by zero GaussRat")
        return GaussRat((self.re * other.re + self.im * other.im) / n,
                        (self.im * other.re - self.re * other.im) / n)

    def __rtruediv__(self, other):
        return GaussRat.coerce(other) / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("exponent must be int")
        if n < 0:
            return GaussRat(1) / self ** (-n)
        out = GaussRat(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- comparison / hashing --------------------------------------------
    def __eq__(self, other):
        try:
            other = GaussRat.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return not self.is_zero()

    # -- conversion -----------------------------------------------------
    def to_complex(self) -> complex:
        return complex(self.re) + 1j * float(self.im)

    def __repr__(self):
        return "GaussRat(%s)" % (self,)

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            if self.im == 1:
                return "i"
            if self.im == -1:
                return "-i"
            return "%si" % (self.im,)
        sign = "+" if self.im > 0 else "-"
        mag = abs(self.im)
        istr = "i" if mag == 1 else "%si" % (mag,)
        return "(%s%s%s)" % (self.re, sign, istr)
