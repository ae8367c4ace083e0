"""Hyperbolic ladder engine for the higher constants of motion.

Both families admit a pair of "angles" A(theta, ptheta) and B(R, pR)
whose sinh/cosh are closed-form expressions involving three square
roots.  For rational index k = p/q, sinh and cosh of qA + pB, suitably
normalized, are polynomial constants of the motion.  Nothing here ever
takes a numeric square root: values live in the 8-component parity
algebra over the formal radicals rho1, rho2, rho3, so "polynomial in
the momenta" becomes a checkable purity statement and branch cuts
never enter.

The same composition code runs over floats, complex numbers, numpy
arrays, dual numbers and exact ring elements; only the coefficients
change type.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _scalars as sm
from .model import PhasePoint, RationalIndex, SingularPointError, convert

__all__ = [
    "DegenerateRadicalError",
    "PurityViolationError",
    "RadicalBasis",
    "RadicalValue",
    "HyperbolicPair",
    "ExtractedConstant",
    "pair_A",
    "pair_B",
    "compose_multiple",
    "compose_sum",
    "extract_constants",
    "explicit_ttw_k2",
    "explicit_ttw_khalf",
    "explicit_holo_k3",
    "explicit_holo_k2",
    "independence_check",
]

# mask bits of the parity algebra
_R1, _R2, _R3 = 1, 2, 4


class DegenerateRadicalError(ValueError):
    """A radicand vanished, so the hyperbolic pair is undefined."""


class PurityViolationError(RuntimeError):
    """A normalized composition leaked outside its parity component."""


class RadicalBasis:
    """Three formal square roots with known squares.

    ``squares`` holds (rho1**2, rho2**2, rho3**2); TTW uses
    (L2, (L2-b-g)**2 - 4bg, H**2 - 4a*L2), the holomorphic family
    (L, a, H).  ``half`` and ``i_unit`` are the constants 1/2 and i in
    whatever coefficient ring is in play, so exact rings stay exact.
    """

    __slots__ = ("squares", "half", "i_unit")

    def __init__(self, squares, half=0.5, i_unit=1j):
        self.squares = tuple(squares)
        self.half = half
        self.i_unit = i_unit

    def check_nondegenerate(self):
        for idx, s in enumerate(self.squares):
            if _is_exact_zero(s):
                raise DegenerateRadicalError(
                    f"rho{idx + 1}**2 = 0 at this point")


def _is_exact_zero(c):
    if hasattr(c, "is_zero"):
        return c.is_zero()
    if isinstance(c, np.ndarray):
        return bool(np.all(c == 0))
    if isinstance(c, sm.Dual):
        return False
    try:
        return c == 0
    except TypeError:
        return False


class RadicalValue:
    """Element of the parity algebra: sum of coeff * rho1^e1 rho2^e2 rho3^e3.

    Stored sparsely as {mask: coefficient} with mask bits 0,1,2 for
    rho1, rho2, rho3.  Multiplication xors masks and folds each shared
    radical into its square.
    """

    __slots__ = ("basis", "comps")

    def __init__(self, basis, comps):
        self.basis = basis
        self.comps = {m: c for m, c in comps.items() if not _is_exact_zero(c)}

    @classmethod
    def scalar(cls, basis, v):
        return cls(basis, {0: v})

    @classmethod
    def radical(cls, basis, idx, coeff=1):
        return cls(basis, {1 << idx: coeff})

    def __add__(self, other):
        out = dict(self.comps)
        for m, c in other.comps.items():
            out[m] = out[m] + c if m in out else c
        return RadicalValue(self.basis, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return RadicalValue(self.basis, {m: -c for m, c in self.comps.items()})

    def __mul__(self, other):
        if not isinstance(other, RadicalValue):
            return self.scale(other)
        sq = self.basis.squares
        out = {}
        for m1, c1 in self.comps.items():
            for m2, c2 in other.comps.items():
                c = c1 * c2
                shared = m1 & m2
                for idx in range(3):
                    if shared & (1 << idx):
                        c = c * sq[idx]
                m = m1 ^ m2
                out[m] = out[m] + c if m in out else c
        return RadicalValue(self.basis, out)

    def scale(self, k):
        return RadicalValue(self.basis,
                            {m: c * k for m, c in self.comps.items()})

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative powers are not defined here")
        result = RadicalValue.scalar(self.basis, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def component(self, mask):
        return self.comps.get(mask, 0)

    def conj_rho1(self):
        """Flip the sign of rho1: the automorphism behind the parity law."""
        return RadicalValue(self.basis,
                            {m: (-c if m & _R1 else c)
                             for m, c in self.comps.items()})


@dataclass
class HyperbolicPair:
    """sinh and cosh of one angle, as radical-algebra elements."""

    s: RadicalValue
    c: RadicalValue

    def identity_residual(self):
        """Numeric size of c*c - s*s - 1, for the pair invariant."""
        r = self.c * self.c - self.s * self.s
        r = r - RadicalValue.scalar(r.basis, 1)
        worst = 0.0
        for c in r.comps.values():
            worst = max(worst, float(np.max(np.abs(c))))
        return worst


@dataclass
class ExtractedConstant:
    value: object
    label: str          # C, D for p,q both odd; C', D' for mixed parity
    order: int
    parity: tuple       # (p parity, q parity) as "odd"/"even"


def _parity_word(n):
    return "odd" if n % 2 else "even"


def _ttw_setup(point: PhasePoint, params, k: RationalIndex, i_unit=1j,
               half=0.5):
    """Basis and pair ingredients for the barrier family, log-polar chart."""
    pt = convert(point, "logpolar")
    R, theta, pR, ptheta = pt.coords
    w = sm.exp(2.0 * R)
    ct = sm.cos(2.0 * k.as_float * theta)
    st = sm.sin(2.0 * k.as_float * theta)
    b, g, al = params.b, params.c, params.a
    for wall in (1 + ct, 1 - ct):
        if _is_exact_zero(wall):
            raise SingularPointError("barrier wall: cos(2k*theta) = -+1")
    l2 = ptheta * ptheta + 2 * b / (1 + ct) + 2 * g / (1 - ct)
    h = (pR * pR + l2 + al * w * w) / w
    rad2 = (l2 - b - g) ** 2 - 4 * b * g
    rad3 = h * h - 4 * al * l2
    basis = RadicalBasis((l2, rad2, rad3), half=half, i_unit=i_unit)
    return basis, dict(w=w, ct=ct, st=st, pR=pR, ptheta=ptheta,
                       l2=l2, h=h, rad2=rad2, rad3=rad3,
                       beta=b, gamma=g)


def _holo_setup(point: PhasePoint, params, k: RationalIndex, i_unit=1j,
                half=0.5):
    pt = convert(point, "logpolar")
    R, theta, pR, ptheta = pt.coords
    y = sm.exp(-R)
    tau = sm.exp(i_unit * k.as_float * theta) if i_unit == 1j else None
    if tau is None:
        raise ValueError("holomorphic numeric setup needs i_unit = 1j")
    a = params.a
    ll = ptheta * ptheta + a * tau * tau
    h = y * y * (pR * pR + ptheta * ptheta + a * tau * tau)
    basis = RadicalBasis((ll, a, h), half=half, i_unit=i_unit)
    return basis, dict(y=y, tau=tau, pR=pR, ptheta=ptheta, ll=ll, h=h, a=a)


def pair_A(family: str, point: PhasePoint, params, k: RationalIndex
           ) -> HyperbolicPair:
    """The angular hyperbolic pair.

    TTW: sinh A = i(beta - gamma - L2 cos 2k theta)/rho2,
    cosh A = rho1 sin(2k theta) ptheta / rho2.  Holomorphic:
    sinh A = ptheta e^{-ik theta}/rho2, cosh A = rho1 rho2 e^{-ik theta}/a
    (with rho2**2 = a).  Coefficients are rational; 1/rho_i is stored as
    rho_i / rho_i**2.
    """
    if family == "ttw":
        basis, v = _ttw_setup(point, params, k)
        basis.check_nondegenerate()
        i = basis.i_unit
        script_l = v["beta"] - v["gamma"] - v["l2"] * v["ct"]
        s = RadicalValue(basis, {_R2: i * script_l / v["rad2"]})
        c = RadicalValue(basis, {_R1 | _R2: v["st"] * v["ptheta"] / v["rad2"]})
        return HyperbolicPair(s, c)
    if family == "holo":
        basis, v = _holo_setup(point, params, k)
        basis.check_nondegenerate()
        s = RadicalValue(basis, {_R2: v["ptheta"] / (v["a"] * v["tau"])})
        c = RadicalValue(basis, {_R1 | _R2: 1.0 / (v["a"] * v["tau"])})
        return HyperbolicPair(s, c)
    raise ValueError(f"unknown family {family!r}")


def pair_B(family: str, point: PhasePoint, params, k: RationalIndex
           ) -> HyperbolicPair:
    """The radial hyperbolic pair.

    TTW: sinh B = i(2 L2 e^{-2R} - H)/rho3, cosh B = 2 rho1 e^{-2R} pR/rho3.
    Holomorphic: sinh B = i pR e^{-R}/rho3, cosh B = rho1 rho3 e^{-R}/H.
    The index k enters through L2 and H, so it is required for both
    families even though B depends on (R, pR) only.
    """
    if family == "ttw":
        basis, v = _ttw_setup(point, params, k)
        basis.check_nondegenerate()
        i = basis.i_unit
        s = RadicalValue(
            basis, {_R3: i * (2 * v["l2"] / v["w"] - v["h"]) / v["rad3"]})
        c = RadicalValue(
            basis, {_R1 | _R3: 2 * v["pR"] / (v["w"] * v["rad3"])})
        return HyperbolicPair(s, c)
    if family == "holo":
        basis, v = _holo_setup(point, params, k)
        basis.check_nondegenerate()
        i = basis.i_unit
        s = RadicalValue(basis, {_R3: i * v["pR"] * v["y"] / v["h"]})
        c = RadicalValue(basis, {_R1 | _R3: v["y"] / v["h"]})
        return HyperbolicPair(s, c)
    raise ValueError(f"unknown family {family!r}")


def compose_multiple(x: HyperbolicPair, n: int) -> HyperbolicPair:
    """Pair for n times the angle, via (c +- s)**n = cosh nx +- sinh nx."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    u = (x.c + x.s) ** n
    v = (x.c - x.s) ** n
    half = x.c.basis.half
    return HyperbolicPair(s=(u - v).scale(half), c=(u + v).scale(half))


def compose_sum(x: HyperbolicPair, y: HyperbolicPair) -> HyperbolicPair:
    """Pair for the sum of two angles, via the addition formulas."""
    return HyperbolicPair(s=x.s * y.c + x.c * y.s,
                          c=x.c * y.c + x.s * y.s)


def _mask_weight(rv: RadicalValue, mask):
    # |coeff| weighted by the square roots' magnitudes, elementwise
    w = np.abs(rv.component(mask))
    if isinstance(w, sm.Dual):
        w = np.abs(w.val)
    for idx in range(3):
        if mask & (1 << idx):
            sq = rv.basis.squares[idx]
            if isinstance(sq, sm.Dual):
                sq = sq.val
            w = w * np.sqrt(np.abs(sq))
    return w


def _extract_one(rv: RadicalValue, expected_mask, tol=1e-10):
    coeffs = rv.comps
    exact = any(hasattr(c, "is_zero") for c in coeffs.values())
    if exact:
        stray = [m for m in coeffs if m != expected_mask]
        if stray:
            raise PurityViolationError(
                f"nonzero components at masks {stray}, expected "
                f"{expected_mask} only")
        return rv.component(expected_mask)
    target = _mask_weight(rv, expected_mask)
    floor = np.maximum(np.asarray(target, dtype=float), 1e-300)
    for m in coeffs:
        if m == expected_mask:
            continue
        leak = float(np.max(_mask_weight(rv, m) / floor))
        if leak > tol:
            raise PurityViolationError(
                f"component at mask {m} is {leak:.3e} of the target "
                f"(mask {expected_mask})")
    return rv.component(expected_mask)


def extract_constants(family: str, point: PhasePoint, params,
                      k: RationalIndex):
    """The two polynomial constants from sinh/cosh of qA + pB.

    Multiplies by the normalizer rho2^q rho3^p, then reads off the one
    surviving parity component of each function: mask 0 when p + q is
    even lands on cosh (label C) and odd on sinh (label D'), the rho1
    component carrying the other constant.  Orders follow the parity
    law: 2(p+q) for the pure component and 2(p+q)-1 for the rho1 one
    (p+q and p+q-1 for the holomorphic family).  Any leakage outside
    the two legal masks raises a purity-violation error.
    """
    p, q = k.p, k.q
    a_pair = pair_A(family, point, params, k)
    b_pair = pair_B(family, point, params, k)
    total = compose_sum(compose_multiple(a_pair, q),
                        compose_multiple(b_pair, p))
    basis = total.c.basis
    norm = (RadicalValue.radical(basis, 1) ** q
            * RadicalValue.radical(basis, 2) ** p)
    c_n = total.c * norm
    s_n = total.s * norm

    even_sum = (p + q) % 2 == 0
    cosh_mask = 0 if even_sum else _R1
    sinh_mask = _R1 if even_sum else 0
    full = 2 * (p + q) if family == "ttw" else p + q
    parity = (_parity_word(p), _parity_word(q))

    def order_of(mask):
        return full if mask == 0 else full - 1

    cosh_label = "C" if even_sum else "C'"
    sinh_label = "D" if even_sum else "D'"
    from_cosh = ExtractedConstant(_extract_one(c_n, cosh_mask),
                                  cosh_label, order_of(cosh_mask), parity)
    from_sinh = ExtractedConstant(_extract_one(s_n, sinh_mask),
                                  sinh_label, order_of(sinh_mask), parity)
    return from_cosh, from_sinh


# ---------------------------------------------------------------------------
# printed closed forms


def explicit_ttw_k2(point: PhasePoint, params):
    """The two fundamental k = 2 constants, Cartesian closed forms.

    ``params`` fields are read as the Cartesian coupling letters of
    these closed forms; they correspond to the family letters through
    beta = b, gamma = 4c.  The 8ab term carries the denominator
    (x**2 - y**2)**2 (the coefficient-solver repair of the source's
    stray radius factor).
    """
    a, b, c = params.a, params.b, params.c
    pt = convert(point, "cartesian")
    x, y, px, py = pt.coords
    if _is_exact_zero(x * x - y * y) or _is_exact_zero(x * y):
        raise SingularPointError("k=2 constants singular at x**2 = y**2 "
                                 "or x*y = 0")
    try:
        d1 = x * x - y * y
        xy2 = x * x * y * y
        ang = x * py - y * px
        c1 = (ang * ang + 4 * b * xy2 / (d1 * d1)
              + c * (x ** 4 + y ** 4) / xy2)
        c2 = ((px * px - py * py) ** 2
              + (2 * a * x * x + 2 * b * (x * x + y * y) / (d1 * d1)
                 - 2 * c * d1 / xy2) * px * px
              + (-4 * a * x * y + 8 * b * x * y / (d1 * d1)) * px * py
              + (2 * a * y * y + 2 * b * (x * x + y * y) / (d1 * d1)
                 + 2 * c * d1 / xy2) * py * py
              + a * a * d1 * d1 + b * b / (d1 * d1)
              + c * c * d1 * d1 / (xy2 * xy2)
              + 8 * a * b * xy2 / (d1 * d1) + 2 * b * c / xy2)
    except ZeroDivisionError as err:
        raise SingularPointError("k=2 constants singular here") from err
    return c1, c2


def explicit_ttw_khalf(point: PhasePoint, params):
    """Bracketed numerators of cosh/sinh(2A + B) at k = 1/2.

    These are the printed 5th and 6th order constants; the 5th order
    one carries the ptheta factor that the source's display dropped
    (restored here, which makes it momentum-degree homogeneous and
    conserved).  ``params`` fields are the family letters.
    """
    pt = convert(point, "logpolar")
    R, theta, pR, ptheta = pt.coords
    b, g, al = params.b, params.c, params.a
    ct = sm.cos(theta)
    st = sm.sin(theta)
    for wall in (1 + ct, 1 - ct):
        if _is_exact_zero(wall):
            raise SingularPointError("barrier wall: cos(theta) = -+1")
    iw = sm.exp(-2.0 * R)
    l2 = ptheta * ptheta + 2 * b / (1 + ct) + 2 * g / (1 - ct)
    h = (pR * pR + l2) * iw + al / iw
    script_l = -g + b - l2 * ct
    core = l2 * st * st * ptheta * ptheta - script_l * script_l
    fifth = iw * pR * core - st * ptheta * (2 * l2 * iw - h) * script_l
    sixth = (2 * l2 * iw - h) * core + 4 * l2 * st * iw * ptheta * pR * script_l
    return fifth, sixth


def explicit_holo_k3(point: PhasePoint, params):
    """The k = 3 constants K1, K2, K3 of the holomorphic family.

    K3 is literal.  K1 and K2 carry coefficient-solver repairs, each
    certified by an exact {.,H} = 0 residual: K1's px term enters with
    the opposite sign, and K2's whole interaction tail (the bracket
    together with the a**2 term, coefficient -1) is scaled by -i.
    With these, all four printed algebra relations hold exactly in the
    momentum-first bracket orientation.
    """
    a = params.a
    pt = convert(point, "cartesian")
    x, y, px, py = pt.coords
    zbar = x - 1j * y
    if _is_exact_zero(zbar):
        raise SingularPointError("holomorphic constants singular at x = iy")
    zb3 = zbar ** 3
    ang = x * py - y * px
    pm = px - 1j * py
    k1 = pm ** 3 - a / zb3 * ((1j * y + 3 * x) * px + (-1j * x + 3 * y) * py)
    k2 = (ang * pm ** 3
          - 1j * (a / zb3 * ((3 * x * x + 3j * x * y - 2 * y * y) * px * px
                             - (2 * x * x + 3j * x * y - 3 * y * y) * py * py
                             - 1j * (x + 3j * y) * (1j * y + 3 * x) * px * py)
                  - a * a * (x + 1j * y) ** 3 / zb3 ** 2))
    k3 = ang * ang + 2j * a * y * (3 * x * x - y * y) / zb3
    return k1, k2, k3


def explicit_holo_k2(point: PhasePoint, params):
    """Closed forms of sqrt(a)H sinh(A+2B) and (sqrt(a)H/sqrt(L)) cosh(A+2B)."""
    a = params.a
    if _is_exact_zero(a):
        raise DegenerateRadicalError("rho2**2 = a = 0 for this family")
    pt = convert(point, "logpolar")
    R, theta, pR, ptheta = pt.coords
    w = sm.exp(2.0 * R)
    ll = ptheta * ptheta + a * sm.exp(4j * theta)
    h = (pR * pR + ptheta * ptheta + a * sm.exp(4j * theta)) / w
    phase = sm.exp(-2j * theta) / w
    s_val = (2 * (ptheta + 1j * pR) * ll - ptheta * h * w) * phase
    c_val = (2 * ll - h * w + 2j * ptheta * pR) * phase
    return s_val, c_val


def independence_check(f, g, points):
    """(True, witness) if |{f,g}| exceeds 1e-6 somewhere in the sample."""
    from .dynamics import bracket

    for pt in points:
        val = bracket(f, g, pt)
        if float(np.max(np.abs(val))) > 1e-6:
            return True, pt
    return False, None
