"""Exact coordinate charts and the catalogued objects living on them.

A chart bundles a polynomial ring, the registered denominator factors,
the derivations that implement brackets or operator calculus, and the
closed-form objects of one family: Hamiltonian, symmetries, and the
published coefficient tables they are compared against.

Tables tagged ``printed`` transcribe the source displays literally,
including their defects; ``*_true`` variants apply the corrected
coefficients that the verification suites re-derive from scratch and
assert against.  Keeping both lets a suite state exactly which printed
terms survive and which do not.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .diffop import DiffOp
from .gaussian import GaussRat
from .ratfun import FactorBase, RatFun
from .rings import Poly, Ring

__all__ = [
    "Derivation",
    "Chart",
    "sym_bracket",
    "term_label",
    "ttw_k2_classical",
    "ttw_k2_quantum",
    "holo_k3_classical",
    "holo_k3_quantum",
    "model_1d",
    "ttw_ladder",
]

_I = GaussRat.i()


class Derivation:
    """Derivation of a chart ring, defined by its images on generators.

    Extends to polynomials by formal partials and to rational functions
    by the quotient rule.  Trig charts stay consistent because the
    images annihilate c**2 + s**2 - 1.
    """

    def __init__(self, ring: Ring, images: dict):
        self.ring = ring
        self.images = dict(images)

    def of_poly(self, p: Poly) -> Poly:
        out = self.ring.zero()
        for name, img in self.images.items():
            d = p.diff(name)
            if not d.is_zero():
                out = out + d * img
        return out

    def __call__(self, f):
        if isinstance(f, RatFun):
            return f.derive(self.of_poly)
        return self.of_poly(f)


@dataclass
class Chart:
    name: str
    ring: Ring
    base: FactorBase
    orientation: str = "position-first"
    pairs: tuple = ()          # ((D_coord, D_momentum), ...) classical charts
    diff_vars: tuple = ()      # operator charts
    objects: dict = field(default_factory=dict)
    conventions: dict = field(default_factory=dict)


def sym_bracket(f, g, chart: Chart):
    """Poisson bracket of two chart functions.

    position-first: {f, g} = sum dq(f) dp(g) - dp(f) dq(g); the
    momentum-first orientation is its negative.  Both appear in the
    literature and each family's chart pins the one its relations use.
    """
    acc = None
    for dq, dp in chart.pairs:
        t = dq(f) * dp(g) - dp(f) * dq(g)
        acc = t if acc is None else acc + t
    if acc is None:
        raise ValueError("chart %r has no canonical pairs" % (chart.name,))
    if chart.orientation == "momentum-first":
        return -acc
    return acc


def term_label(powers: dict) -> str:
    """Canonical label of a product term, e.g. 'a^2*b*C1*H^2'.

    Fixed factor order: couplings a, b, c, then C1, C2, then a
    symmetrized word, then H.  Symmetrized words pass through as-is
    ('sym2(C1,C2)'), mixed ordered products use their own slot.
    """
    order = ("a", "b", "c", "C1", "C2", "C1*C2", "sym", "H")
    bits = []
    for key in order:
        e = powers.get(key, 0)
        if key == "sym":
            word = powers.get("sym")
            if word:
                bits.append(word)
            continue
        if not e:
            continue
        bits.append(key if e == 1 else "%s^%d" % (key, e))
    return "*".join(bits) if bits else "1"


def _g(x) -> GaussRat:
    return GaussRat.coerce(x)


def _third(n: int) -> GaussRat:
    return GaussRat(Fraction(n, 3))


# ---------------------------------------------------------------------------
# barrier family, k = 2, classical

# Literal transcription of the published closure tables.  Labels follow
# term_label.  The 8ab display of C_2 carries a stray radius factor in
# its denominator and is handled by the repair machinery instead of a
# table entry.

TTW_K2_PRINTED_RELATIONS = {
    "{C1,R}": {
        "C1*H^2": _g(32), "C1*C2": _g(-64),
        "b*C2": _g(-64), "c*C2": _g(-128),
        "b*H^2": _g(64), "c*H^2": _g(-64),
        "a*b*C1": _g(-128),
        "a*b^2": _g(-128), "a*b*c": _g(-256),
    },
    "{C2,R}": {
        "C2^2": _g(32), "C2*H^2": _g(-32),
        "a*C1*H^2": _g(128),
        "a^2*C1^2": _g(-384),
        "a*b*C2": _g(128),
        "a*b*H^2": _g(-64), "a*c*H^2": _g(-256),
        "a^2*b*C1": _g(-256), "a^2*c*C1": _g(512),
        "a^2*b^2": _g(128), "a^2*c^2": _g(5120), "a^2*b*c": _g(2560),
    },
    "R^2": {
        "C1*C2*H^2": _g(64), "C1*C2^2": _g(-64),
        "b*H^4": _g(-64),
        "b*C2*H^2": _g(128), "c*C2*H^2": _g(-128),
        "b*C2^2": _g(-64), "c*C2^2": _g(-128),
        "a*C1^2*H^2": _g(-128),
        "a^2*C1^3": _g(256),
        "a*b*C1*C2": _g(-256),
        "a*b*C1*H^2": _g(128), "a*c*C1*H^2": _g(512),
        "a^2*b*C1^2": _g(256), "a^2*c*C1^2": _g(-256),
        "a*b^2*C2": _g(-256), "a*b*c*C2": _g(-512),
        "a*b^2*H^2": _g(256), "a*b*c*H^2": _g(1792), "a*c^2*H^2": _g(-512),
        "a^2*b^2*C1": _g(-256), "a^2*c^2*C1": _g(-1024),
        "a^2*b*c*C1": _g(-5120),
        "a^2*b^3": _g(-256), "a^2*b^2*c": _g(-4608),
        "a^2*b*c^2": _g(-7168), "a^2*c^3": _g(2048),
    },
}

# Two printed coefficients fail the exact re-derivation; these are the
# corrected values (everything else in the printed tables survives).
TTW_K2_COEFF_REPAIRS = {
    "{C2,R}": {"a^2*c^2": _g(512)},
    "R^2": {"a^2*c*C1^2": _g(-512)},
}


def _ttw_k2_true_relations():
    out = {}
    for rel, table in TTW_K2_PRINTED_RELATIONS.items():
        fixed = dict(table)
        fixed.update(TTW_K2_COEFF_REPAIRS.get(rel, {}))
        out[rel] = fixed
    return out


@lru_cache(maxsize=None)
def ttw_k2_classical() -> Chart:
    """Cartesian chart of the barrier family at k = 2.

    Coupling letters are the Cartesian ones of the closed forms; the
    family letters are beta = b, gamma = 4c.
    """
    ring = Ring(("x", "y", "px", "py", "a", "b", "c"))
    x, y, px, py, a, b, c = ring.vars("x", "y", "px", "py", "a", "b", "c")
    d = x * x - y * y
    base = FactorBase(ring, {"x": x, "y": y, "d": d})

    def pf(p):
        return RatFun(base, p)

    r2 = x * x + y * y
    xy2 = {"x": 2, "y": 2}
    H = (pf(px * px + py * py + a * r2)
         + RatFun(base, b * r2, {"d": 2})
         + RatFun(base, c * r2, xy2))
    ang = x * py - y * px
    C1 = (pf(ang * ang)
          + RatFun(base, 4 * b * x * x * y * y, {"d": 2})
          + RatFun(base, c * (x ** 4 + y ** 4), xy2))

    xx_coeff = (pf(2 * a * x * x) + RatFun(base, 2 * b * r2, {"d": 2})
                - RatFun(base, 2 * c * d, xy2))
    xy_coeff = pf(-4 * a * x * y) + RatFun(base, 8 * b * x * y, {"d": 2})
    yy_coeff = (pf(2 * a * y * y) + RatFun(base, 2 * b * r2, {"d": 2})
                + RatFun(base, 2 * c * d, xy2))
    tail = (pf(a * a * d * d)
            + RatFun(base, b * b, {"d": 2})
            + RatFun(base, c * c * d * d, {"x": 4, "y": 4})
            + RatFun(base, 2 * b * c, xy2))
    term_8ab = RatFun(base, a * b * x * x * y * y, {"d": 2})
    C2_fixed = (pf((px * px - py * py) ** 2)
                + xx_coeff * pf(px * px)
                + xy_coeff * pf(px * py)
                + yy_coeff * pf(py * py)
                + tail)
    C2 = C2_fixed + term_8ab * 8

    # image of the separation constant under beta=b, gamma=4c
    l2_image = (pf(ang * ang)
                + RatFun(base, b * r2 * r2, {"d": 2})
                + RatFun(base, c * r2 * r2, xy2))

    pairs = tuple(
        (Derivation(ring, {qn: ring.one()}), Derivation(ring, {pn: ring.one()}))
        for qn, pn in (("x", "px"), ("y", "py")))
    return Chart(
        name="ttw-k2-classical",
        ring=ring, base=base,
        orientation="position-first",
        pairs=pairs,
        objects={
            "H": H, "C1": C1, "C2": C2,
            "C2_fixed": C2_fixed, "repair_term_8ab": term_8ab,
            "L2_image": l2_image,
            "relations_printed": TTW_K2_PRINTED_RELATIONS,
            "relations_true": _ttw_k2_true_relations(),
            "coeff_repairs": TTW_K2_COEFF_REPAIRS,
        },
        conventions={
            "bracket": "position-first",
            "R": "{C1,C2}",
            "letters": "Cartesian couplings a,b,c; family beta=b, gamma=4c",
        })


# ---------------------------------------------------------------------------
# barrier family, k = 2, quantum

TTW_K2Q_PRINTED_RELATIONS = {
    "[C1,R]": {
        "C1*H^2": _g(32),
        "sym2(C1,C2)": _g(-32),
        "b*H^2": _g(64), "c*H^2": _g(-64), "H^2": _g(128),
        "b*C2": _g(-64), "c*C2": _g(-128), "C2": _g(-256),
        "a*b*C1": _g(-128), "a*C1": _g(-128),
        "a*b^2": _g(-128), "a*b*c": _g(-256),
        "a*b": _g(-512), "a*c": _g(-768), "a": _g(-512),
    },
    "[C2,R]": {
        "C2^2": _g(32), "C2*H^2": _g(-32),
        "a*C1*H^2": _g(128),
        "a*b*C2": _g(128), "a*C2": _g(128),
        "a*b*H^2": _g(-64), "a*c*H^2": _g(-256), "a*H^2": _g(-384),
        "a^2*C1^2": _g(-384),
        "a^2*b*C1": _g(-256), "a^2*c*C1": _g(512), "a^2*C1": _g(3584),
        "a^2*b^2": _g(128), "a^2*c^2": _g(512), "a^2*b*c": _g(2560),
        "a^2*b": _g(2304), "a^2*c": _g(1024), "a^2": _g(-1024),
    },
}

# The Casimir display is partially corrupted.  These are the fragments
# that parse to a definite coefficient (letters alpha,beta,gamma printed
# there correspond to a,b,c).  The C1^2 coefficient's beta part and the
# whole constant block are garbled beyond a literal reading and are
# reported as mismatched text, not compared termwise.
TTW_K2Q_PRINTED_CASIMIR = {
    "sym2(C1,C2)*H^2": _g(32),
    "sym3(C1,C2,C2)": _third(-32),
    "b*C2^2": _g(-64), "c*C2^2": _g(-128), "C2^2": _third(-2816),
    "b*C2*H^2": _g(128), "c*C2*H^2": _g(-128), "C2*H^2": _third(2816),
    "H^4": _g(-192), "b*H^4": _g(-64),
    "a*C1^2*H^2": _g(-128),
    "a*b*sym2(C1,C2)": _g(-128), "a*sym2(C1,C2)": _g(-128),
    "a*c*C1*H^2": _g(512), "a*b*C1*H^2": _g(128), "a*C1*H^2": _third(6400),
    "a*C1^3": _g(256),
    "a*b*C2": _third(-11264), "a*C2": _third(-11264), "a*c*C2": _g(-1536),
    "a*b^2*C2": _g(-256), "a*b*c*C2": _g(-512),
    "a^2*c*C1^2": _g(-512),
    "a*H^2": _g(3584), "a*c*H^2": _third(5632), "a*b*H^2": _third(10240),
    "a*b^2*H^2": _g(256), "a*c^2*H^2": _g(-512), "a*b*c*H^2": _g(1792),
    "a^2*c*C1": _third(-38912), "a^2*C1": _third(22528),
    "a^2*b*C1": _third(-46592),
    "a^2*b^2*C1": _g(-256), "a^2*c^2*C1": _g(-1024), "a^2*b*c*C1": _g(-5120),
}

TTW_K2Q_CASIMIR_GARBLED = (
    "C1^2 block '(2*gamma - beta 46)': beta coefficient unreadable",
    "constant block '(280 gamma^2 - ... + 28)': degree-4 terms and a "
    "missing alpha^2 prefix make it unreadable",
)


@lru_cache(maxsize=None)
def ttw_k2_quantum() -> Chart:
    """Operator chart of the barrier family at k = 2."""
    ring = Ring(("x", "y", "a", "b", "c"))
    x, y, a, b, c = ring.vars("x", "y", "a", "b", "c")
    d = x * x - y * y
    base = FactorBase(ring, {"x": x, "y": y, "d": d})
    dv = ("x", "y")

    def pf(p):
        return RatFun(base, p)

    def dop(mx, my, coeff=1):
        return DiffOp(base, dv, {(mx, my): coeff})

    r2 = x * x + y * y
    xy2 = {"x": 2, "y": 2}
    V = (pf(a * r2) + RatFun(base, b * r2, {"d": 2})
         + RatFun(base, c * r2, xy2))
    H = dop(2, 0) + dop(0, 2) + DiffOp.func(base, dv, V)

    ang = DiffOp(base, dv, {(0, 1): pf(x), (1, 0): pf(-y)})
    f1 = (RatFun(base, 4 * b * x * x * y * y, {"d": 2})
          + RatFun(base, c * (x ** 4 + y ** 4), xy2))
    C1 = ang * ang + DiffOp.func(base, dv, f1)

    lead = dop(2, 0) - dop(0, 2)
    xx_coeff = (pf(2 * a * x * x) + RatFun(base, 2 * b * r2, {"d": 2})
                - RatFun(base, 2 * c * d, xy2))
    xy_coeff = pf(-4 * a * x * y) + RatFun(base, 8 * b * x * y, {"d": 2})
    yy_coeff = (pf(2 * a * y * y) + RatFun(base, 2 * b * r2, {"d": 2})
                + RatFun(base, 2 * c * d, xy2))
    fx = pf(2 * a * x) - RatFun(base, 4 * c, {"x": 3})
    fy = pf(2 * a * y) - RatFun(base, 4 * c, {"y": 3})
    # the c^2 display is parenthesised ambiguously; this is the reading
    # with [.,H] = 0, re-derived by the repair solver
    c2_term = RatFun(base, c * c * d * d, {"x": 4, "y": 4})
    c2_alt = RatFun(base, c ** 4 * d * d, {"x": 8, "y": 8})
    tail = (pf(a * a * d * d)
            + RatFun(base, b * b, {"d": 2})
            + RatFun(base, 8 * a * b * x * x * y * y, {"d": 2})
            + RatFun(base, 2 * b * c, xy2)
            + RatFun(base, 6 * c, {"x": 4})
            + RatFun(base, 6 * c, {"y": 4}))
    C2_fixed = (lead * lead
                + xx_coeff * dop(2, 0) + xy_coeff * dop(1, 1)
                + yy_coeff * dop(0, 2)
                + fx * dop(1, 0) + fy * dop(0, 1)
                + DiffOp.func(base, dv, tail))
    C2 = C2_fixed + DiffOp.func(base, dv, c2_term)

    return Chart(
        name="ttw-k2-quantum",
        ring=ring, base=base,
        diff_vars=dv,
        objects={
            "H": H, "C1": C1, "C2": C2,
            "C2_fixed": C2_fixed,
            "c2_term": c2_term, "c2_term_alt": c2_alt,
            "relations_printed": TTW_K2Q_PRINTED_RELATIONS,
            "casimir_printed": TTW_K2Q_PRINTED_CASIMIR,
            "casimir_garbled": TTW_K2Q_CASIMIR_GARBLED,
        },
        conventions={
            "bracket": "commutator [A,B] = AB - BA",
            "R": "[C1,C2]",
            "symmetrizers": "sym2(A,B)=AB+BA; sym3 = all six orderings",
            "casimir letters": "alpha,beta,gamma printed = a,b,c here",
        })


# ---------------------------------------------------------------------------
# holomorphic family, k = 3


@lru_cache(maxsize=None)
def holo_k3_classical() -> Chart:
    """Cartesian chart of the holomorphic family at k = 3.

    The algebra relations here hold in the momentum-first bracket.
    K1's px term and K2's interaction tail carry the coefficient
    repairs certified by the repair module; the printed variants are
    kept alongside for the comparison checks.
    """
    ring = Ring(("x", "y", "px", "py", "a"))
    x, y, px, py, a = ring.vars("x", "y", "px", "py", "a")
    zp = x + y * _I
    zm = x - y * _I
    base = FactorBase(ring, {"zp": zp, "zm": zm})

    def pf(p):
        return RatFun(base, p)

    pm = px - py * _I
    ang = x * py - y * px
    H = (pf(px * px + py * py)
         + RatFun(base, a * zp ** 6, {"zp": 4, "zm": 4}).reduce())

    lin_x = (3 * x + y * _I) * px          # the printed sign of this
    lin_y = (3 * y - x * _I) * py          # px term is flipped
    K1 = pf(pm ** 3) - RatFun(base, a * (lin_x + lin_y), {"zm": 3})
    K1_printed = pf(pm ** 3) - RatFun(base, a * (-lin_x + lin_y), {"zm": 3})

    q_xx = 3 * x * x + 3 * x * y * _I - 2 * y * y
    q_yy = 2 * x * x + 3 * x * y * _I - 3 * y * y
    q_xy = (x + 3 * y * _I) * (3 * x + y * _I) * _I
    bracket = q_xx * px * px - q_yy * py * py - q_xy * px * py
    a2_term = RatFun(base, a * a * zp ** 3, {"zm": 6})
    K2_lead = pf(ang * pm ** 3)
    K2 = K2_lead + (RatFun(base, a * bracket, {"zm": 3}) - a2_term) * (-_I)
    K2_printed = K2_lead + RatFun(base, a * bracket, {"zm": 3}) - a2_term

    K3 = (pf(ang * ang)
          + RatFun(base, a * y * (3 * x * x - y * y) * (2 * _I), {"zm": 3}))

    pairs = tuple(
        (Derivation(ring, {qn: ring.one()}), Derivation(ring, {pn: ring.one()}))
        for qn, pn in (("x", "px"), ("y", "py")))
    return Chart(
        name="holo-k3-classical",
        ring=ring, base=base,
        orientation="momentum-first",
        pairs=pairs,
        objects={
            "H": H, "K1": K1, "K2": K2, "K3": K3,
            "K1_printed": K1_printed, "K2_printed": K2_printed,
        },
        conventions={"bracket": "momentum-first"})


@lru_cache(maxsize=None)
def holo_k3_quantum() -> Chart:
    """Operator chart of the holomorphic family at k = 3.

    K1's dy coefficient is printed without its factor of i; the chart
    carries the split ansatz pieces so the suite can re-derive the
    factor from [K1, H] = 0 rather than assert it.
    """
    ring = Ring(("x", "y", "a"))
    x, y, a = ring.vars("x", "y", "a")
    zp = x + y * _I
    zm = x - y * _I
    base = FactorBase(ring, {"zp": zp, "zm": zm})
    dv = ("x", "y")

    def pf(p):
        return RatFun(base, p)

    def dop(mx, my, coeff=1):
        return DiffOp(base, dv, {(mx, my): coeff})

    pm = dop(1, 0) + dop(0, 1, -_I)
    ang = DiffOp(base, dv, {(0, 1): pf(x), (1, 0): pf(-y)})
    H = (dop(2, 0) + dop(0, 2)
         + DiffOp.func(base, dv,
                       RatFun(base, a * zp ** 6, {"zp": 4, "zm": 4}).reduce()))

    pm3 = pm * pm * pm
    k1_dx = RatFun(base, -a * (y * _I + 3 * x), {"zm": 3})
    k1_dy_unit = RatFun(base, a * (x + 3 * y * _I), {"zm": 3})
    k1_scalar_unit = RatFun(base, a, {"zm": 3})
    K1_fixed = pm3 + k1_dx * dop(1, 0)
    K1_printed = K1_fixed + k1_dy_unit * dop(0, 1)
    K1 = K1_fixed + (k1_dy_unit * _I) * dop(0, 1)

    w_xx = (2 * y * y - 3 * x * y * _I - 3 * x * x) * _I
    w_xy = -(3 * y * _I + x) * (y * _I + 3 * x)
    w_yy = (2 * x * x + 3 * x * y * _I - 3 * y * y) * _I
    w_x = (3 * y * _I + x) * (-2 * _I)
    w_y = (y * _I + 3 * x) * (-2)
    inner = (dop(2, 0, w_xx) + dop(1, 1, w_xy) + dop(0, 2, w_yy)
             + dop(1, 0, w_x) + dop(0, 1, w_y)
             + DiffOp.func(base, dv, pf(ring.const(-8 * _I))))
    K2 = (ang * pm3
          + RatFun(base, a, {"zm": 3}) * inner
          + DiffOp.func(base, dv,
                        RatFun(base, a * a * zp ** 3, {"zm": 6}) * _I))

    K3 = (ang * ang
          + DiffOp.func(
              base, dv,
              RatFun(base, a * y * (3 * x * x - y * y) * (2 * _I), {"zm": 3})))

    return Chart(
        name="holo-k3-quantum",
        ring=ring, base=base,
        diff_vars=dv,
        objects={
            "H": H, "K1": K1, "K2": K2, "K3": K3,
            "K1_printed": K1_printed, "K1_fixed": K1_fixed,
            "k1_dy_unit": k1_dy_unit, "k1_scalar_unit": k1_scalar_unit,
        },
        conventions={
            "bracket": "commutator [A,B] = AB - BA",
            "symmetrizers": "sym2(A,B)=AB+BA; sym3 = all six orderings",
        })


# ---------------------------------------------------------------------------
# one-dimensional operator model of the k = 3 algebra


@lru_cache(maxsize=None)
def model_1d() -> Chart:
    """One-variable realization; the energy enters as the scalar E."""
    ring = Ring(("x", "a", "E"))
    x, a, E = ring.vars("x", "a", "E")
    base = FactorBase(ring, {"x": x})
    dv = ("x",)

    third = GaussRat(Fraction(1, 3))
    K1 = DiffOp.func(base, dv,
                     RatFun(base, ring.const(-_I * third), {"x": 1}))
    K2 = DiffOp.partial(base, dv, "x")
    K3 = DiffOp(base, dv, {
        (2,): RatFun(base, -9 * x * x),
        (1,): RatFun(base, -27 * x),
        (0,): RatFun(base, -(ring.const(9) + a + 9 * a * E ** 3 * x * x)),
    })
    return Chart(
        name="model-1d",
        ring=ring, base=base,
        diff_vars=dv,
        objects={"K1": K1, "K2": K2, "K3": K3},
        conventions={
            "energy": "the Hamiltonian enters as the formal scalar E",
            "symmetrizers": "sym2(A,B)=AB+BA; sym3 = all six orderings",
        })


# ---------------------------------------------------------------------------
# barrier family, general rational k: the trig ladder chart


@lru_cache(maxsize=None)
def ttw_ladder(p: int, q: int) -> Chart:
    """Exact log-polar chart for the ladder at k = p/q.

    Variables: w = e^{2R} (Laurent), the trig pair ct, st for
    cos, sin of 2k*theta, momenta pR, pt, and the couplings al, be, ga
    (family letters).  Registered denominators are the two barrier
    walls and the numerators of the separation constant and the two
    radicands; a ladder constant is polynomial in the momenta exactly
    when those three cancel out of its reduced denominator.
    """
    ring = Ring(("w", "ct", "st", "pR", "pt", "al", "be", "ga"),
                laurent=("w",), trig=("ct", "st"))
    w, ct, st, pR, pt, al, be, ga = ring.vars(
        "w", "ct", "st", "pR", "pt", "al", "be", "ga")
    walls = FactorBase(ring, {"onepc": ring.one() + ct,
                              "onemc": ring.one() - ct,
                              "st": st})
    l2 = (RatFun(walls, pt * pt)
          + RatFun(walls, 2 * be, {"onepc": 1})
          + RatFun(walls, 2 * ga, {"onemc": 1}))
    h = (RatFun(walls, pR * pR) + l2
         + RatFun(walls, al * w * w)) * RatFun(walls, ring.var("w", -1))
    rad2 = (l2 - be - ga) ** 2 - RatFun(walls, 4 * be * ga)
    rad3 = h * h - RatFun(walls, 4 * al) * l2

    base = FactorBase(ring, {"onepc": ring.one() + ct,
                             "onemc": ring.one() - ct,
                             "st": st,
                             "l2num": l2.num,
                             "rad2num": rad2.num,
                             "rad3num": rad3.num})

    def lift(rf):
        return RatFun(base, rf.num, rf.den)

    l2, h, rad2, rad3 = lift(l2), lift(h), lift(rad2), lift(rad3)

    two_k = GaussRat(Fraction(2 * p, q))
    d_theta = Derivation(ring, {"ct": st * (-two_k), "st": ct * two_k})
    d_R = Derivation(ring, {"w": 2 * w})
    d_pR = Derivation(ring, {"pR": ring.one()})
    d_pt = Derivation(ring, {"pt": ring.one()})

    return Chart(
        name="ttw-ladder-%d-%d" % (p, q),
        ring=ring, base=base,
        orientation="position-first",
        pairs=((d_R, d_pR), (d_theta, d_pt)),
        objects={"l2": l2, "h": h, "rad2": rad2, "rad3": rad3},
        conventions={
            "bracket": "position-first",
            "angle": "ct, st are cos, sin of 2k*theta, k = %d/%d" % (p, q),
            "letters": "al, be, ga are the family couplings",
        })
