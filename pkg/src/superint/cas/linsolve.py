"""Exact linear systems over Q(i), streamed one equation at a time.

Membership questions ("is this bracket a combination of these basis
elements?") turn into very tall, very sparse systems: one equation per
monomial, a few dozen unknowns.  StreamingSolver keeps only the
reduced pivot rows, so the tall direction never materialises.

Failure modes are part of the interface: an inconsistent equation
raises immediately with the offending row's label, and an
underdetermined solve reports the free unknowns and a nullspace basis
instead of guessing.
"""

from __future__ import annotations

from .gaussian import GaussRat
from .rings import Poly

__all__ = [
    "LinearSolveError",
    "InconsistentSystemError",
    "UnderdeterminedSystemError",
    "StreamingSolver",
    "solve_coefficients",
]

_ZERO = GaussRat(0)


class LinearSolveError(Exception):
    """Base class for exact solve failures."""


class InconsistentSystemError(LinearSolveError):
    def __init__(self, message, label=None, residual=None):
        super().__init__(message)
        self.label = label
        self.residual = residual


class UnderdeterminedSystemError(LinearSolveError):
    def __init__(self, message, free=None, nullspace=None):
        super().__init__(message)
        self.free = free or []
        self.nullspace = nullspace or []


class StreamingSolver:
    """Gaussian elimination over GaussRat with streaming equations."""

    def __init__(self, nunknowns: int):
        self.n = nunknowns
        self.pivot_rows = {}   # pivot index -> (row list, rhs), row[pivot] == 1

    def add_equation(self, coeffs, rhs, label=None) -> bool:
        """Reduce one equation against the current pivots.

        Returns True when the equation contributed a new pivot.  A row
        that reduces to 0 == nonzero raises InconsistentSystemError on
        the spot, carrying the caller's label for the offending row.
        """
        row = self._dense(coeffs)
        rhs = GaussRat.coerce(rhs)
        for p in sorted(self.pivot_rows):
            c = row[p]
            if c.is_zero():
                continue
            prow, prhs = self.pivot_rows[p]
            for j in range(p, self.n):
                if not prow[j].is_zero():
                    row[j] = row[j] - c * prow[j]
            rhs = rhs - c * prhs
        for j in range(self.n):
            if not row[j].is_zero():
                inv = GaussRat(1) / row[j]
                row = [x * inv for x in row]
                self.pivot_rows[j] = (row, rhs * inv)
                return True
        if not rhs.is_zero():
            raise InconsistentSystemError(
                "equation reduces to 0 == %s%s"
                % (rhs, "" if label is None else " at %r" % (label,)),
                label=label, residual=rhs)
        return False

    def _dense(self, coeffs):
        if isinstance(coeffs, dict):
            row = [_ZERO] * self.n
            for j, c in coeffs.items():
                row[j] = GaussRat.coerce(c)
            return row
        row = [GaussRat.coerce(c) for c in coeffs]
        if len(row) != self.n:
            raise ValueError("expected %d coefficients, got %d"
                             % (self.n, len(row)))
        return row

    @property
    def rank(self) -> int:
        return len(self.pivot_rows)

    def solve(self):
        """Back-substitute to the unique solution, or raise."""
        pivots = sorted(self.pivot_rows)
        if len(pivots) < self.n:
            free = [j for j in range(self.n) if j not in self.pivot_rows]
            null = []
            for f in free:
                vec = [_ZERO] * self.n
                vec[f] = GaussRat(1)
                for p in reversed(pivots):
                    row, _ = self.pivot_rows[p]
                    acc = _ZERO
                    for j in range(p + 1, self.n):
                        if not row[j].is_zero():
                            acc = acc + row[j] * vec[j]
                    vec[p] = -acc
                null.append(vec)
            raise UnderdeterminedSystemError(
                "rank %d < %d unknowns; free columns %s"
                % (len(pivots), self.n, free),
                free=free, nullspace=null)
        x = [_ZERO] * self.n
        for p in reversed(pivots):
            row, rhs = self.pivot_rows[p]
            acc = rhs
            for j in range(p + 1, self.n):
                if not row[j].is_zero():
                    acc = acc - row[j] * x[j]
            x[p] = acc
        return x


def _as_vector(obj) -> dict:
    if isinstance(obj, Poly):
        return obj.terms
    if isinstance(obj, dict):
        return obj
    terms = getattr(obj, "terms", None)
    if terms is not None:
        return terms
    raise TypeError("cannot vectorise %r" % (type(obj).__name__,))


def solve_coefficients(target, basis, labels=None):
    """Solve target == sum_j x_j * basis_j exactly.

    target and every basis element are sparse vectors: Poly, or any
    mapping from hashable keys to scalars.  Returns the coefficient
    list (or a dict when labels are given).  Raises
    InconsistentSystemError when no combination exists and
    UnderdeterminedSystemError when the basis is degenerate on the
    support, with the nullspace spelled out.
    """
    tvec = _as_vector(target)
    bvecs = [_as_vector(b) for b in basis]
    n = len(bvecs)
    keys = set(tvec)
    for bv in bvecs:
        keys.update(bv)
    solver = StreamingSolver(n)
    for key in sorted(keys, key=repr):
        coeffs = {}
        for j, bv in enumerate(bvecs):
            c = bv.get(key, _ZERO)
            c = GaussRat.coerce(c)
            if not c.is_zero():
                coeffs[j] = c
        solver.add_equation(coeffs, tvec.get(key, _ZERO), label=key)
    x = solver.solve()
    if labels is not None:
        return dict(zip(labels, x))
    return x
