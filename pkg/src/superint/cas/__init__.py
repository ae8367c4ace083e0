"""Exact computer algebra for the verification suites.

Everything here computes over Gaussian rationals: sparse multivariate
polynomials, rational functions with factored denominators, symbolic
canonical brackets, and a differential-operator algebra with
composition, commutators and symmetrizers.  No floating point enters
any identity check in this package.
"""

from .gaussian import GaussRat
from .rings import Ring, Poly, degree
from .ratfun import RatFun, FactorBase
from .diffop import DiffOp, op_compose, op_commutator, sym2, sym3
from .linsolve import (LinearSolveError, InconsistentSystemError,
                       UnderdeterminedSystemError, StreamingSolver,
                       solve_coefficients)
from .charts import Derivation, sym_bracket
from .suites import (suite_ttw_k2_classical, suite_ttw_general,
                     suite_holo_k3_classical, suite_quantum, suite_models)
from .repair import derive_repair, REPAIR_TARGETS

__all__ = [
    "GaussRat", "Ring", "Poly", "degree", "RatFun", "FactorBase",
    "DiffOp", "op_compose", "op_commutator", "sym2", "sym3",
    "LinearSolveError", "InconsistentSystemError",
    "UnderdeterminedSystemError", "StreamingSolver", "solve_coefficients",
    "Derivation", "sym_bracket",
    "suite_ttw_k2_classical", "suite_ttw_general",
    "suite_holo_k3_classical", "suite_quantum", "suite_models",
    "derive_repair", "REPAIR_TARGETS",
]
