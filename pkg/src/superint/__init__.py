"""Superintegrable pairs on the plane: constants of motion, exactly.

Two families of 2-D Hamiltonians with higher-order constants of motion
for every rational index k = p/q: an anisotropic oscillator with
angular barriers and a holomorphic-potential family.  The package
carries both a floating-point lane (Hamiltonian flows, ladder-built
constants, orbit closure scans) and an exact lane (a small computer
algebra core that proves conservation, closure of the symmetry
algebra, and the repairs of a handful of garbled catalogue
coefficients).
"""

from . import cas, dynamics, ladder, model, orbits, report
from .model import (ParamsHolo, ParamsTTW, PhasePoint, RationalIndex,
                    SingularPointError, convert, make_holo_h, make_holo_l,
                    make_ttw_h, make_ttw_l2, params_from_k2_cartesian)
from .report import VerificationReport

__version__ = "0.1.0"

__all__ = [
    "cas", "dynamics", "ladder", "model", "orbits", "report",
    "ParamsHolo", "ParamsTTW", "PhasePoint", "RationalIndex",
    "SingularPointError", "convert",
    "make_holo_h", "make_holo_l", "make_ttw_h", "make_ttw_l2",
    "params_from_k2_cartesian",
    "VerificationReport",
    "__version__",
]
