"""Computational toolkit for the quantum projective plane CP^2_q.

Exact q-arithmetic, U_q(su(3)) representations, PBW normal forms for
A(SU_q(3)), monopole line bundles, the holomorphic calculus, gauged
Laplacians, Fredholm pairings and twisted cyclic pairings.
"""

from .qcoeff import QRatio, QScalar, Surd, q_factorial, q_number, q_trinomial
from .algebra import NormalForm, normalize, p, u, z, zs
from .parser import parse_expr
from .report import Check, Report
from .suites import RunConfig, run_suite

__version__ = "0.1.0"

__all__ = [
    "QScalar", "QRatio", "Surd", "q_number", "q_factorial", "q_trinomial",
    "NormalForm", "normalize", "u", "z", "zs", "p", "parse_expr",
    "Check", "Report", "RunConfig", "run_suite", "__version__",
]
