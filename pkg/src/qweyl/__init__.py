"""Exact verification of q-deformed plane waves and Weyl-equation solutions
on the momentum q-cone."""
from .ncalg import MINKOWSKI, NCAlgebra, NCElement, NCMonomial, cone_reduce, multiply, normal_order, omega, parse_word
from .operators import OperatorExpr, build_qdal, build_qI, build_qI_pm, get_operator
from .planewave import PhasePoly, PlaneWaveSpec, SymbolicUnit, beta, exp_q, hhat
from .repspace import RepElement
from .scalars import LAMBDA, ONE, ZERO, GaussianRational, PoleError, QScalar, eval_at_q1, qfactorial, qnum, qpow
from .weylsol import WeylSolSpec, assemble_series, chat, verify_weyl

__version__ = "0.1.0"

__all__ = [
    "MINKOWSKI", "NCAlgebra", "NCElement", "NCMonomial", "cone_reduce", "multiply", "normal_order", "omega",
    "parse_word", "OperatorExpr", "build_qdal", "build_qI", "build_qI_pm", "get_operator", "PhasePoly",
    "PlaneWaveSpec", "SymbolicUnit", "beta", "exp_q", "hhat", "RepElement", "LAMBDA", "ONE", "ZERO",
    "GaussianRational", "PoleError", "QScalar", "eval_at_q1", "qfactorial", "qnum", "qpow", "WeylSolSpec",
    "assemble_series", "chat", "verify_weyl",
]
