"""Parameterized morphisms over matrix and meet-semilattice semantics."""

from .core import (ArityError, CompositionError, EquivVerdict, EvaluationError,
                   InversionError, Param, ParamError, ParamMor, ParamSpace,
                   check_equiv, compose, const_at, eval_at, tensor)
from .laws import LawReport, LawResult, check_laws
from .matrix import AffineExpr, MatrixBackend, gate, matrix_category

__all__ = [
    "AffineExpr", "ArityError", "CompositionError", "EquivVerdict",
    "EvaluationError", "InversionError", "LawReport", "LawResult",
    "MatrixBackend", "Param", "ParamError", "ParamMor", "ParamSpace",
    "check_equiv", "check_laws", "compose", "const_at", "eval_at", "gate",
    "matrix_category", "tensor",
]

__version__ = "0.1.0"
