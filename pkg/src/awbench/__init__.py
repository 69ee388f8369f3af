"""Exact-arithmetic workbench for almost Poisson algebras and algebras with bracket."""

from .algebras import AlgebraData, CheckReport, Violation
from .errors import InputError, PreconditionError
from .exact import LinearMap, StructureConstants

__version__ = "0.1.0"

__all__ = [
    "AlgebraData",
    "CheckReport",
    "InputError",
    "LinearMap",
    "PreconditionError",
    "StructureConstants",
    "Violation",
]
