"""Exact computations with the universal Askey-Wilson algebra and its modules."""

from .deltamod import DeltaRep, ModuleParams, check_relations, verma_truncation, vn_module
from .errors import AWError, OutsideFieldError, PreconditionError, VerificationError
from .linalg import ExactMatrix, Polynomial
from .scalar import GaussianRational, format_scalar, gr, parse_scalar

__version__ = "0.1.0"

__all__ = [
    "AWError",
    "DeltaRep",
    "ExactMatrix",
    "GaussianRational",
    "ModuleParams",
    "OutsideFieldError",
    "Polynomial",
    "PreconditionError",
    "VerificationError",
    "check_relations",
    "format_scalar",
    "gr",
    "parse_scalar",
    "verma_truncation",
    "vn_module",
]
