"""Exact construction, verification and reduction of (mock) tridiagonal systems."""

from .exactfield import GF, QQ, FieldScalar, FieldSpec, parse_scalar
from .linalg import Matrix, Polynomial, Subspace
from .tdcore import MtdSystem, ParameterArray, parameter_array
from .quotient import is_td, quotient_system

__all__ = [
    "GF",
    "QQ",
    "FieldScalar",
    "FieldSpec",
    "Matrix",
    "MtdSystem",
    "ParameterArray",
    "Polynomial",
    "Subspace",
    "is_td",
    "parameter_array",
    "parse_scalar",
    "quotient_system",
]
