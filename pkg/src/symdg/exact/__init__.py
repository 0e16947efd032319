"""Exact linear algebra over the rationals and other exact fields."""

from .linalg import (
    NONZERO_PRODUCT,
    ZERO,
    JordanSpec,
    annihilates,
    is_diagonalizable,
    jordan_block,
    jordan_structure,
    jordan_structure_rational,
    jordan_tensor_spec,
    minimal_polynomial,
    rank_sequence,
)
from .matrix import Matrix, RationalMatrix, kronecker
from .poly import QQ, Poly, RationalField, is_squarefree

__all__ = [
    "NONZERO_PRODUCT",
    "QQ",
    "ZERO",
    "JordanSpec",
    "Matrix",
    "Poly",
    "RationalField",
    "RationalMatrix",
    "annihilates",
    "is_diagonalizable",
    "is_squarefree",
    "jordan_block",
    "jordan_structure",
    "jordan_structure_rational",
    "jordan_tensor_spec",
    "kronecker",
    "minimal_polynomial",
    "rank_sequence",
]
