"""Exact scalars, Laurent polynomials and normal forms."""

from .laurent import LaurentPoly, laurent_normalize, laurent_gcd, Q, qpow
from .matrix import (IntegerRing, LaurentRing, RationalField, ZZ, QQ, LL, MatrixL, SnfResult,
                     smith_normal_form, rank_over_fraction_field, cokernel_decompose)
from .cokernel import SparseCokernel, field_rank

__all__ = [
    "LaurentPoly", "laurent_normalize", "laurent_gcd", "Q", "qpow",
    "IntegerRing", "LaurentRing", "RationalField", "ZZ", "QQ", "LL", "MatrixL", "SnfResult",
    "smith_normal_form", "rank_over_fraction_field", "cokernel_decompose",
    "SparseCokernel", "field_rank",
]
