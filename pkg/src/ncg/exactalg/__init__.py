"""Exact scalars: number fields, polynomials, rational functions, matrices."""

from .numberfield import QQ, NFElem, NumberField, format_scalar, named_field, nf_reduce
from .mpoly import MPoly, PolyRing, poly_gcd, poly_lcm
from .ratfunc import RatFunc, rf_normalize
from .matrix import ExactMatrix, kernel, rank, rref, solve
from .parse import parse_rf, parse_scalar
from . import kernels

__all__ = [
    "QQ", "NFElem", "NumberField", "format_scalar", "named_field", "nf_reduce",
    "MPoly", "PolyRing", "poly_gcd", "poly_lcm",
    "RatFunc", "rf_normalize",
    "ExactMatrix", "kernel", "rank", "rref", "solve",
    "parse_rf", "parse_scalar", "kernels",
]
