"""Exact Math Module - __init__.py"""
from .ratpoly import RatPoly, as_fraction, poly_arith, poly_gcd, square_free_decomposition
from .roots import RealRoot, IdenticallyZeroError, poly_real_roots, sturm_sequence
from .bigreal import BigReal, working_context, to_big, tolerance
from .special import (
    PochhammerPoleError,
    pochhammer,
    hyp1f1_terminating,
    laguerre_assoc,
    half_integer_gamma,
    sqrt_pi_gamma_ratio,
)

__all__ = [
    "RatPoly",
    "as_fraction",
    "poly_arith",
    "poly_gcd",
    "square_free_decomposition",
    "RealRoot",
    "IdenticallyZeroError",
    "poly_real_roots",
    "sturm_sequence",
    "BigReal",
    "working_context",
    "to_big",
    "tolerance",
    "PochhammerPoleError",
    "pochhammer",
    "hyp1f1_terminating",
    "laguerre_assoc",
    "half_integer_gamma",
    "sqrt_pi_gamma_ratio",
]
