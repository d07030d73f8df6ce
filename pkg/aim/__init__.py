"""Asymptotic Iteration Method Module - __init__.py"""
from .taylor import TaylorSeries
from .iteration import (
    AimProblem,
    AimDomainError,
    SeriesDepthError,
    build_lambda_s0,
    aim_iterate,
    termination_value,
    termination_sequence,
    termination_delta,
)
from .solver import (
    AimConfig,
    EigenResult,
    EigenSearch,
    CrosscheckError,
    find_eigenvalues,
    default_bracket,
    quasi_exact_crosscheck,
)

__all__ = [
    "TaylorSeries",
    "AimProblem",
    "AimDomainError",
    "SeriesDepthError",
    "build_lambda_s0",
    "aim_iterate",
    "termination_value",
    "termination_sequence",
    "termination_delta",
    "AimConfig",
    "EigenResult",
    "EigenSearch",
    "CrosscheckError",
    "find_eigenvalues",
    "default_bracket",
    "quasi_exact_crosscheck",
]
