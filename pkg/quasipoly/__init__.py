"""Quasi-Polynomial Solutions Module - __init__.py"""
from .theorem import (
    OdeCoefficients,
    BandSequence,
    PolySolution,
    bands_from_ode,
    banded_determinant,
    dense_determinant,
    null_space,
    ode_residual,
)
from .cases import (
    Case2Solution,
    FactorizationError,
    UnphysicalParameterError,
    ode_case1,
    case1_energy,
    case1_determinant,
    case1_eigenfunctions,
    ode_case2,
    case2_energy,
    case2_Q,
    case2_solution_at_root,
)
from .exact_family import FamilyMember, ProportionalityError, exact_family, exact_family_closed_forms
from .general import (
    QuasiSolution,
    OrderOneBranch,
    NoRealBranchError,
    ode_general,
    condition_polynomial,
    general_quasi_solve,
    quasi_polynomial,
    k0_closed_form,
    n1_closed_forms,
)

__all__ = [
    "OdeCoefficients",
    "BandSequence",
    "PolySolution",
    "bands_from_ode",
    "banded_determinant",
    "dense_determinant",
    "null_space",
    "ode_residual",
    "Case2Solution",
    "FactorizationError",
    "UnphysicalParameterError",
    "ode_case1",
    "case1_energy",
    "case1_determinant",
    "case1_eigenfunctions",
    "ode_case2",
    "case2_energy",
    "case2_Q",
    "case2_solution_at_root",
    "FamilyMember",
    "ProportionalityError",
    "exact_family",
    "exact_family_closed_forms",
    "QuasiSolution",
    "OrderOneBranch",
    "NoRealBranchError",
    "ode_general",
    "condition_polynomial",
    "general_quasi_solve",
    "quasi_polynomial",
    "k0_closed_form",
    "n1_closed_forms",
]
