"""
Exactly Solvable Family Module

At l = -1, wa2 = 1/2, g = 2 the Case 2 ODE in z = x^2 + 1 becomes

    4z(z-1) f'' - (2z^2 + 4z - 8) f' + 2n z f = 0,   2Ea^2 = 2n - 3/2

and admits polynomial solutions for every degree except n = 1.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional
import logging
from exactmath import RatPoly, hyp1f1_terminating, laguerre_assoc, sqrt_pi_gamma_ratio
from .cases import ode_case2, case2_energy
from .theorem import PolySolution, bands_from_ode, exact_polynomial_solution, ode_residual

logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

FAMILY_L = -1
FAMILY_WA2 = Fraction(1, 2)
FAMILY_G = Fraction(2)


class ProportionalityError(ArithmeticError):
    """Closed-form and linear-solve polynomials are not scalar multiples."""

    def __init__(self, index: int, first: RatPoly, second: RatPoly):
        super().__init__(f"closed forms at index {index} disagree: {first} vs {second}")
        self.first = first
        self.second = second


@dataclass(frozen=True)
class FamilyMember:
    """One index of the family; `solution` is None when the index is inadmissible."""
    degree: int
    two_e_a2: Fraction
    solution: Optional[PolySolution]
    list_index: Optional[int]

    @property
    def admissible(self) -> bool:
        return self.solution is not None


def _list_index(degree: int) -> int:
    """Position in the printed sequence f_0 = 1, f_1 = z^2 - 2, f_2 = z^3 - 6z^2 + 8, ..."""
    return 0 if degree == 0 else degree - 1


def family_solution(degree: int) -> Optional[PolySolution]:
    """Exact degree-n solution of the family ODE, or None."""
    bands = bands_from_ode(ode_case2(FAMILY_L, FAMILY_WA2), degree)
    f = exact_polynomial_solution(bands, "z")
    if f is None or f.degree != degree:
        return None
    residual = ode_residual(bands.coefficients, f)
    return PolySolution(variable="z", ode_index=degree, polynomial=f, substitution_residual=residual)


def exact_family(max_index: int) -> List[FamilyMember]:
    """
    Attempt a polynomial solution for every index 0..max_index.

    Args:
        max_index: Largest degree to try

    Returns:
        One FamilyMember per index, inadmissible ones included
    """
    members = []
    for degree in range(max_index + 1):
        solution = family_solution(degree)
        two_e_a2 = case2_energy(FAMILY_L, FAMILY_WA2, degree)
        members.append(FamilyMember(
            degree=degree,
            two_e_a2=two_e_a2,
            solution=solution,
            list_index=_list_index(degree) if solution is not None else None,
        ))
        if solution is None:
            logger.info(f"Index {degree} admits no polynomial solution")
    return members


def hypergeometric_form(m: int) -> RatPoly:
    """-3z(2m+1) 1F1(-m; 3/2; (z-1)/2) + 6((m+1)z - 1) 1F1(-m+1; 3/2; (z-1)/2)."""
    z = RatPoly.variable("z")
    w = (z - 1) / 2
    return (-3 * (2 * m + 1) * z * hyp1f1_terminating(m, Fraction(3, 2), w)
            + 6 * ((m + 1) * z - 1) * hyp1f1_terminating(m - 1, Fraction(3, 2), w))


def laguerre_form(m: int) -> RatPoly:
    """Associated-Laguerre combination with prefactor 3(-1)^m sqrt(pi) Gamma(m) / (2 Gamma(m + 3/2))."""
    z = RatPoly.variable("z")
    y = z - 1
    w = y / 2
    prefactor = 3 * (-1) ** m * sqrt_pi_gamma_ratio(m) / 2
    bracket = (((1 + m) * y * y + m) * laguerre_assoc(m, Fraction(1, 2), w)
               - y * ((1 + m) * z - 1) * laguerre_assoc(m, Fraction(3, 2), w))
    return bracket * prefactor


def exact_family_closed_forms(m: int) -> PolySolution:
    """
    Check the hypergeometric and Laguerre closed forms for list index m.

    List index m >= 1 produces the degree m+1 solution; m = 0 is f = 1.

    Raises:
        ProportionalityError: if the forms are not scalar multiples of each other
            and of the linear-solve polynomial
    """
    if m < 0:
        raise ValueError("closed forms need m >= 0")
    if m == 0:
        one = RatPoly([1], "z")
        return PolySolution(variable="z", ode_index=0, polynomial=one, substitution_residual=RatPoly([], "z"))
    from_hypergeometric = hypergeometric_form(m)
    from_laguerre = laguerre_form(m)
    reference = family_solution(m + 1)
    if reference is None:
        raise ProportionalityError(m, from_hypergeometric, RatPoly([], "z"))
    for candidate in (from_hypergeometric, from_laguerre):
        try:
            candidate.ratio_to(reference.polynomial)
        except ValueError:
            logger.error(f"Closed form at index {m} is not proportional to {reference.polynomial}")
            raise ProportionalityError(m, candidate, reference.polynomial)
    primitive = from_hypergeometric.primitive()
    residual = ode_residual(ode_case2(FAMILY_L, FAMILY_WA2), primitive)
    return PolySolution(variable="z", ode_index=m + 1, polynomial=primitive, substitution_residual=residual)
