"""
Special Cases Module

The isotonic limit (Case 1, variable x) and the one-state quasi-exact family
(Case 2, variable z = x^2 + 1) of the generalized isotonic oscillator.
Energies are returned as 2Ea^2, the eigenvalue of the scaled operator.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union
import logging
from exactmath import RatPoly, RealRoot, as_fraction, hyp1f1_terminating, working_context, to_big
from .theorem import (
    OdeCoefficients,
    PolySolution,
    bands_from_ode,
    banded_determinant,
    band_residual,
    exact_polynomial_solution,
    forward_coefficients,
    ode_residual,
)

logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

A2W = "a2w"


class FactorizationError(ArithmeticError):
    """The Case 2 determinant did not factor as claimed."""

    def __init__(self, l: int, n: int, remainder: RatPoly):
        super().__init__(f"factorization claim violated for l={l}, n={n}: remainder {remainder}")
        self.remainder = remainder


class UnphysicalParameterError(ValueError):
    """A parameter value outside the physical domain."""


def ode_case1(l: int, wa2) -> OdeCoefficients:
    """
    Isotonic-limit ODE  x f'' + (-2 wa2 x^2 + 2(l+1)) f' + (2Ea^2 - wa2(2l+3)) x f = 0.

    Args:
        l: Angular momentum index (>= -1)
        wa2: Product w*a^2 (> 0)
    """
    if l < -1:
        raise ValueError("l must be >= -1")
    wa2 = as_fraction(wa2)
    if wa2 <= 0:
        raise UnphysicalParameterError("wa2 must be positive")
    return OdeCoefficients(a32=Fraction(1), a20=-2 * wa2, a22=Fraction(2 * (l + 1)), var="x")


def case1_energy(l: int, wa2, n_prime: int) -> Fraction:
    """2Ea^2 = wa2 (2n' + 2l + 3), from the degree condition on tau10."""
    wa2 = as_fraction(wa2)
    tau10 = ode_case1(l, wa2).necessary_tau10(n_prime)
    return wa2 * (2 * l + 3) - tau10


def case1_determinant(l: int, wa2, n_prime: int) -> Fraction:
    """Delta_{n'+1} for Case 1; identically zero for l = -1 and for even n'."""
    return banded_determinant(bands_from_ode(ode_case1(l, wa2), n_prime))


def case1_eigenfunctions(l: int, wa2, n: int) -> PolySolution:
    """
    f_n(x) = 1F1(-n; l + 3/2; wa2 x^2), a polynomial of degree 2n in x.

    Returns:
        PolySolution in x with ode_index 2n and an exactly zero residual
    """
    if n < 0:
        raise ValueError("case1_eigenfunctions needs n >= 0")
    wa2 = as_fraction(wa2)
    argument = RatPoly.monomial(2, wa2, "x")
    f = hyp1f1_terminating(n, Fraction(2 * l + 3, 2), argument).primitive()
    residual = ode_residual(ode_case1(l, wa2), f)
    if not residual.is_zero():
        raise ArithmeticError(f"case 1 eigenfunction residual is {residual}")
    return PolySolution(variable="x", ode_index=2 * n, polynomial=f, substitution_residual=residual)


def ode_case2(l: int, wa2) -> OdeCoefficients:
    """
    Case 2 ODE in z = x^2 + 1 (g tied to wa2 by the indicial relation).

    4z(z-1) f'' + (-4 wa2 z^2 - 2(6l+5+6wa2) z + 16(l+1+wa2)) f'
        - (tau10 z) f = 0,  tau10 = -2Ea^2 - wa2(6l+5+8wa2)

    wa2 may be a Fraction, a RatPoly in a2w, or an mpf.
    """
    return OdeCoefficients(
        a31=4,
        a32=-4,
        a20=-4 * wa2,
        a21=-2 * (6 * l + 5 + 6 * wa2),
        a22=16 * (l + 1 + wa2),
        tau11=0,
        var="z",
    )


def case2_energy(l: int, wa2, n_prime: int):
    """2Ea^2 = wa2 (4n' - 6l - 5 - 8 wa2)."""
    return wa2 * (4 * n_prime - 6 * l - 5 - 8 * wa2)


def case2_coupling(l: int, wa2):
    """g = 2(1 + l + wa2)(3 + 2l + 2wa2)."""
    return 2 * (1 + l + wa2) * (3 + 2 * l + 2 * wa2)


def case2_exponent(l: int, wa2):
    """mu = -2(1 + l + wa2)."""
    return -2 * (1 + l + wa2)


def case2_Q(l: int, n: int) -> RatPoly:
    """
    Cofactor polynomial Q_{n-1}^l in a2w.

    Delta_{n+1} = const * a2w * (l+1+a2w) * (1+2l+2a2w) * Q_{n-1}^l(a2w); the
    a2w factor comes from beta_0 = 0.

    Raises:
        FactorizationError: if any of the divisions leaves a remainder
    """
    if n < 2:
        raise ValueError("case2_Q needs n >= 2")
    s = RatPoly.variable(A2W)
    delta = banded_determinant(bands_from_ode(ode_case2(l, s), n))
    quotient = delta
    for factor in (s, s + (l + 1), 2 * s + (1 + 2 * l)):
        quotient, remainder = divmod(quotient, factor)
        if not remainder.is_zero():
            logger.error(f"Case 2 factorization failed at l={l}, n={n}")
            raise FactorizationError(l, n, remainder)
    logger.info(f"Q_{n - 1}^{l} has degree {quotient.degree}")
    return quotient.primitive()


@dataclass(frozen=True)
class Case2Solution:
    """Full quasi-exact package at one positive root of Q."""
    l: int
    n: int
    wa2: object
    g: object
    mu: object
    two_e_a2: object
    solution_z: PolySolution
    solution_x: Optional[PolySolution]

    @property
    def energy_scaled(self):
        """Ea^2."""
        return self.two_e_a2 / 2

    @property
    def potential_coefficients(self):
        """((wa2)^2, 2g): coefficients of x^2 and of (x^2-1)/(x^2+1)^2 in the scaled potential."""
        return self.wa2 * self.wa2, 2 * self.g


def case2_solution_at_root(l: int, n: int, root: Union[Fraction, RealRoot, object],
                           digits: Optional[int] = None) -> Case2Solution:
    """
    Assemble g, mu, 2Ea^2 and the polynomial factor at a root a2w of Q.

    Args:
        l: Angular momentum index
        n: Polynomial degree in z
        root: Exact Fraction, RealRoot (exact when recognized) or mpf value
        digits: Working precision for irrational roots

    Raises:
        UnphysicalParameterError: if the root is not positive
    """
    if isinstance(root, RealRoot):
        root = root.exact if root.exact is not None else root.value
    if isinstance(root, int):
        root = Fraction(root)
    if root <= 0:
        raise UnphysicalParameterError("unphysical: a²w must be positive")
    if isinstance(root, Fraction):
        bands = bands_from_ode(ode_case2(l, root), n)
        f = exact_polynomial_solution(bands, "z")
        if f is None:
            raise ArithmeticError(f"no degree-{n} solution at a2w={root}")
        residual = ode_residual(bands.coefficients, f)
        solution_z = PolySolution(variable="z", ode_index=n, polynomial=f, substitution_residual=residual)
        in_x = f(RatPoly([1, 0, 1], "x")).primitive()
        solution_x = PolySolution(variable="x", ode_index=2 * n, polynomial=in_x,
                                  substitution_residual=residual)
    else:
        ctx = working_context(digits or root.context.dps)
        s = to_big(root, ctx)
        bands = bands_from_ode(ode_case2(l, s), n)
        coefs = forward_coefficients(bands, ctx)
        solution_z = PolySolution(variable="z", ode_index=n, coefficients=tuple(coefs),
                                  substitution_residual=band_residual(bands, coefs, ctx))
        solution_x = None
        root = s
    package = Case2Solution(
        l=l, n=n, wa2=root,
        g=case2_coupling(l, root),
        mu=case2_exponent(l, root),
        two_e_a2=case2_energy(l, root, n),
        solution_z=solution_z,
        solution_x=solution_x,
    )
    logger.info(f"Case 2 solution l={l}, n={n}: 2Ea^2={package.two_e_a2}")
    return package
