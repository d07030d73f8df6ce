"""
General Quasi-Polynomial Solutions Module

With z = x^2 and t = z/(1+z), psi = x^{l+1}(1+x^2)^mu e^{-wa2 x^2/2} f(t) and the
energy tied to mu by 2Ea^2 = (2l+3+4mu) wa2, f satisfies an ODE of the
polynomial-solution class in t. A degree-k solution needs
g = (mu-k)(mu-k-1) and the vanishing of Delta_{k+1}(mu, g); substituting the
first condition leaves a univariate polynomial in mu.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple
import logging
import config
from exactmath import (
    RatPoly,
    as_fraction,
    poly_real_roots,
    working_context,
    to_big,
    tolerance,
)
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


class NoRealBranchError(ValueError):
    """The l-branch discriminant is negative."""

    def __init__(self, discriminant):
        super().__init__(f"no real l branch (discriminant {discriminant})")


def ode_general(l: int, wa2, mu, g) -> OdeCoefficients:
    """
    ODE coefficients in t for given (mu, g); entries follow the type of mu and g.

    (t^3 - 2t^2 + t) f'' + (-2(mu-1)t^2 + (2mu - wa2 - l - 7/2)t + l + 3/2) f'
        + ((mu(mu-1) - g) t + g/2 + mu(l + 3/2 + wa2)) f = 0
    """
    half = Fraction(1, 2) if not hasattr(mu, "_mpf_") else mu.context.mpf(1) / 2
    return OdeCoefficients(
        a30=1,
        a31=-2,
        a32=1,
        a33=0,
        a20=-2 * (mu - 1),
        a21=2 * mu - wa2 - l - 7 * half,
        a22=l + 3 * half,
        tau10=g - mu * (mu - 1),
        tau11=-g * half - mu * (l + 3 * half + wa2),
        var="t",
    )


def coupling_for_order(mu, k: int):
    """g = (mu - k)(mu - k - 1)."""
    return (mu - k) * (mu - k - 1)


def energy_from_mu(l: int, wa2, mu):
    """Ea^2 = (2l + 3 + 4mu) wa2 / 2."""
    return (2 * l + 3 + 4 * mu) * wa2 / 2


def condition_polynomial(k: int, l: int, wa2) -> RatPoly:
    """Delta_{k+1} in mu after substituting g = (mu-k)(mu-k-1)."""
    wa2 = as_fraction(wa2)
    mu = RatPoly.variable("mu")
    g = coupling_for_order(mu, k)
    coefficients = ode_general(l, wa2, mu, g)
    return banded_determinant(bands_from_ode(coefficients, k))


@dataclass(frozen=True)
class QuasiSolution:
    """
    One (mu, g, Ea^2) point of the quasi-exact family of order k.

    mu, g and energy_scaled are Fractions when the root is rational (exact is
    True) and mpf otherwise; `numeric` gives all three in one context.
    residuals holds |Delta_{k+1}(mu)| and the largest residual left after
    substituting the order-k polynomial back into its ODE.
    """
    k: int
    l: int
    wa2: Fraction
    mu: object
    g: object
    energy_scaled: object
    residuals: Tuple
    physical: bool
    exact: bool
    multiplicity: int = 1

    @property
    def two_e_a2(self):
        return 2 * self.energy_scaled

    @property
    def energy_over_w(self):
        """E/w = Ea^2 / wa2."""
        return self.energy_scaled / self.wa2

    def numeric(self, ctx) -> Tuple:
        """(mu, g, Ea^2) as reals of ctx, whichever kind the root is."""
        return to_big(self.mu, ctx), to_big(self.g, ctx), to_big(self.energy_scaled, ctx)


def _exact_substitution_residual(l: int, wa2: Fraction, mu: Fraction, g: Fraction, k: int) -> Fraction:
    bands = bands_from_ode(ode_general(l, wa2, mu, g), k)
    f = exact_polynomial_solution(bands, "t")
    if f is None:
        logger.warning(f"No degree-{k} polynomial at the rational root mu={mu}")
        return Fraction(1)
    return max((abs(c) for c in ode_residual(bands.coefficients, f).coefficients), default=Fraction(0))


def general_quasi_solve(k: int, l: int, wa2, digits: Optional[int] = None) -> List[QuasiSolution]:
    """
    All real (mu, g) solutions of order k for fixed l and wa2.

    Args:
        k: Polynomial degree of f in t (>= 0)
        l: Angular momentum index (>= -1)
        wa2: Rational wa2 > 0
        digits: Working precision

    Returns:
        Solutions sorted by mu; roots with g <= 0 are kept but flagged unphysical
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    wa2 = as_fraction(wa2)
    if wa2 <= 0:
        raise ValueError("wa2 must be positive")
    digits = digits or config.DEFAULT_DIGITS
    guard = digits + config.ROOT_GUARD_DIGITS
    condition = condition_polynomial(k, l, wa2)
    logger.info(f"Order-{k} condition polynomial in mu has degree {condition.degree}")
    ctx = working_context(guard)
    out_ctx = working_context(digits)
    threshold = tolerance(out_ctx)
    solutions = []
    for root in poly_real_roots(condition, digits=guard):
        if root.exact is not None:
            mu = root.exact
            g = coupling_for_order(mu, k)
            residual = (abs(Fraction(condition(mu))), _exact_substitution_residual(l, wa2, mu, g, k))
            energy = energy_from_mu(l, wa2, mu)
        else:
            mu_big = to_big(root.value, ctx)
            g_big = coupling_for_order(mu_big, k)
            bands = bands_from_ode(ode_general(l, to_big(wa2, ctx), mu_big, g_big), k)
            delta = banded_determinant(bands)
            substitution = band_residual(bands, forward_coefficients(bands, ctx), ctx)
            residual = (out_ctx.mpf(abs(delta)), out_ctx.mpf(substitution))
            if residual[0] >= threshold:
                logger.warning(f"Determinant residual {residual[0]} above tolerance at mu={mu_big}")
            mu = out_ctx.mpf(mu_big)
            g = out_ctx.mpf(g_big)
            energy = out_ctx.mpf(energy_from_mu(l, to_big(wa2, ctx), mu_big))
        solutions.append(QuasiSolution(
            k=k, l=l, wa2=wa2, mu=mu, g=g, energy_scaled=energy,
            residuals=residual, physical=bool(g > 0), exact=root.exact is not None,
            multiplicity=root.multiplicity,
        ))
    unphysical = sum(1 for s in solutions if not s.physical)
    if unphysical:
        logger.warning(f"{unphysical} of {len(solutions)} order-{k} roots have g <= 0")
    return solutions


def quasi_polynomial(q: QuasiSolution, digits: Optional[int] = None) -> PolySolution:
    """
    Polynomial factor f(t) of the order-k solution at (mu, g).

    Exact roots give an exact RatPoly in t; irrational ones give mpf coefficients.
    """
    if q.exact:
        bands = bands_from_ode(ode_general(q.l, q.wa2, Fraction(q.mu), Fraction(q.g)), q.k)
        f = exact_polynomial_solution(bands, "t")
        return PolySolution(variable="t", ode_index=q.k, polynomial=f,
                            substitution_residual=ode_residual(bands.coefficients, f))
    ctx = working_context(digits or q.mu.context.dps)
    mu = to_big(q.mu, ctx)
    bands = bands_from_ode(ode_general(q.l, to_big(q.wa2, ctx), mu, coupling_for_order(mu, q.k)), q.k)
    coefs = forward_coefficients(bands, ctx)
    return PolySolution(variable="t", ode_index=q.k, coefficients=tuple(coefs),
                        substitution_residual=band_residual(bands, coefs, ctx))


def k0_closed_form(l: int, wa2) -> Tuple[Fraction, Fraction, Fraction]:
    """(mu, g, Ea^2) = (-2(l+1+wa2), 2(1+l+wa2)(3+2l+2wa2), -wa2(5+6l+8wa2)/2)."""
    wa2 = as_fraction(wa2)
    mu = -2 * (l + 1 + wa2)
    g = 2 * (1 + l + wa2) * (3 + 2 * l + 2 * wa2)
    energy = -wa2 * (5 + 6 * l + 8 * wa2) / 2
    return mu, g, energy


@dataclass(frozen=True)
class OrderOneBranch:
    """One l-branch of the order-1 family at fixed (mu, wa2)."""
    sign: int
    l: object
    energy_scaled: object
    energy_closed_form: object
    x2_coefficient: object  # coefficient of x^2 in the (1+x^2)^{mu-1} form


def n1_closed_forms(mu, wa2, digits: Optional[int] = None) -> List[OrderOneBranch]:
    """
    Solve the order-1 condition for l at given mu and wa2.

    l = [2 - (5+4wa2)mu - 2mu^2 +/- sqrt(4 - 4(3+8wa2)mu + 9mu^2)] / (4mu), kept when l >= -1.
    The closed-form energy uses c = 2wa2 - 1:
    Ea^2 = -(c+1)/(8mu) (-2 + (2c+1)mu - 6mu^2 -/+ sqrt(4 - 4(4c+7)mu + 9mu^2)).

    Raises:
        NoRealBranchError: if the discriminant is negative
    """
    ctx = working_context(digits)
    mu = to_big(mu, ctx)
    s = to_big(wa2, ctx)
    if mu == 0:
        raise ValueError("mu must be nonzero")
    discriminant = 4 - 4 * (3 + 8 * s) * mu + 9 * mu * mu
    if discriminant < 0:
        raise NoRealBranchError(discriminant)
    root = ctx.sqrt(discriminant)
    c = 2 * s - 1
    branches = []
    for sign in (1, -1):
        l = (2 - (5 + 4 * s) * mu - 2 * mu * mu + sign * root) / (4 * mu)
        if l < -1 - tolerance(ctx):
            continue
        closed = -(c + 1) / (8 * mu) * (-2 + (2 * c + 1) * mu - 6 * mu * mu - sign * root)
        ratio = (1 + 2 * l + mu + 2 * s) / (5 + 2 * l + mu + 2 * s)
        branches.append(OrderOneBranch(
            sign=sign, l=l, energy_scaled=energy_from_mu(l, s, mu),
            energy_closed_form=closed, x2_coefficient=ratio,
        ))
    return branches
