"""
AIM Iteration Module

For f'' = lambda_0(t) f' + s_0(t) f with t = x^2/(1+x^2) in (0,1):

    lambda_0 = -[(l+3/2)/(t(1-t)) + 2(eps-1)/(1-t) - wa2/(1-t)^2]
    s_0      = -[(eps(l+3/2+wa2) + g/2)/(t(1-t)^2) + (eps(eps-1) - g)/(1-t)^2]

where eps = Ea^2/(2 wa2) - (2l+3)/4 carries the energy. Iterating

    lambda_n = lambda'_{n-1} + s_{n-1} + lambda_0 lambda_{n-1}
    s_n      = s'_{n-1} + s_0 lambda_{n-1}

the eigenvalues are roots of delta_n = lambda_n s_{n-1} - lambda_{n-1} s_n at t0.
"""
from dataclasses import dataclass
from typing import List, Tuple
import logging
from exactmath import to_big
from .taylor import TaylorSeries

logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)


class AimDomainError(ValueError):
    """Expansion point outside (0, 1)."""


class SeriesDepthError(ArithmeticError):
    """Not enough Taylor coefficients left for another iteration."""

    def __init__(self, degree: int):
        super().__init__(f"insufficient series depth (degree {degree} left)")


@dataclass(frozen=True)
class AimProblem:
    """One trial point: fixed (l, wa2, g) and the energy through epsilon."""
    l: int
    wa2: object
    g: object
    epsilon: object

    @classmethod
    def from_energy(cls, l: int, wa2, g, energy_scaled, ctx) -> "AimProblem":
        """Build from Ea^2; all inputs are converted into ctx."""
        s = to_big(wa2, ctx)
        eps = to_big(energy_scaled, ctx) / (2 * s) - ctx.mpf(2 * l + 3) / 4
        return cls(l=l, wa2=s, g=to_big(g, ctx), epsilon=eps)

    @property
    def energy_scaled(self):
        """Ea^2 = (2l + 3 + 4 eps) wa2 / 2."""
        return (2 * self.l + 3 + 4 * self.epsilon) * self.wa2 / 2


def build_lambda_s0(p: AimProblem, t0, degree: int, ctx) -> Tuple[TaylorSeries, TaylorSeries]:
    """
    Taylor expansions of lambda_0 and s_0 about t0.

    Args:
        p: Trial problem
        t0: Expansion point in (0, 1)
        degree: Series degree D >= 1
        ctx: mpmath context

    Returns:
        (lambda_0, s_0) as TaylorSeries of degree D

    Raises:
        AimDomainError: if t0 is not inside (0, 1)
    """
    t0 = to_big(t0, ctx)
    if not 0 < t0 < 1:
        raise AimDomainError(f"t0 must lie in (0, 1), got {t0}")
    if degree < 1:
        raise ValueError("series degree must be >= 1")
    one = ctx.mpf(1)
    half_l = ctx.mpf(2 * p.l + 3) / 2
    inv_t = TaylorSeries.pole(0, 1, t0, ctx, degree)
    inv_1mt = TaylorSeries.pole(1, -1, t0, ctx, degree)
    inv_1mt_sq = inv_1mt * inv_1mt
    mixed = inv_t * inv_1mt
    mixed_sq = mixed * inv_1mt
    eps = p.epsilon
    lambda0 = -(mixed.scale(half_l) + inv_1mt.scale(2 * (eps - one)) - inv_1mt_sq.scale(p.wa2))
    s0 = -(mixed_sq.scale(eps * (half_l + p.wa2) + p.g / 2) + inv_1mt_sq.scale(eps * (eps - one) - p.g))
    return lambda0, s0


def aim_iterate(lambda_prev: TaylorSeries, s_prev: TaylorSeries,
                lambda0: TaylorSeries, s0: TaylorSeries) -> Tuple[TaylorSeries, TaylorSeries]:
    """
    One AIM step; the result is one degree shorter than the shallowest input.

    Raises:
        SeriesDepthError: if fewer than two degrees remain
    """
    depth = min(lambda_prev.degree, s_prev.degree)
    if depth < 2:
        raise SeriesDepthError(depth)
    top = depth - 1
    lambda_next = lambda_prev.derivative() + s_prev.truncate(top) + lambda0.multiply(lambda_prev, top)
    s_next = s_prev.derivative() + s0.multiply(lambda_prev, top)
    return lambda_next, s_next


def termination_value(lambda_n: TaylorSeries, s_n: TaylorSeries,
                      lambda_prev: TaylorSeries, s_prev: TaylorSeries):
    """delta_n = lambda_n s_{n-1} - lambda_{n-1} s_n at the center."""
    return lambda_n.value() * s_prev.value() - lambda_prev.value() * s_n.value()


def termination_sequence(p: AimProblem, t0, iterations: int, ctx, padding: int = 8) -> List:
    """
    delta_1..delta_N at t0 from one pass with series depth N + padding.

    Args:
        p: Trial problem
        t0: Expansion point
        iterations: N >= 1
        ctx: mpmath context
        padding: Extra series degrees beyond N (>= 2)
    """
    lam, s = build_lambda_s0(p, t0, iterations + padding, ctx)
    lambda0, s0 = lam, s
    deltas = []
    for _ in range(iterations):
        lam_next, s_next = aim_iterate(lam, s, lambda0, s0)
        deltas.append(termination_value(lam_next, s_next, lam, s))
        lam, s = lam_next, s_next
    return deltas


def termination_delta(p: AimProblem, t0, iterations: int, ctx, padding: int = 8):
    """delta_N at t0."""
    return termination_sequence(p, t0, iterations, ctx, padding)[-1]
