"""
Special Functions Module

Terminating confluent hypergeometric series, associated Laguerre polynomials
and Pochhammer symbols. Arguments may be exact (int, Fraction, RatPoly) or
mpmath reals; exact inputs give exact outputs.
"""
from fractions import Fraction
import logging
from .bigreal import to_big
from .ratpoly import RatPoly, as_fraction

logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)


class PochhammerPoleError(ValueError):
    """(a)_k vanishes inside a terminating series denominator."""

    def __init__(self, a):
        super().__init__(f"parameter a hits nonpositive integer: a = {a}")


def _lift(value, like):
    """Express an exact scalar in the arithmetic of `like` (mpf or exact)."""
    if hasattr(like, "_mpf_"):
        return to_big(Fraction(value), like.context)
    return Fraction(value)


def pochhammer(a, k: int) -> Fraction:
    """Rising factorial a(a+1)...(a+k-1); 1 when k = 0."""
    if k < 0:
        raise ValueError("pochhammer order must be nonnegative")
    a = as_fraction(a)
    result = Fraction(1)
    for j in range(k):
        result *= a + j
    return result


def hyp1f1_terminating(n: int, a, z):
    """
    Evaluate 1F1(-n; a; z) as the finite sum over k = 0..n.

    Args:
        n: Nonnegative integer (the series terminates after z^n)
        a: Rational lower parameter
        z: int, Fraction, RatPoly or mpf argument

    Returns:
        Same kind as z: RatPoly for polynomial arguments, mpf for mpf

    Raises:
        PochhammerPoleError: if (a)_k = 0 for some k <= n
    """
    if n < 0:
        raise ValueError("hyp1f1_terminating needs a nonnegative n")
    a = as_fraction(a)
    if a.denominator == 1 and -(n - 1) <= a <= 0 and n > 0:
        raise PochhammerPoleError(a)
    term = Fraction(1)
    total = RatPoly([1], z.var) if isinstance(z, RatPoly) else _lift(1, z)
    power = total
    for k in range(n):
        term = term * (k - n) / ((a + k) * (k + 1))
        power = power * z
        total = total + power * _lift(term, z)
    return total


def laguerre_assoc(n: int, alpha, x):
    """
    Associated Laguerre polynomial L_n^alpha(x) by the three-term recurrence.

    (k+1) L_{k+1} = (2k+1+alpha-x) L_k - (k+alpha) L_{k-1}
    """
    if n < 0:
        raise ValueError("laguerre_assoc needs n >= 0")
    alpha = as_fraction(alpha)
    one = RatPoly([1], x.var) if isinstance(x, RatPoly) else _lift(1, x)
    if n == 0:
        return one
    previous = one
    current = _lift(1 + alpha, x) - x
    for k in range(1, n):
        following = ((_lift(2 * k + 1 + alpha, x) - x) * current
                     - _lift(k + alpha, x) * previous) / (k + 1)
        previous, current = current, following
    return current


def half_integer_gamma(k: int) -> Fraction:
    """Gamma(k + 1/2) / sqrt(pi) = (1/2)_k for k >= 0."""
    return pochhammer(Fraction(1, 2), k)


def sqrt_pi_gamma_ratio(n: int) -> Fraction:
    """sqrt(pi) * Gamma(n) / Gamma(n + 3/2) for integer n >= 1, exactly."""
    if n < 1:
        raise ValueError("sqrt_pi_gamma_ratio needs n >= 1")
    factorial = pochhammer(1, n - 1)
    return factorial / half_integer_gamma(n + 1)
