"""
Real Root Isolation Module

Sturm-sequence isolation of the real roots of exact rational polynomials,
followed by bisection refinement to a requested number of digits.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple
import logging
import config
from .bigreal import working_context, to_big
from .ratpoly import RatPoly, square_free_decomposition

logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)


class IdenticallyZeroError(ValueError):
    """The condition polynomial vanishes for every parameter value."""

    def __init__(self):
        super().__init__("identically zero: condition holds for all parameter values")


@dataclass(frozen=True)
class RealRoot:
    """An isolated real root with its refined value."""
    lower: Fraction
    upper: Fraction
    value: object  # mpf in a private context
    multiplicity: int = 1
    exact: Optional[Fraction] = None
    digits: int = 0

    def contains(self, x: Fraction) -> bool:
        return self.lower < x <= self.upper


def sturm_sequence(p: RatPoly) -> List[RatPoly]:
    """Sturm chain p, p', -rem(p, p'), ... down to a constant."""
    chain = [p, p.derivative()]
    while not chain[-1].is_zero() and chain[-1].degree > 0:
        remainder = chain[-2] % chain[-1]
        if remainder.is_zero():
            break
        chain.append(-remainder)
    return [q for q in chain if not q.is_zero()]


def sign_variations(chain: List[RatPoly], x: Fraction) -> int:
    """Number of sign changes in the chain evaluated at x, zeros skipped."""
    changes = 0
    previous = 0
    for q in chain:
        value = q(x)
        if value == 0:
            continue
        sign = 1 if value > 0 else -1
        if previous and sign != previous:
            changes += 1
        previous = sign
    return changes


def cauchy_bound(p: RatPoly) -> Fraction:
    """All real roots satisfy |x| < 1 + max |a_i / a_n|."""
    lead = p.leading
    return 1 + max((abs(c / lead) for c in p.coefficients[:-1]), default=Fraction(0))


def _isolate(chain: List[RatPoly], lower: Fraction, upper: Fraction) -> List[Tuple[Fraction, Fraction]]:
    """Split (lower, upper] until every piece holds exactly one root."""
    pending = [(lower, upper, sign_variations(chain, lower) - sign_variations(chain, upper))]
    isolated = []
    while pending:
        a, b, count = pending.pop()
        if count == 0:
            continue
        if count == 1:
            isolated.append((a, b))
            continue
        mid = (a + b) / 2
        left = sign_variations(chain, a) - sign_variations(chain, mid)
        pending.append((a, mid, left))
        pending.append((mid, b, count - left))
    return sorted(isolated)


def _refine(p: RatPoly, chain: List[RatPoly], lower: Fraction, upper: Fraction,
            digits: int) -> Tuple[Fraction, Optional[Fraction]]:
    """Bisect the isolating interval; returns (midpoint, exact root or None)."""
    if p(upper) == 0:
        return upper, upper
    a, b = lower, upper
    while p(a) == 0:
        # a root at a belongs to the neighbouring interval
        mid = (a + b) / 2
        if sign_variations(chain, a) - sign_variations(chain, mid) == 0:
            a = mid
        elif p(mid) == 0:
            return mid, mid
        else:
            b = mid
    sign_a = 1 if p(a) > 0 else -1
    target = Fraction(1, 10 ** (digits + config.ROOT_GUARD_DIGITS))
    while b - a > target * max(1, abs(a), abs(b)):
        mid = (a + b) / 2
        value = p(mid)
        if value == 0:
            return mid, mid
        if (value > 0) == (sign_a > 0):
            a = mid
        else:
            b = mid
    mid = (a + b) / 2
    candidate = mid.limit_denominator(config.RATIONAL_ROOT_MAX_DENOMINATOR)
    if lower < candidate <= upper and p(candidate) == 0:
        return candidate, candidate
    return mid, None


def poly_real_roots(p: RatPoly, interval: Optional[Tuple] = None,
                    digits: Optional[int] = None) -> List[RealRoot]:
    """
    Isolate and refine all real roots of p.

    Args:
        p: Nonzero rational polynomial
        interval: Optional half-open search interval (lower, upper]
        digits: Refinement precision in significant digits

    Returns:
        Roots sorted ascending; multiple roots appear once with their multiplicity

    Raises:
        IdenticallyZeroError: if p is the zero polynomial
    """
    if p.is_zero():
        raise IdenticallyZeroError()
    digits = digits or config.DEFAULT_DIGITS
    ctx = working_context(digits)
    roots: List[RealRoot] = []
    for factor, multiplicity in square_free_decomposition(p):
        bound = cauchy_bound(factor)
        lower, upper = -bound, bound
        if interval is not None:
            lower = max(lower, Fraction(interval[0])) if interval[0] is not None else lower
            upper = min(upper, Fraction(interval[1])) if interval[1] is not None else upper
        if lower >= upper:
            continue
        chain = sturm_sequence(factor)
        for a, b in _isolate(chain, lower, upper):
            approx, exact = _refine(factor, chain, a, b, digits)
            roots.append(RealRoot(lower=a, upper=b, value=to_big(approx, ctx),
                                  multiplicity=multiplicity, exact=exact, digits=digits))
    roots.sort(key=lambda r: r.value)
    logger.info(f"Isolated {len(roots)} real root(s) of a degree-{p.degree} polynomial")
    return roots
