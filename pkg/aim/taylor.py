"""
Taylor Series Module

Truncated power series about a fixed center in mpmath arithmetic. Products
keep only the coefficients both factors determine, so results never depend
on how deep the inputs were expanded.
"""
from typing import List, Sequence
import logging

logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)


class TaylorSeries:
    """Coefficients c_k of (t - center)^k for k = 0..degree."""

    __slots__ = ("coefficients", "center", "ctx")

    def __init__(self, coefficients: Sequence, center, ctx):
        """
        Args:
            coefficients: c_0..c_D as ctx reals
            center: Expansion point t0
            ctx: mpmath context shared by all coefficients
        """
        self.coefficients: List = list(coefficients)
        self.center = center
        self.ctx = ctx

    @classmethod
    def constant(cls, value, center, ctx, degree: int) -> "TaylorSeries":
        return cls([ctx.mpf(value)] + [ctx.zero] * degree, center, ctx)

    @classmethod
    def pole(cls, at, sign: int, center, ctx, degree: int) -> "TaylorSeries":
        """
        Expansion of 1/(sign*(t - at)) about center.

        With d = center - at: 1/(t - at) = sum_k (-1)^k h^k / d^{k+1}.
        """
        d = center - at
        ratio = -1 / d
        term = sign / d
        coefs = []
        for _ in range(degree + 1):
            coefs.append(term)
            term = term * ratio
        return cls(coefs, center, ctx)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def value(self):
        """Value at the center."""
        return self.coefficients[0]

    def truncate(self, degree: int) -> "TaylorSeries":
        return TaylorSeries(self.coefficients[:degree + 1], self.center, self.ctx)

    def __add__(self, other: "TaylorSeries") -> "TaylorSeries":
        n = min(len(self.coefficients), len(other.coefficients))
        return TaylorSeries([a + b for a, b in zip(self.coefficients[:n], other.coefficients[:n])],
                            self.center, self.ctx)

    def __sub__(self, other: "TaylorSeries") -> "TaylorSeries":
        n = min(len(self.coefficients), len(other.coefficients))
        return TaylorSeries([a - b for a, b in zip(self.coefficients[:n], other.coefficients[:n])],
                            self.center, self.ctx)

    def __neg__(self) -> "TaylorSeries":
        return TaylorSeries([-c for c in self.coefficients], self.center, self.ctx)

    def scale(self, factor) -> "TaylorSeries":
        return TaylorSeries([factor * c for c in self.coefficients], self.center, self.ctx)

    def multiply(self, other: "TaylorSeries", degree: int = None) -> "TaylorSeries":
        """Cauchy product truncated at `degree` (default: the smaller input degree)."""
        top = min(self.degree, other.degree) if degree is None else degree
        a, b = self.coefficients, other.coefficients
        fdot = self.ctx.fdot
        return TaylorSeries([fdot(a[:k + 1], b[k::-1]) for k in range(top + 1)], self.center, self.ctx)

    __mul__ = multiply

    def derivative(self) -> "TaylorSeries":
        """Degree drops by one."""
        return TaylorSeries([k * c for k, c in enumerate(self.coefficients)][1:], self.center, self.ctx)
