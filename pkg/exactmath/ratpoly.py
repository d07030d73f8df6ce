"""
Rational Polynomial Module

Exact univariate polynomials with fractions.Fraction coefficients. Used for
determinant conditions, condition polynomials in the unknown parameters and
polynomial eigenfunction factors.
"""
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, List, Tuple, Union
import logging

logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction]


def as_fraction(value) -> Fraction:
    """Coerce an int, Fraction or decimal/ratio string to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


class RatPoly:
    """Immutable polynomial with exact rational coefficients, lowest degree first."""

    __slots__ = ("_coefs", "var")

    def __init__(self, coefficients: Iterable = (), var: str = "x"):
        """
        Build a polynomial.

        Args:
            coefficients: Coefficients ordered by increasing power
            var: Informational variable name used when printing
        """
        coefs = [as_fraction(c) for c in coefficients]
        while coefs and coefs[-1] == 0:
            coefs.pop()
        self._coefs: Tuple[Fraction, ...] = tuple(coefs)
        self.var = var

    @classmethod
    def constant(cls, value, var: str = "x") -> "RatPoly":
        return cls([value], var)

    @classmethod
    def monomial(cls, degree: int, coefficient=1, var: str = "x") -> "RatPoly":
        return cls([0] * degree + [coefficient], var)

    @classmethod
    def variable(cls, var: str = "x") -> "RatPoly":
        return cls([0, 1], var)

    @property
    def coefficients(self) -> Tuple[Fraction, ...]:
        return self._coefs

    @property
    def degree(self) -> int:
        """Degree, or -1 for the zero polynomial."""
        return len(self._coefs) - 1

    @property
    def leading(self) -> Fraction:
        return self._coefs[-1] if self._coefs else Fraction(0)

    def is_zero(self) -> bool:
        return not self._coefs

    def is_constant(self) -> bool:
        return len(self._coefs) <= 1

    def coefficient(self, power: int) -> Fraction:
        if 0 <= power < len(self._coefs):
            return self._coefs[power]
        return Fraction(0)

    def _coerce(self, other) -> "RatPoly":
        if isinstance(other, RatPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return RatPoly([other], self.var)
        return NotImplemented

    # arithmetic
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self._coefs), len(other._coefs))
        return RatPoly([self.coefficient(i) + other.coefficient(i) for i in range(n)], self.var)

    __radd__ = __add__

    def __neg__(self):
        return RatPoly([-c for c in self._coefs], self.var)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return RatPoly([], self.var)
        out = [Fraction(0)] * (len(self._coefs) + len(other._coefs) - 1)
        for i, a in enumerate(self._coefs):
            if a == 0:
                continue
            for j, b in enumerate(other._coefs):
                out[i + j] += a * b
        return RatPoly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("RatPoly powers must be nonnegative integers")
        result = RatPoly([1], self.var)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __truediv__(self, other):
        """Division by a nonzero scalar; use divmod for polynomial division."""
        if isinstance(other, RatPoly):
            if other.is_constant() and not other.is_zero():
                other = other.leading
            else:
                raise TypeError("use divmod() to divide by a non-constant polynomial")
        other = as_fraction(other)
        if other == 0:
            raise ZeroDivisionError("RatPoly division by zero")
        return RatPoly([c / other for c in self._coefs], self.var)

    def __divmod__(self, other) -> Tuple["RatPoly", "RatPoly"]:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise ZeroDivisionError("RatPoly division by the zero polynomial")
        remainder = list(self._coefs)
        quotient = [Fraction(0)] * max(0, len(remainder) - len(other._coefs) + 1)
        lead = other.leading
        shift = other.degree
        for k in range(len(remainder) - 1, shift - 1, -1):
            factor = remainder[k] / lead
            if factor == 0:
                continue
            quotient[k - shift] = factor
            for j, b in enumerate(other._coefs):
                remainder[k - shift + j] -= factor * b
        return RatPoly(quotient, self.var), RatPoly(remainder[:shift], self.var)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self._coefs == other._coefs

    def __hash__(self):
        return hash(self._coefs)

    def __call__(self, value):
        """Horner evaluation at an int, Fraction or RatPoly (composition)."""
        if not isinstance(value, (int, Fraction, RatPoly)):
            raise TypeError("use to_big_coefficients() for floating evaluation")
        acc = RatPoly([], value.var) if isinstance(value, RatPoly) else Fraction(0)
        for c in reversed(self._coefs):
            acc = acc * value + c
        return acc

    # calculus and normalization
    def derivative(self) -> "RatPoly":
        return RatPoly([k * c for k, c in enumerate(self._coefs)][1:], self.var)

    def compose(self, inner: "RatPoly") -> "RatPoly":
        return self(inner)

    def monic(self) -> "RatPoly":
        if self.is_zero():
            return self
        return self / self.leading

    def primitive(self) -> "RatPoly":
        """Integer coefficients, content 1, positive leading coefficient."""
        if self.is_zero():
            return self
        denominators = lcm(*[c.denominator for c in self._coefs])
        scaled = [int(c * denominators) for c in self._coefs]
        content = 0
        for c in scaled:
            content = gcd(content, c)
        if self.leading < 0:
            content = -content
        return RatPoly([Fraction(c, content) for c in scaled], self.var)

    def with_var(self, var: str) -> "RatPoly":
        return RatPoly(self._coefs, var)

    def to_big_coefficients(self, ctx) -> List:
        """Coefficients converted to the mpmath context `ctx`."""
        return [ctx.mpf(c.numerator) / c.denominator for c in self._coefs]

    def ratio_to(self, other: "RatPoly") -> Fraction:
        """
        Return r with self == r * other, or raise ValueError if not proportional.

        Args:
            other: Nonzero polynomial to compare against
        """
        if other.is_zero() or self.degree != other.degree:
            raise ValueError(f"{self} is not a scalar multiple of {other}")
        ratio = self.leading / other.leading
        if self != other * ratio:
            raise ValueError(f"{self} is not a scalar multiple of {other}")
        return ratio

    def __repr__(self):
        return f"RatPoly({[str(c) for c in self._coefs]}, var={self.var!r})"

    def __str__(self):
        if self.is_zero():
            return "0"
        terms = []
        for power in range(self.degree, -1, -1):
            c = self._coefs[power]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            magnitude = abs(c)
            if power == 0:
                body = str(magnitude)
            else:
                head = "" if magnitude == 1 else f"{magnitude}*"
                body = f"{head}{self.var}" + (f"^{power}" if power > 1 else "")
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text


def poly_arith(p: RatPoly, q: RatPoly, op: str) -> RatPoly:
    """
    Exact polynomial arithmetic dispatched by name.

    Args:
        p: Left operand
        q: Right operand
        op: One of "add", "sub", "mul"

    Returns:
        Normalized result polynomial
    """
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown polynomial operation: {op}")


def poly_gcd(p: RatPoly, q: RatPoly) -> RatPoly:
    """Monic greatest common divisor (zero only if both inputs are zero)."""
    a, b = p, q
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def square_free_decomposition(p: RatPoly) -> List[Tuple[RatPoly, int]]:
    """
    Split p into square-free, pairwise coprime factors with multiplicities.

    Args:
        p: Nonzero polynomial

    Returns:
        List of (factor, multiplicity); constants are dropped
    """
    if p.is_zero():
        raise ValueError("square-free decomposition of the zero polynomial")
    factors: List[Tuple[RatPoly, int]] = []
    c = poly_gcd(p, p.derivative())
    w = p // c
    multiplicity = 1
    while w.degree > 0:
        y = poly_gcd(w, c)
        z = w // y
        if z.degree > 0:
            factors.append((z.monic(), multiplicity))
        w = y
        c = c // y
        multiplicity += 1
    return factors
