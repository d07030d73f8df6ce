"""
Polynomial Solution Theorem Module

Second-order ODEs of the form

    (a30 x^3 + a31 x^2 + a32 x + a33) f'' + (a20 x^2 + a21 x + a22) f'
        - (tau10 x + tau11) f = 0

have a degree-n polynomial solution iff tau10 = n(n-1) a30 + n a20 and the
(n+1)x(n+1) banded determinant built from the beta/alpha/gamma/eta sequences
vanishes. Entries may live in any ring supporting +, -, * with ints:
Fraction, RatPoly (unknown parameters) or mpmath reals.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple
import logging
from exactmath import RatPoly

logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OdeCoefficients:
    """Coefficient tuple of the ODE class; tau10=None means fixed by the degree condition."""
    a30: object = 0
    a31: object = 0
    a32: object = 0
    a33: object = 0
    a20: object = 0
    a21: object = 0
    a22: object = 0
    tau10: object = None
    tau11: object = 0
    var: str = "x"

    def __post_init__(self):
        if all(_is_zero(a) for a in (self.a30, self.a31, self.a32, self.a33)):
            raise ValueError("OdeCoefficients needs a nonzero second-derivative coefficient")

    def necessary_tau10(self, n: int):
        """tau10 that allows a degree-n polynomial solution."""
        return n * (n - 1) * self.a30 + n * self.a20


def _is_zero(value) -> bool:
    if isinstance(value, RatPoly):
        return value.is_zero()
    return value == 0


@dataclass(frozen=True)
class BandSequence:
    """beta/alpha/gamma/eta entries of the determinant for a degree-n solution."""
    n: int
    coefficients: OdeCoefficients
    tau10: object

    def beta(self, k: int):
        c = self.coefficients
        return c.tau11 - k * ((k - 1) * c.a31 + c.a21)

    def alpha(self, k: int):
        c = self.coefficients
        return -k * ((k - 1) * c.a32 + c.a22)

    def gamma(self, k: int):
        c = self.coefficients
        return self.tau10 - (k - 1) * ((k - 2) * c.a30 + c.a20)

    def eta(self, k: int):
        return -k * (k + 1) * self.coefficients.a33

    def matrix(self) -> List[List[object]]:
        """Dense (n+1)x(n+1) matrix; row m reads gamma_m, beta_m, alpha_{m+1}, eta_{m+1}."""
        size = self.n + 1
        rows = [[0] * size for _ in range(size)]
        for m in range(size):
            if m >= 1:
                rows[m][m - 1] = self.gamma(m)
            rows[m][m] = self.beta(m)
            if m + 1 < size:
                rows[m][m + 1] = self.alpha(m + 1)
            if m + 2 < size:
                rows[m][m + 2] = self.eta(m + 1)
        return rows


def bands_from_ode(c: OdeCoefficients, n: int) -> BandSequence:
    """
    Build the band sequences for a degree-n polynomial solution.

    Args:
        c: ODE coefficients
        n: Target polynomial degree (n >= 0)

    Returns:
        BandSequence using c.tau10, or the degree condition value when c.tau10 is None
    """
    if n < 0:
        raise ValueError("bands_from_ode needs n >= 0")
    tau10 = c.necessary_tau10(n) if c.tau10 is None else c.tau10
    return BandSequence(n=n, coefficients=c, tau10=tau10)


def banded_determinant(b: BandSequence):
    """
    Determinant of the banded matrix by the four-term recurrence.

    D_{m+1} = beta_m D_m - gamma_m alpha_m D_{m-1} + gamma_m gamma_{m-1} eta_{m-1} D_{m-2}
    """
    previous2, previous, current = None, 1, b.beta(0)
    for m in range(1, b.n + 1):
        following = b.beta(m) * current - b.gamma(m) * b.alpha(m) * previous
        if m >= 2:
            eta = b.eta(m - 1)
            if not _is_zero(eta):
                following = following + b.gamma(m) * b.gamma(m - 1) * eta * previous2
        previous2, previous, current = previous, current, following
    return current


def dense_determinant(rows: Sequence[Sequence[object]]):
    """Cofactor expansion along the first row (small matrices only)."""
    size = len(rows)
    if size == 0:
        return 1
    if size == 1:
        return rows[0][0]
    total = 0
    for j, entry in enumerate(rows[0]):
        if _is_zero(entry):
            continue
        minor = [row[:j] + row[j + 1:] for row in rows[1:]]
        term = entry * dense_determinant(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def null_space(rows: Sequence[Sequence[Fraction]]) -> List[List[Fraction]]:
    """
    Exact null-space basis of a rational matrix by Gauss-Jordan elimination.

    Returns:
        Basis vectors, one per free column
    """
    matrix = [[Fraction(v) for v in row] for row in rows]
    n_rows = len(matrix)
    n_cols = len(matrix[0]) if matrix else 0
    pivots = []
    r = 0
    for col in range(n_cols):
        pivot = next((i for i in range(r, n_rows) if matrix[i][col] != 0), None)
        if pivot is None:
            continue
        matrix[r], matrix[pivot] = matrix[pivot], matrix[r]
        lead = matrix[r][col]
        matrix[r] = [v / lead for v in matrix[r]]
        for i in range(n_rows):
            if i != r and matrix[i][col] != 0:
                factor = matrix[i][col]
                matrix[i] = [a - factor * b for a, b in zip(matrix[i], matrix[r])]
        pivots.append(col)
        r += 1
        if r == n_rows:
            break
    basis = []
    for free in (c for c in range(n_cols) if c not in pivots):
        vector = [Fraction(0)] * n_cols
        vector[free] = Fraction(1)
        for row, col in enumerate(pivots):
            vector[col] = -matrix[row][free]
        basis.append(vector)
    return basis


@dataclass(frozen=True)
class PolySolution:
    """
    Polynomial factor of an eigenfunction.

    Exact solutions carry a RatPoly; numeric ones (irrational parameters) carry
    mpf coefficients. `variable` is one of "x", "u" (x^2), "z" (x^2+1) or
    "t" (x^2/(1+x^2)).
    """
    variable: str
    ode_index: int
    polynomial: Optional[RatPoly] = None
    coefficients: Tuple = field(default_factory=tuple)
    substitution_residual: object = None

    @property
    def exact(self) -> bool:
        return self.polynomial is not None

    def numeric_coefficients(self, ctx) -> List:
        if self.polynomial is not None:
            return self.polynomial.to_big_coefficients(ctx)
        return [ctx.mpf(c) for c in self.coefficients]


def ode_residual(c: OdeCoefficients, f: RatPoly) -> RatPoly:
    """Substitute f into the ODE exactly; zero iff f solves it."""
    var = f.var
    a3 = RatPoly([c.a33, c.a32, c.a31, c.a30], var)
    a2 = RatPoly([c.a22, c.a21, c.a20], var)
    tau10 = c.necessary_tau10(f.degree) if c.tau10 is None else c.tau10
    tau = RatPoly([c.tau11, tau10], var)
    df = f.derivative()
    return a3 * df.derivative() + a2 * df - tau * f


def exact_polynomial_solution(b: BandSequence, var: str) -> Optional[RatPoly]:
    """
    Degree-n polynomial solution from the exact null space of the band matrix.

    Returns:
        Primitive polynomial, or None when no null vector has a nonzero top coefficient
    """
    basis = null_space(b.matrix())
    if len(basis) > 1:
        logger.warning(f"Null space of dimension {len(basis)} at n={b.n}; taking a full-degree vector")
    for vector in basis:
        if vector[-1] != 0:
            return RatPoly(vector, var).primitive()
    return None


def forward_coefficients(b: BandSequence, ctx) -> List:
    """
    Numeric solution coefficients by forward propagation of the band rows.

    c_0 = 1, c_{m+1} = -(gamma_m c_{m-1} + beta_m c_m) / alpha_{m+1}; requires eta = 0
    and alpha_k != 0 for k <= n.
    """
    coefs = [ctx.mpf(1)]
    for m in range(b.n):
        alpha = b.alpha(m + 1)
        if alpha == 0:
            raise ArithmeticError(f"alpha_{m + 1} vanishes; forward propagation undefined")
        acc = b.beta(m) * coefs[m]
        if m >= 1:
            acc = acc + b.gamma(m) * coefs[m - 1]
        coefs.append(-acc / alpha)
    return coefs


def band_residual(b: BandSequence, coefs: Sequence, ctx):
    """Largest band-row residual |gamma_m c_{m-1} + beta_m c_m + alpha_{m+1} c_{m+1}|, m = 0..n+1."""
    n = b.n
    padded = list(coefs) + [ctx.mpf(0), ctx.mpf(0)]
    worst = ctx.mpf(0)
    scale = max([abs(c) for c in coefs] + [ctx.mpf(1)])
    for m in range(n + 2):
        acc = b.beta(m) * padded[m] + b.alpha(m + 1) * padded[m + 1]
        if m >= 1:
            acc = acc + b.gamma(m) * padded[m - 1]
        worst = max(worst, abs(acc) / scale)
    return worst
