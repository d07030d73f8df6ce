"""
Wave Function Module

psi(x) = x^{l+1} (1+x^2)^mu exp(-wa2 x^2 / 2) f(v(x)) with the polynomial factor
f declared in one of the variables

    x          the coordinate itself
    u = x^2
    z = x^2 + 1
    t = x^2 / (1 + x^2)

Derivatives are analytic: the prefactor through its logarithmic derivative,
f(v(x)) through the chain rule.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional, Tuple
import logging
import config
from exactmath import RatPoly, poly_real_roots, working_context, to_big
from quasipoly import PolySolution
from .potential import PotentialSpec, potential_scaled

logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

VARIABLES = ("x", "u", "z", "t")


class QuadratureError(ArithmeticError):
    """Normalization integral did not converge."""

    def __init__(self, value, error, requested, points):
        super().__init__(f"quadrature did not converge: integral {value}, error estimate {error} "
                         f"exceeds {requested} (breakpoints {points})")
        self.value = value
        self.error = error


@dataclass(frozen=True)
class WaveFunction:
    """Composed eigenfunction; `energy_scaled` (Ea^2) is needed only for residual checks."""
    spec: PotentialSpec
    mu: object
    solution: PolySolution
    energy_scaled: Optional[object] = None

    def __post_init__(self):
        if self.solution.variable not in VARIABLES:
            raise ValueError(f"unknown polynomial variable {self.solution.variable!r}")

    @property
    def power(self) -> int:
        return self.spec.l + 1

    @property
    def gaussian_rate(self):
        return self.spec.wa2 / 2

    @property
    def variable(self) -> str:
        return self.solution.variable

    def evaluate(self, x, ctx=None):
        """psi(x) at x >= 0."""
        return self.derivatives(x, ctx)[0]

    def derivatives(self, x, ctx=None) -> Tuple:
        """(psi, psi', psi'') at x; x = 0 is allowed for the value only."""
        ctx = ctx or working_context()
        x = to_big(x, ctx)
        if x < 0:
            raise ValueError("wave functions live on x >= 0")
        s = to_big(self.spec.wa2, ctx)
        mu = to_big(self.mu, ctx)
        f, df, d2f = _horner3(self.solution.numeric_coefficients(ctx), _variable(self.variable, x))
        v1, v2 = _variable_derivatives(self.variable, x)
        big_f = f
        big_f1 = df * v1
        big_f2 = d2f * v1 * v1 + df * v2
        x2 = x * x
        prefactor = ctx.power(1 + x2, mu) * ctx.exp(-s * x2 / 2)
        if self.power:
            prefactor = prefactor * x ** self.power
        if x == 0:
            return prefactor * big_f, None, None
        log1 = self.power / x + 2 * mu * x / (1 + x2) - s * x
        log2 = -self.power / x2 + 2 * mu * (1 - x2) / ((1 + x2) * (1 + x2)) - s
        psi = prefactor * big_f
        psi1 = prefactor * (log1 * big_f + big_f1)
        psi2 = prefactor * ((log2 + log1 * log1) * big_f + 2 * log1 * big_f1 + big_f2)
        return psi, psi1, psi2


def _variable(name: str, x):
    x2 = x * x
    if name == "x":
        return x
    if name == "u":
        return x2
    if name == "z":
        return x2 + 1
    return x2 / (1 + x2)


def _variable_derivatives(name: str, x):
    """(v'(x), v''(x))."""
    if name == "x":
        return 1, 0
    if name in ("u", "z"):
        return 2 * x, 2
    x2 = x * x
    return 2 * x / ((1 + x2) ** 2), (2 - 6 * x2) / ((1 + x2) ** 3)


def _horner3(coefs: List, v) -> Tuple:
    """Value, first and second derivative of sum c_k v^k."""
    p = dp = d2p = 0 * v
    for c in reversed(coefs):
        d2p = d2p * v + 2 * dp
        dp = dp * v + p
        p = p * v + c
    return p, dp, d2p


def indicial_mu(g, ctx=None):
    """mu = (1 - sqrt(1 + 4g)) / 2, the smaller indicial root."""
    ctx = ctx or working_context()
    return (1 - ctx.sqrt(1 + 4 * to_big(g, ctx))) / 2


def assemble_wavefunction(p: PotentialSpec, mu, f: PolySolution, energy_scaled=None) -> WaveFunction:
    """
    Compose psi from the prefactor exponents and a polynomial factor.

    Args:
        p: Potential parameters (l, wa2 set the x^{l+1} and Gaussian factors)
        mu: Exponent of (1 + x^2)
        f: Polynomial factor with its declared variable
        energy_scaled: Ea^2 of the state, if known
    """
    w = WaveFunction(spec=p, mu=mu, solution=f, energy_scaled=energy_scaled)
    logger.info(f"Assembled wave function: l={p.l}, mu={mu}, f of index {f.ode_index} in {f.variable}")
    return w


def wavefunction_residual(w: WaveFunction, grid, ctx=None):
    """
    Largest |(-psi'' + V psi - 2Ea^2 psi) / max(1, |psi|)| over grid points x > 0.

    Raises:
        ValueError: if the wave function carries no energy
    """
    if w.energy_scaled is None:
        raise ValueError("residual needs the state's energy")
    ctx = ctx or working_context()
    two_e = 2 * to_big(w.energy_scaled, ctx)
    worst = ctx.zero
    for x in grid:
        x = to_big(x, ctx)
        psi, _, psi2 = w.derivatives(x, ctx)
        v = potential_scaled(w.spec, x, ctx)
        worst = max(worst, abs(-psi2 + v * psi - two_e * psi) / max(1, abs(psi)))
    return worst


class NormalizedWave:
    """psi scaled by 1/sqrt(integral of psi^2 over (0, inf))."""

    def __init__(self, w: WaveFunction, constant, norm_squared, error, ctx):
        self.wave = w
        self.constant = constant
        self.norm_squared = norm_squared
        self.error = error
        self.ctx = ctx

    def __call__(self, x):
        return self.constant * self.wave.evaluate(x, self.ctx)


def normalize(w: WaveFunction, digits: Optional[int] = None,
              max_degree: Optional[int] = None) -> Tuple[object, NormalizedWave]:
    """
    Normalize psi with tanh-sinh quadrature on (0, inf).

    Args:
        w: Wave function
        digits: Quadrature precision
        max_degree: Tanh-sinh refinement depth (mpmath default when None)

    Returns:
        (1/sqrt(norm), normalized evaluator)

    Raises:
        QuadratureError: if the error estimate exceeds 10^-(digits/2)
    """
    digits = digits or config.DEFAULT_DIGITS
    ctx = working_context(digits + 5)
    scale = 1 / ctx.sqrt(to_big(w.spec.wa2, ctx))
    points = [b * scale for b in config.QUADRATURE_BREAKPOINTS] + [ctx.inf]
    requested = ctx.mpf(10) ** (-(digits // 2))

    def integrand(x):
        return w.evaluate(x, ctx) ** 2

    try:
        options = {"error": True, "method": "tanh-sinh"}
        if max_degree:
            options["maxdegree"] = max_degree
        value, error = ctx.quad(integrand, points, **options)
    except Exception as e:
        logger.error(f"Normalization quadrature failed: {str(e)}")
        raise
    if error > requested * max(1, abs(value)) or not value > 0:
        logger.error(f"Quadrature error {error} above {requested}")
        raise QuadratureError(value, error, requested, [ctx.nstr(p, 6) for p in points])
    constant = 1 / ctx.sqrt(value)
    logger.info(f"Norm^2 = {ctx.nstr(value, 20)} (error estimate {ctx.nstr(error, 3)})")
    return constant, NormalizedWave(w, constant, value, error, ctx)


def _variable_range(name: str) -> Tuple[Fraction, Optional[Fraction]]:
    """Image of x in (0, inf) under the variable map, as (lower, upper); None is unbounded."""
    if name == "z":
        return Fraction(1), None
    if name == "t":
        return Fraction(0), Fraction(1)
    return Fraction(0), None


def count_nodes(w: WaveFunction, ctx=None) -> int:
    """
    Sign changes of psi on (0, inf), i.e. odd-multiplicity roots of f inside the variable's range.
    """
    lower, upper = _variable_range(w.variable)
    if w.solution.exact:
        f: RatPoly = w.solution.polynomial
        if f.degree < 1:
            return 0
        roots = poly_real_roots(f, interval=(lower, upper), digits=20)
        # interval is half-open (lower, upper]: drop a root sitting on t = 1
        return sum(1 for r in roots if r.multiplicity % 2 == 1 and (upper is None or r.exact != upper))
    ctx = ctx or working_context()
    coefs = w.solution.numeric_coefficients(ctx)
    while len(coefs) > 1 and coefs[-1] == 0:
        coefs.pop()
    if len(coefs) < 2:
        return 0
    roots = ctx.polyroots(coefs[::-1], maxsteps=200, extraprec=2 * ctx.prec)
    limit = ctx.mpf(10) ** (-(ctx.dps // 2))
    real = [ctx.re(r) for r in roots if abs(ctx.im(r)) < limit]
    low = to_big(lower, ctx)
    high = to_big(upper, ctx) if upper is not None else ctx.inf
    return sum(1 for r in real if low < r < high)


def sample_wavefunction(w: WaveFunction, grid, normalized: Optional[Callable] = None, ctx=None) -> List:
    """psi (or the normalized evaluator) on every grid point."""
    ctx = ctx or working_context()
    if normalized is not None:
        return [normalized(x) for x in grid]
    return [w.evaluate(x, ctx) for x in grid]


def exact_origin_value(w: WaveFunction) -> Optional[Fraction]:
    """psi(0) as an exact rational when the polynomial is exact; 0 whenever l >= 0."""
    if w.power:
        return Fraction(0)
    if not w.solution.exact:
        return None
    origin = {"x": 0, "u": 0, "z": 1, "t": 0}[w.variable]
    return w.solution.polynomial(origin)
