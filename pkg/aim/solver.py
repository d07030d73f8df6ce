"""
AIM Eigenvalue Search Module

Scans the termination condition over an energy bracket, bisects every sign
change and follows each root while the iteration count grows until it stops
moving. Roots that never settle trigger a retry with t0 shifted towards zero.
"""
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple
import logging
import config
from exactmath import working_context, to_big
from .iteration import AimProblem, termination_delta

logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)


class CrosscheckError(ArithmeticError):
    """AIM and the closed form disagree."""

    def __init__(self, expected, found, tolerance):
        super().__init__(f"AIM crosscheck failed: expected Ea^2={expected}, found {found} (tol {tolerance})")
        self.expected = expected
        self.found = found


@dataclass
class AimConfig:
    """Search settings; None fields fall back to config.py."""
    t0: Optional[str] = None
    digits: Optional[int] = None
    max_iterations: Optional[int] = None
    tolerance: Optional[str] = None
    start_iterations: Optional[int] = None
    iteration_step: Optional[int] = None
    padding: Optional[int] = None
    scan_points: Optional[int] = None
    max_scan_points: Optional[int] = None
    t0_schedule: Optional[Sequence[str]] = None

    def __post_init__(self):
        self.t0 = self.t0 or config.AIM_T0
        self.digits = self.digits or config.DEFAULT_DIGITS
        self.max_iterations = self.max_iterations or config.AIM_MAX_ITERATIONS
        self.tolerance = self.tolerance or config.AIM_TOLERANCE
        self.start_iterations = self.start_iterations or config.AIM_START_ITERATIONS
        self.iteration_step = self.iteration_step or config.AIM_ITERATION_STEP
        self.padding = self.padding or config.AIM_SERIES_PADDING
        self.scan_points = self.scan_points or config.AIM_SCAN_POINTS
        self.max_scan_points = self.max_scan_points or config.AIM_MAX_SCAN_POINTS
        self.t0_schedule = tuple(self.t0_schedule or config.AIM_T0_SCHEDULE)
        if self.start_iterations + self.iteration_step > self.max_iterations:
            self.start_iterations = max(2, self.max_iterations - self.iteration_step)

    def t0_attempts(self) -> List[str]:
        """Configured t0 first, then the schedule entries closer to zero."""
        first = float(self.t0)
        return [self.t0] + [t for t in self.t0_schedule if float(t) < first]


@dataclass(frozen=True)
class EigenResult:
    """A stabilized AIM eigenvalue."""
    energy_scaled: object
    iterations: int
    t0: object
    residual: object  # root movement over the last iteration step
    stabilized: bool = True

    @property
    def two_e_a2(self):
        return 2 * self.energy_scaled


@dataclass
class EigenSearch:
    """Outcome of find_eigenvalues; behaves like the list of results."""
    results: List[EigenResult]
    requested: int
    t0_tried: List[str] = field(default_factory=list)
    unstable: int = 0

    @property
    def shortfall(self) -> int:
        return max(0, self.requested - len(self.results))

    def __len__(self) -> int:
        return len(self.results)

    def __iter__(self):
        return iter(self.results)

    def __getitem__(self, index):
        return self.results[index]


class _DeltaFunction:
    """delta_N(Ea^2) at fixed (l, wa2, g, t0)."""

    def __init__(self, l: int, wa2, g, t0, ctx, padding: int):
        self.l = l
        self.wa2 = wa2
        self.g = g
        self.t0 = t0
        self.ctx = ctx
        self.padding = padding
        self.evaluations = 0

    def sign(self, energy, iterations: int) -> int:
        self.evaluations += 1
        p = AimProblem.from_energy(self.l, self.wa2, self.g, energy, self.ctx)
        value = termination_delta(p, self.t0, iterations, self.ctx, self.padding)
        if value == 0:
            return 0
        return 1 if value > 0 else -1


def _bisect(delta: _DeltaFunction, iterations: int, lo, hi, sign_lo: int, tol):
    """Shrink a sign-change bracket below tol/4 and return its midpoint."""
    for _ in range(400):
        if hi - lo < tol / 4:
            break
        mid = (lo + hi) / 2
        sign_mid = delta.sign(mid, iterations)
        if sign_mid == 0:
            return mid
        if sign_mid == sign_lo:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def _scan(delta: _DeltaFunction, iterations: int, lo, hi, points: int, tol) -> List:
    """Roots of delta_N on a uniform grid of `points` energies, bisected to tol."""
    step = (hi - lo) / (points - 1)
    grid = [lo + i * step for i in range(points)]
    signs = [delta.sign(e, iterations) for e in grid]
    roots = []
    for i in range(points - 1):
        if signs[i] == 0:
            roots.append(grid[i])
        elif signs[i] * signs[i + 1] < 0:
            roots.append(_bisect(delta, iterations, grid[i], grid[i + 1], signs[i], tol))
    if signs[-1] == 0:
        roots.append(grid[-1])
    return roots


def _relocate(delta: _DeltaFunction, iterations: int, guess, width, limit, tol):
    """Find the root of delta_N nearest `guess`, widening the window up to `limit`."""
    while width <= limit:
        lo, hi = guess - width, guess + width
        sign_lo = delta.sign(lo, iterations)
        sign_hi = delta.sign(hi, iterations)
        if sign_lo == 0:
            return lo
        if sign_hi == 0:
            return hi
        if sign_lo * sign_hi < 0:
            return _bisect(delta, iterations, lo, hi, sign_lo, tol)
        width *= 4
    return None


def _stabilize(delta: _DeltaFunction, guess, start: int, cfg: AimConfig, spacing, tol) -> Optional[EigenResult]:
    """Follow one root as N grows from `start` until it moves less than tol."""
    iterations = start
    current = guess
    move = spacing / 4
    while iterations + cfg.iteration_step <= cfg.max_iterations:
        iterations += cfg.iteration_step
        width = max(4 * abs(move), 16 * tol)
        found = _relocate(delta, iterations, current, width, 4 * spacing, tol)
        if found is None:
            logger.warning(f"Root near Ea^2={delta.ctx.nstr(current, 12)} lost at N={iterations}")
            return None
        move = found - current
        current = found
        if abs(move) < tol:
            return EigenResult(energy_scaled=current, iterations=iterations, t0=delta.t0, residual=abs(move))
    logger.warning(f"Root near Ea^2={delta.ctx.nstr(current, 12)} did not stabilize by N={cfg.max_iterations}")
    return None


def _merge(results: List[EigenResult], tol) -> List[EigenResult]:
    ordered = sorted(results, key=lambda r: r.energy_scaled)
    merged = []
    for r in ordered:
        if merged and abs(r.energy_scaled - merged[-1].energy_scaled) < 10 * tol:
            continue
        merged.append(r)
    return merged


def _search_at(l: int, wa2, g, bracket: Tuple, count: int, t0: str, cfg: AimConfig,
               ctx, points: int, start: int) -> Tuple[List[EigenResult], int]:
    t0_big = to_big(t0, ctx)
    tol = to_big(cfg.tolerance, ctx)
    lo, hi = to_big(bracket[0], ctx), to_big(bracket[1], ctx)
    delta = _DeltaFunction(l, wa2, g, t0_big, ctx, cfg.padding)
    candidates = _scan(delta, start, lo, hi, points, tol)
    logger.info(f"t0={t0}: {len(candidates)} sign changes at N={start} over {points} points")
    spacing = (hi - lo) / (points - 1)
    stable, unstable = [], 0
    for guess in candidates:
        result = _stabilize(delta, guess, start, cfg, spacing, tol)
        if result is None:
            # only roots below an unsettled one count as the lowest levels
            unstable += 1
            stable = [r for r in stable if r.energy_scaled < guess]
            logger.warning(f"t0={t0}: keeping {len(_merge(stable, tol))} roots below the unsettled one "
                           f"near Ea^2={ctx.nstr(guess, 12)}")
            break
        if lo <= result.energy_scaled <= hi:
            stable.append(result)
        if len(_merge(stable, tol)) >= count:
            break
    logger.info(f"t0={t0}: {len(stable)} stabilized roots after {delta.evaluations} delta evaluations")
    return _merge(stable, tol), unstable


def find_eigenvalues(l: int, wa2, g, bracket: Tuple, count: int,
                     cfg: Optional[AimConfig] = None) -> EigenSearch:
    """
    Lowest `count` stabilized eigenvalues Ea^2 inside the bracket.

    Args:
        l: Angular momentum index (>= -1)
        wa2: w*a^2 > 0
        g: Coupling >= 0
        bracket: (Elo, Ehi) in Ea^2 units
        count: Number of eigenvalues wanted (>= 1)
        cfg: Search settings

    Returns:
        EigenSearch with results ascending; `shortfall` > 0 when fewer were found
    """
    cfg = cfg or AimConfig()
    if count < 1:
        raise ValueError("count must be >= 1")
    ctx = working_context(cfg.digits)
    lo, hi = to_big(bracket[0], ctx), to_big(bracket[1], ctx)
    if not lo < hi or ctx.isinf(lo) or ctx.isinf(hi):
        raise ValueError("bracket must be finite and ordered")
    if to_big(wa2, ctx) <= 0:
        raise ValueError("wa2 must be positive")
    if to_big(g, ctx) < 0:
        raise ValueError("g must be nonnegative")
    tried = []
    best: List[EigenResult] = []
    best_unstable = 0
    try:
        for t0 in cfg.t0_attempts():
            tried.append(t0)
            points, start = cfg.scan_points, cfg.start_iterations
            while points <= cfg.max_scan_points and start + cfg.iteration_step <= cfg.max_iterations:
                roots, unstable = _search_at(l, wa2, g, (lo, hi), count, t0, cfg, ctx, points, start)
                if len(roots) > len(best) or not best:
                    best, best_unstable = roots, unstable
                if len(roots) >= count:
                    break
                # denser grid and a deeper scan before giving up on this t0
                points, start = 2 * points, 2 * start
            if len(best) >= count:
                break
            logger.warning(f"t0={t0} left {max(0, count - len(best))} of {count} roots unresolved; "
                           f"shifting t0 towards zero")
    except Exception as e:
        logger.error(f"AIM search failed for l={l}, wa2={wa2}, g={g}: {str(e)}")
        raise
    search = EigenSearch(results=best[:count], requested=count, t0_tried=tried, unstable=best_unstable)
    if search.shortfall:
        logger.warning(f"Found {len(search)} of {count} eigenvalues; t0 schedule tried: {', '.join(tried)}")
    return search


def default_bracket(l: int, wa2, g, count: int, ctx) -> Tuple:
    """
    Energy window certain to hold the lowest `count` levels of the l-sector.

    The coupling term lies in [-2g, g/4], so levels sit between the isotonic
    ground state minus g and the isotonic level count-1 plus g/8.
    """
    s, g = to_big(wa2, ctx), to_big(g, ctx)
    lo = s * (2 * l + 3) / 2 - g - 1
    hi = s * (4 * (count - 1) + 2 * l + 3) / 2 + g / 8 + 1
    return lo, hi


def _expected_energy(q):
    if hasattr(q, "energy_scaled"):
        return q.energy_scaled
    return q.two_e_a2 / 2


def quasi_exact_crosscheck(q, cfg: Optional[AimConfig] = None, tolerance: Optional[str] = None,
                           half_width: str = "1e-3") -> EigenResult:
    """
    Re-derive a closed-form eigenvalue with AIM.

    Args:
        q: Any object carrying l, wa2, g and energy_scaled (QuasiSolution,
            Case2Solution, ...)
        cfg: AIM settings
        tolerance: Allowed |AIM - closed form| in Ea^2 units
        half_width: Half-width of the search bracket around the expected value

    Raises:
        CrosscheckError: if no root is found or it disagrees beyond tolerance
    """
    cfg = cfg or AimConfig()
    ctx = working_context(cfg.digits)
    expected = to_big(_expected_energy(q), ctx)
    allowed = to_big(tolerance or config.AIM_CROSSCHECK_TOLERANCE, ctx)
    width = to_big(half_width, ctx) * max(1, abs(expected))
    search = find_eigenvalues(q.l, q.wa2, q.g, (expected - width, expected + width), 1, cfg)
    if not search.results:
        logger.error(f"No AIM root near Ea^2={ctx.nstr(expected, 15)}")
        raise CrosscheckError(expected, None, allowed)
    found = search.results[0]
    if abs(to_big(found.energy_scaled, ctx) - expected) > allowed:
        logger.error(f"AIM root {found.energy_scaled} disagrees with closed form {expected}")
        raise CrosscheckError(expected, found.energy_scaled, allowed)
    logger.info(f"AIM crosscheck passed at Ea^2={ctx.nstr(expected, 15)} (N={found.iterations})")
    return found
