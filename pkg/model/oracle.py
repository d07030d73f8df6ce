"""
Finite-Difference Oracle Module

Brute-force check of the scaled problem -psi'' + V psi = 2Ea^2 psi on (0, L]:
second-order central differences, lowest eigenvalues of the symmetric
tridiagonal matrix by Sturm-count bisection (LAPACK stebz), and two-grid
Richardson extrapolation.

Boundary at x = 0: Dirichlet on a vertex grid for l >= 0; for l = -1 the
states are even and do not vanish at the origin, so a cell-centred grid
with a reflecting (Neumann) ghost point is used. psi(L) = 0 in both cases.
"""
from typing import List, Literal, Optional
import logging
import numpy as np
from pydantic import BaseModel, Field
from scipy.integrate import trapezoid
from scipy.linalg import eigvalsh_tridiagonal
import config
from exactmath import working_context
from .potential import PotentialSpec

logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

# WKB decay exponent required between the last turning point and L
TAIL_EXPONENT = 18.0
MAX_CUTOFF_GROWTH = 6


class OracleError(ArithmeticError):
    """The discretization cannot be trusted."""


class OracleConfig(BaseModel):
    """Grid settings; cutoff None means max(8, 6/sqrt(wa2)), grown until the tail check passes."""
    cutoff: Optional[float] = Field(default=None, gt=0)
    grid_points: int = Field(default=config.ORACLE_GRID_POINTS, ge=64)
    boundary: Literal["auto", "dirichlet", "neumann"] = "auto"
    richardson: bool = True
    drift_factor: float = Field(default=config.ORACLE_DRIFT_FACTOR, gt=0)


def _potential_grid(p: PotentialSpec, x: np.ndarray) -> np.ndarray:
    s, g = float(p.wa2), float(p.g)
    x2 = x * x
    v = s * s * x2 + 2 * g * (x2 - 1) / (x2 + 1) ** 2
    if p.centrifugal:
        v = v + p.centrifugal / x2
    return v


def _boundary(p: PotentialSpec, cfg: OracleConfig) -> str:
    if cfg.boundary != "auto":
        return cfg.boundary
    return "neumann" if p.l == -1 else "dirichlet"


def _lowest(p: PotentialSpec, count: int, cutoff: float, points: int, boundary: str):
    """Lowest `count` eigenvalues (2Ea^2) on one grid, with the grid and potential."""
    h = cutoff / points
    if boundary == "neumann":
        x = (np.arange(1, points + 1) - 0.5) * h
    else:
        x = np.arange(1, points) * h
    v = _potential_grid(p, x)
    diagonal = 2.0 / h ** 2 + v
    if boundary == "neumann":
        diagonal[0] -= 1.0 / h ** 2  # ghost psi_0 = psi_1
        diagonal[-1] += 1.0 / h ** 2  # ghost psi_{M+1} = -psi_M puts the node at L
    off = np.full(len(x) - 1, -1.0 / h ** 2)
    if count > len(x):
        raise OracleError(f"grid of {len(x)} points cannot hold {count} states")
    values = eigvalsh_tridiagonal(diagonal, off, select="i", select_range=(0, count - 1),
                                  lapack_driver="stebz")
    return np.sort(values), x, v


def _tail_exponent(x: np.ndarray, v: np.ndarray, level: float) -> float:
    """Integral of sqrt(V - level) beyond the outermost classically allowed point."""
    allowed = np.nonzero(v < level)[0]
    start = allowed[-1] if len(allowed) else 0
    return float(trapezoid(np.sqrt(np.maximum(v[start:] - level, 0.0)), x[start:]))


def oracle_eigenvalues(p: PotentialSpec, count: int, cfg: Optional[OracleConfig] = None) -> List:
    """
    Lowest `count` eigenvalues in Ea^2 units.

    Args:
        p: Potential parameters
        count: Number of levels (>= 1)
        cfg: Grid settings

    Returns:
        Ascending Ea^2 values as mpf

    Raises:
        OracleError: "cutoff L too small" when the top level feels the wall at L
            or the two grids drift apart by more than the expected O(h^2)
    """
    cfg = cfg or OracleConfig()
    if count < 1:
        raise ValueError("count must be >= 1")
    boundary = _boundary(p, cfg)
    s = float(p.wa2)
    cutoff = cfg.cutoff or max(config.ORACLE_MIN_CUTOFF, 6.0 / np.sqrt(s))
    growth = 0 if cfg.cutoff else MAX_CUTOFF_GROWTH
    m = cfg.grid_points
    while True:
        coarse, x, v = _lowest(p, count, cutoff, m, boundary)
        exponent = _tail_exponent(x, v, coarse[-1])
        if exponent >= TAIL_EXPONENT:
            break
        if growth == 0:
            logger.error(f"Tail exponent {exponent:.2f} at L={cutoff}")
            raise OracleError(f"cutoff L too small: L={cutoff} leaves a decay exponent of {exponent:.2f}")
        growth -= 1
        cutoff *= 1.5
        m = int(m * 1.5)
        logger.warning(f"Growing oracle cutoff to L={cutoff:.3f} with {m} points")
    logger.info(f"Oracle grid: L={cutoff:.3f}, M={m}, boundary={boundary}")
    if cfg.richardson:
        fine, _, _ = _lowest(p, count, cutoff, 2 * m, boundary)
        h = cutoff / m
        drift = np.abs(fine - coarse)
        expected = h * h * (1.0 + np.abs(coarse)) ** 2
        if np.any(drift > cfg.drift_factor * expected):
            worst = int(np.argmax(drift / expected))
            logger.error(f"Grid drift {drift[worst]:.3e} exceeds {cfg.drift_factor} x {expected[worst]:.3e}")
            raise OracleError(f"cutoff L too small: level {worst} drifts by {drift[worst]:.3e} between grids")
        levels = (4.0 * fine - coarse) / 3.0
    else:
        levels = coarse
    ctx = working_context(17)
    return [ctx.mpf(float(value)) / 2 for value in levels]
