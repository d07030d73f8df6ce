"""
Plot Series Module

Sampled potential and wave-function channels on a uniform grid, ready for
emission. Rendering is left to whatever reads the files.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple
import logging
from exactmath import working_context, to_big
from quasipoly import case2_solution_at_root, exact_family
from .potential import PotentialSpec, potential_scaled
from .wavefunction import WaveFunction, assemble_wavefunction, count_nodes, exact_origin_value, normalize

logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)


@dataclass
class PlotSeries:
    """Abscissa grid plus named ordinate channels and '#'-header metadata."""
    grid: List
    channels: Dict[str, List] = field(default_factory=dict)
    header: Dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        if any(b <= a for a, b in zip(self.grid, self.grid[1:])):
            raise ValueError("plot grid must be strictly increasing")
        for name, values in self.channels.items():
            if len(values) != len(self.grid):
                raise ValueError(f"channel {name} has {len(values)} values for {len(self.grid)} grid points")


def uniform_grid(x_range: Tuple, samples: int, ctx) -> List:
    if samples < 2:
        raise ValueError("samples must be >= 2")
    lo, hi = to_big(x_range[0], ctx), to_big(x_range[1], ctx)
    if not lo < hi:
        raise ValueError("range must be increasing")
    step = (hi - lo) / (samples - 1)
    return [lo + i * step for i in range(samples)]


def plot_series(p: PotentialSpec, states: Dict[str, WaveFunction], x_range: Tuple, samples: int,
                normalized: bool = False, potential_channel: str = "V",
                digits: Optional[int] = None) -> PlotSeries:
    """
    Sample the potential and every state on a uniform grid.

    Args:
        p: Potential parameters
        states: Channel name -> wave function
        x_range: (lo, hi) inside the potential's domain
        samples: Grid size (>= 2)
        normalized: Sample normalized instead of raw wave functions
        potential_channel: Name of the potential channel
        digits: Working precision
    """
    ctx = working_context(digits)
    grid = uniform_grid(x_range, samples, ctx)
    channels = {potential_channel: [potential_scaled(p, x, ctx) for x in grid]}
    header = {}
    for name, wave in states.items():
        if normalized:
            constant, evaluator = normalize(wave, digits)
            channels[name] = [evaluator(x) for x in grid]
            header[f"{name}_norm_constant"] = ctx.nstr(constant, 20)
        else:
            channels[name] = [wave.evaluate(x, ctx) for x in grid]
        header[f"{name}_nodes"] = str(count_nodes(wave, ctx))
    logger.info(f"Sampled {len(channels)} channels on {samples} points over [{x_range[0]}, {x_range[1]}]")
    return PlotSeries(grid=grid, channels=channels, header=header)


def cubic_state() -> Tuple[PotentialSpec, WaveFunction]:
    """Quasi-exact l = -1, degree-3 (in z) state at wa2 = 15/14, written as a sextic in x."""
    package = case2_solution_at_root(-1, 3, Fraction(15, 14))
    spec = PotentialSpec(l=-1, wa2=package.wa2, g=package.g)
    wave = assemble_wavefunction(spec, package.mu, package.solution_x, package.energy_scaled)
    return spec, wave


def family_ground_state() -> Tuple[PotentialSpec, WaveFunction]:
    """Degree-0 member of the exactly solvable l = -1, wa2 = 1/2, g = 2 family."""
    member = exact_family(0)[0]
    spec = PotentialSpec(l=-1, wa2=Fraction(1, 2), g=2)
    wave = assemble_wavefunction(spec, Fraction(-1), member.solution, member.two_e_a2 / 2)
    return spec, wave


PRESETS = {
    "eq34": cubic_state,
    "cubic": cubic_state,
    "family-ground": family_ground_state,
}


def preset_series(name: str, x_range: Tuple = (0, 5), samples: int = 500,
                  normalized: bool = False, digits: Optional[int] = None) -> PlotSeries:
    """
    Series for a named preset; channels are V<n> and psi<n> with n the state's polynomial index.

    The polynomial keeps its integer normalization with positive leading
    coefficient, so psi(0) carries the sign of the constant term.
    """
    if name not in PRESETS:
        raise ValueError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")
    spec, wave = PRESETS[name]()
    index = wave.solution.ode_index if wave.variable != "x" else wave.solution.ode_index // 2
    series = plot_series(spec, {f"psi{index}": wave}, x_range, samples, normalized,
                         potential_channel=f"V{index}", digits=digits)
    series.header.update({
        "preset": name,
        "l": str(spec.l),
        "wa2": str(spec.wa2),
        "g": str(spec.g),
        "mu": str(wave.mu),
        "Ea2": str(wave.energy_scaled),
        f"psi{index}(0)": str(exact_origin_value(wave)),
        f"V{index}(0)": str(potential_scaled(spec, 0)),
    })
    return series
