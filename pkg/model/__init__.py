"""Problem Model Module - __init__.py"""
from .potential import (
    ENERGY_UNITS,
    PotentialSpec,
    DomainError,
    ScalingError,
    potential_scaled,
    potential_unscaled,
    scale_roundtrip,
    convert_energy,
    unscaled_energy,
)
from .wavefunction import (
    WaveFunction,
    NormalizedWave,
    QuadratureError,
    assemble_wavefunction,
    indicial_mu,
    wavefunction_residual,
    normalize,
    count_nodes,
    exact_origin_value,
    sample_wavefunction,
)
from .oracle import OracleConfig, OracleError, oracle_eigenvalues
from .plotting import PlotSeries, PRESETS, plot_series, preset_series, uniform_grid

__all__ = [
    "ENERGY_UNITS",
    "PotentialSpec",
    "DomainError",
    "ScalingError",
    "potential_scaled",
    "potential_unscaled",
    "scale_roundtrip",
    "convert_energy",
    "unscaled_energy",
    "WaveFunction",
    "NormalizedWave",
    "QuadratureError",
    "assemble_wavefunction",
    "indicial_mu",
    "wavefunction_residual",
    "normalize",
    "count_nodes",
    "exact_origin_value",
    "sample_wavefunction",
    "OracleConfig",
    "OracleError",
    "oracle_eigenvalues",
    "PlotSeries",
    "PRESETS",
    "plot_series",
    "preset_series",
    "uniform_grid",
]
