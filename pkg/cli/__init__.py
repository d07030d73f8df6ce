"""Command Line Module - __init__.py"""
from .formats import Emission, FORMATS, format_number, exact_text, render, write_emission, read_fixture
from .run_config import RunConfig, REPRO_TARGETS, REPRO_ALIASES, canonical_target
from .reproduce import ReproReport, ReproRow, closed_form_mu, run_reproduction

__all__ = [
    "Emission",
    "FORMATS",
    "format_number",
    "exact_text",
    "render",
    "write_emission",
    "read_fixture",
    "RunConfig",
    "REPRO_TARGETS",
    "REPRO_ALIASES",
    "canonical_target",
    "ReproReport",
    "ReproRow",
    "closed_form_mu",
    "run_reproduction",
]
