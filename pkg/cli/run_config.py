"""
Run Configuration Module

Validates every subcommand's flags before any computation starts.
"""
from fractions import Fraction
from pathlib import Path
from typing import Literal, Optional, Tuple
import logging
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
import config

logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

REPRO_TARGETS = ("table1", "table2", "table3", "table4", "figure1")
# Descriptive names; order1 covers both closed-form tables
REPRO_ALIASES = {"order1": "order1", "order2": "table3", "spectrum": "table4", "profile": "figure1"}


def canonical_target(name: str) -> str:
    """Resolve an alias; unknown names raise ValueError."""
    if name in REPRO_TARGETS:
        return name
    if name in REPRO_ALIASES:
        return REPRO_ALIASES[name]
    choices = ", ".join(REPRO_TARGETS + tuple(REPRO_ALIASES))
    raise ValueError(f"unknown target {name!r}; choose from {choices}")


def _rational(value) -> Optional[Fraction]:
    if value is None or isinstance(value, Fraction):
        return value
    try:
        return Fraction(str(value).strip())
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"not a rational number: {value!r}")


def _pair(value) -> Optional[Tuple[Fraction, Fraction]]:
    """'lo:hi' -> (lo, hi)."""
    if value is None or isinstance(value, tuple):
        return value
    parts = str(value).split(":")
    if len(parts) != 2:
        raise ValueError(f"expected lo:hi, got {value!r}")
    return _rational(parts[0]), _rational(parts[1])


class RunConfig(BaseModel):
    """Flags of one invocation; unknown fields are rejected."""
    model_config = ConfigDict(extra="forbid", arbitrary_types_allowed=True)

    command: Literal["aim", "quasi", "case2", "exact", "wavefunction", "oracle", "reproduce"]
    digits: int = Field(default=config.DEFAULT_DIGITS, ge=15)
    format: Optional[Literal["json", "csv", "tsv"]] = None
    out: Optional[Path] = None

    l: Optional[int] = Field(default=None, ge=-1)
    wa2: Optional[Fraction] = None
    g: Optional[Fraction] = None
    k: Optional[int] = Field(default=None, ge=0)
    n: Optional[int] = Field(default=None, ge=2)
    states: Optional[int] = Field(default=None, ge=1)
    count: Optional[int] = Field(default=None, ge=1)
    bracket: Optional[Tuple[Fraction, Fraction]] = None
    t0: Optional[Fraction] = None
    max_iter: Optional[int] = Field(default=None, ge=10)
    max_index: Optional[int] = Field(default=None, ge=0, le=12)
    closed_forms: bool = False
    preset: Optional[str] = None
    range: Optional[Tuple[Fraction, Fraction]] = None
    samples: Optional[int] = Field(default=None, ge=2)
    normalized: bool = False
    cutoff: Optional[float] = Field(default=None, gt=0)
    grid_points: Optional[int] = Field(default=None, ge=64)
    target: Optional[str] = None
    tol: Optional[Fraction] = None
    workers: Optional[int] = Field(default=None, ge=1)

    @field_validator("wa2", "g", "t0", "tol", mode="before")
    @classmethod
    def _parse_rational(cls, value):
        return _rational(value)

    @field_validator("bracket", "range", mode="before")
    @classmethod
    def _parse_pair(cls, value):
        return _pair(value)

    @field_validator("target")
    @classmethod
    def _check_target(cls, value):
        if value is not None:
            canonical_target(value)
        return value

    @model_validator(mode="after")
    def _check_ranges(self) -> "RunConfig":
        if self.wa2 is not None and self.wa2 <= 0:
            raise ValueError("wa2 must be positive")
        if self.g is not None and self.g < 0:
            raise ValueError("g must be nonnegative")
        if self.t0 is not None and not 0 < self.t0 < 1:
            raise ValueError("t0 must lie in (0, 1)")
        if self.tol is not None and self.tol <= 0:
            raise ValueError("tol must be positive")
        for name in ("bracket", "range"):
            pair = getattr(self, name)
            if pair is not None and not pair[0] < pair[1]:
                raise ValueError(f"{name} must be ordered lo < hi")
        required = {
            "aim": ("l", "wa2", "g"),
            "quasi": ("k", "l", "wa2"),
            "case2": ("n", "l"),
            "oracle": ("l", "wa2", "g"),
            "reproduce": ("target",),
        }.get(self.command, ())
        missing = [name for name in required if getattr(self, name) is None]
        if missing:
            raise ValueError(f"{self.command} needs --{', --'.join(m.replace('_', '-') for m in missing)}")
        return self
