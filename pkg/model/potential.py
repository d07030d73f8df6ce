"""
Potential Module

The generalized isotonic oscillator

    V(r) = l(l+1)/r^2 + w^2 r^2 + 2g (r^2 - a^2)/(r^2 + a^2)^2

and its scaled form in x = r/a,

    V(x) = l(l+1)/x^2 + (wa2)^2 x^2 + 2g (x^2 - 1)/(x^2 + 1)^2,

whose eigenvalue is 2Ea^2. Energies are exchanged between engines as Ea^2;
the converters below cover the other units in use.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional
import logging
import numpy as np
from exactmath import as_fraction, working_context, to_big, tolerance

logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

# Units an eigenvalue can be reported in
ENERGY_UNITS = ("Ea2", "2Ea2", "E_over_w", "E_over_2w")


class DomainError(ValueError):
    """Evaluation point outside the potential's domain."""


class ScalingError(ArithmeticError):
    """The scaled and unscaled potentials disagree."""


def _exact(value):
    """Fraction when value is rational-like, otherwise leave it alone."""
    if isinstance(value, (int, str, Fraction)):
        return as_fraction(value)
    return value


@dataclass(frozen=True)
class PotentialSpec:
    """
    Parameters of the scaled problem, optionally with the unscaled (w, a) pair.

    Args:
        l: Angular momentum index (>= -1)
        wa2: Dimensionless product w*a^2 (> 0)
        g: Coupling (>= 0)
        w: Oscillator frequency, when the unscaled form is wanted
        a: Length scale of the rational term
    """
    l: int
    wa2: object
    g: object
    w: Optional[object] = None
    a: Optional[object] = None

    def __post_init__(self):
        if self.l < -1:
            raise ValueError("l must be >= -1")
        object.__setattr__(self, "wa2", _exact(self.wa2))
        object.__setattr__(self, "g", _exact(self.g))
        if self.wa2 <= 0:
            raise ValueError("wa2 must be positive")
        if self.g < 0:
            raise ValueError("g must be nonnegative")
        if (self.w is None) != (self.a is None):
            raise ValueError("w and a must be given together")
        if self.w is not None:
            object.__setattr__(self, "w", _exact(self.w))
            object.__setattr__(self, "a", _exact(self.a))
            if self.w <= 0 or self.a <= 0:
                raise ValueError("w and a must be positive")
            if _is_exact(self.w, self.a, self.wa2):
                product = self.w * self.a * self.a
                mismatch = product != self.wa2
            else:
                ctx = working_context()
                product = to_big(self.w, ctx) * to_big(self.a, ctx) ** 2
                mismatch = abs(product - to_big(self.wa2, ctx)) > tolerance(ctx)
            if mismatch:
                raise ValueError(f"w*a^2 = {product} does not match wa2 = {self.wa2}")

    @classmethod
    def from_unscaled(cls, l: int, w, a, g) -> "PotentialSpec":
        w, a = _exact(w), _exact(a)
        return cls(l=l, wa2=w * a * a, g=g, w=w, a=a)

    @property
    def centrifugal(self) -> int:
        return self.l * (self.l + 1)

    @property
    def has_unscaled(self) -> bool:
        return self.w is not None


def _is_exact(*values) -> bool:
    return all(isinstance(v, (int, Fraction)) for v in values)


def potential_scaled(p: PotentialSpec, x, ctx=None):
    """
    Scaled potential at x.

    Exact rational inputs give a Fraction; anything else is evaluated in ctx.

    Raises:
        DomainError: if x = 0 while l(l+1) != 0, or x < 0
    """
    if ctx is None and not _is_exact(x, p.wa2, p.g):
        ctx = working_context()
    if ctx is not None:
        x, wa2, g = to_big(x, ctx), to_big(p.wa2, ctx), to_big(p.g, ctx)
    else:
        x, wa2, g = Fraction(x), p.wa2, p.g
    if x < 0:
        raise DomainError(f"x must be nonnegative, got {x}")
    if x == 0 and p.centrifugal != 0:
        raise DomainError(f"centrifugal term l(l+1)/x^2 is singular at x=0 for l={p.l}")
    x2 = x * x
    value = wa2 * wa2 * x2 + 2 * g * (x2 - 1) / ((x2 + 1) * (x2 + 1))
    if p.centrifugal:
        value = value + p.centrifugal / x2
    return value


def potential_unscaled(p: PotentialSpec, r, ctx=None):
    """
    Unscaled potential at radius r.

    Raises:
        DomainError: if p carries no (w, a) pair or r is outside the domain
    """
    if not p.has_unscaled:
        raise DomainError("unscaled evaluation needs (w, a)")
    if ctx is None and not _is_exact(r, p.w, p.a, p.g):
        ctx = working_context()
    if ctx is not None:
        r, w, a, g = to_big(r, ctx), to_big(p.w, ctx), to_big(p.a, ctx), to_big(p.g, ctx)
    else:
        r, w, a, g = Fraction(r), p.w, p.a, p.g
    if r < 0 or (r == 0 and p.centrifugal != 0):
        raise DomainError(f"r = {r} outside the domain for l={p.l}")
    r2, a2 = r * r, a * a
    value = w * w * r2 + 2 * g * (r2 - a2) / ((r2 + a2) * (r2 + a2))
    if p.centrifugal:
        value = value + p.centrifugal / r2
    return value


def scale_roundtrip(p: PotentialSpec, samples: int = 16, seed: int = 7, ctx=None) -> PotentialSpec:
    """
    Map the unscaled data to the scaled problem and back, checking a^2 V(a x) = V(x).

    Args:
        p: Spec carrying (w, a)
        samples: Number of random sample points in (0, 6)
        seed: Sampling seed, for reproducible checks

    Returns:
        The scaled spec (l, wa2, g) without (w, a)

    Raises:
        ScalingError: on any mismatch
    """
    if not p.has_unscaled:
        raise ScalingError("roundtrip needs the unscaled (w, a) pair")
    ctx = ctx or working_context()
    scaled = PotentialSpec(l=p.l, wa2=p.wa2, g=p.g)
    a = to_big(p.a, ctx)
    limit = tolerance(ctx)
    rng = np.random.default_rng(seed)
    for x in rng.uniform(0.05, 6.0, samples):
        x = ctx.mpf(float(x))
        left = a * a * potential_unscaled(p, a * x, ctx)
        right = potential_scaled(scaled, x, ctx)
        if abs(left - right) > limit * max(1, abs(right)):
            logger.error(f"Scaling mismatch at x={x}: {left} vs {right}")
            raise ScalingError(f"a^2 V(a x) != V(x) at x={ctx.nstr(x, 10)}")
        if abs((a * x) / a - x) > limit * x:
            raise ScalingError("coordinate map r = a x does not invert")
    recovered_w = to_big(scaled.wa2, ctx) / (a * a)
    if abs(recovered_w - to_big(p.w, ctx)) > limit * max(1, abs(recovered_w)):
        raise ScalingError(f"recovered w = {recovered_w} differs from {p.w}")
    logger.info(f"Scaling roundtrip verified on {samples} points (wa2={p.wa2}, g={p.g})")
    return scaled


def _unit_factor(unit: str, wa2):
    if unit == "Ea2":
        return 1
    if unit == "2Ea2":
        return 2
    if unit == "E_over_w":
        return 1 / wa2
    if unit == "E_over_2w":
        return 1 / (2 * wa2)
    raise ValueError(f"unknown energy unit {unit!r}; expected one of {', '.join(ENERGY_UNITS)}")


def convert_energy(value, from_unit: str, to_unit: str, wa2=None):
    """
    Convert an eigenvalue between Ea2, 2Ea2, E_over_w and E_over_2w.

    Args:
        value: Energy in `from_unit`
        from_unit: Source unit
        to_unit: Target unit
        wa2: Needed for the E_over_* units
    """
    if wa2 is None and {from_unit, to_unit} & {"E_over_w", "E_over_2w"}:
        raise ValueError("wa2 is required for E/w conversions")
    wa2 = _exact(wa2) if wa2 is not None else 1
    if hasattr(value, "_mpf_"):
        wa2 = to_big(wa2, value.context)
    elif hasattr(wa2, "_mpf_"):
        value = to_big(value, wa2.context)
    return value * _unit_factor(to_unit, wa2) / _unit_factor(from_unit, wa2)


def unscaled_energy(energy_scaled, a):
    """E = Ea^2 / a^2."""
    a = _exact(a)
    if hasattr(energy_scaled, "_mpf_"):
        a = to_big(a, energy_scaled.context)
    return energy_scaled / (a * a)
