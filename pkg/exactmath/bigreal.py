"""
BigReal Module

Configurable-precision reals on top of mpmath. Every computation owns its own
mpmath context; nothing here touches the global ``mpmath.mp`` precision.
"""
from fractions import Fraction
from typing import Optional
import logging
import mpmath
import config

logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

# Values are mpmath mpf numbers bound to a private context.
BigReal = mpmath.mpf


def working_context(digits: Optional[int] = None) -> mpmath.MPContext:
    """
    Create a fresh mpmath context.

    Args:
        digits: Significant decimal digits (defaults to config.DEFAULT_DIGITS)

    Returns:
        Independent MPContext with ``dps`` set
    """
    ctx = mpmath.MPContext()
    ctx.dps = digits or config.DEFAULT_DIGITS
    return ctx


def to_big(value, ctx):
    """
    Convert an int, Fraction, str, float or mpf into ``ctx``'s mpf type.

    Args:
        value: Number to convert (Fractions are divided once, correctly rounded)
        ctx: Target mpmath context
    """
    if isinstance(value, Fraction):
        return ctx.mpf(value.numerator) / value.denominator
    if isinstance(value, (int, str, float)):
        return ctx.mpf(value)
    if hasattr(value, "_mpf_"):
        return ctx.mpf(value)
    if hasattr(value, "_mpc_"):
        return ctx.mpc(value)
    raise TypeError(f"cannot convert {type(value).__name__} to BigReal")


def tolerance(ctx, margin: int = 10):
    """10^-(dps - margin) in the context's precision."""
    return ctx.mpf(10) ** (-(ctx.dps - margin))

