"""
Output Formats Module

Deterministic emission: numbers are rendered once into lower-case
scientific strings with a fixed number of decimals, then written as JSON
(numbers kept as strings), CSV or TSV through pandas.
"""
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional
import io
import json
import logging
import pandas as pd
import config

logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

FORMATS = ("json", "csv", "tsv")


def _to_decimal(value, decimals: int) -> Decimal:
    if isinstance(value, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(value, int):
        return Decimal(value)
    if isinstance(value, Fraction):
        with localcontext() as ctx:
            ctx.prec = decimals + 10
            return Decimal(value.numerator) / Decimal(value.denominator)
    if isinstance(value, float):
        return Decimal(repr(value))
    if hasattr(value, "_mpf_"):
        return Decimal(value.context.nstr(value, decimals + 5, strip_zeros=False))
    return Decimal(str(value))


def format_number(value, decimals: Optional[int] = None) -> str:
    """
    Render a number as d.ddd...e+N with exactly `decimals` decimals.

    Args:
        value: int, Fraction, float, mpf or numeric string
        decimals: Digits after the point (default config.OUTPUT_DECIMALS)
    """
    decimals = config.OUTPUT_DECIMALS if decimals is None else decimals
    number = _to_decimal(value, decimals)
    if number == 0:
        return "0." + "0" * decimals + "e+0"
    return format(number, f".{decimals}e")


def exact_text(value) -> Optional[str]:
    """'p/q' for exact rationals, None otherwise."""
    if isinstance(value, bool):
        return None
    if isinstance(value, (int, Fraction)):
        return str(Fraction(value))
    return None


@dataclass
class Emission:
    """What a subcommand produces: a JSON payload, flat rows and '#'-header metadata."""
    payload: Dict[str, Any]
    rows: List[Dict[str, Any]] = field(default_factory=list)
    header: Dict[str, str] = field(default_factory=dict)
    default_format: str = "json"


def render_json(payload: Dict[str, Any]) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def reemit_json(text: str) -> str:
    """Parse and render again; identity for anything render_json wrote."""
    return render_json(json.loads(text))


def render_table(rows: List[Dict[str, Any]], sep: str, header: Optional[Dict[str, str]] = None) -> str:
    """
    CSV (sep=',') with a header row, or TSV (sep='\\t') with '#' metadata lines
    and a '#'-prefixed column line followed by bare data rows.
    """
    frame = pd.DataFrame(rows)
    buffer = io.StringIO()
    if sep == "\t":
        for key, value in (header or {}).items():
            buffer.write(f"# {key} = {value}\n")
        buffer.write("# " + "\t".join(str(c) for c in frame.columns) + "\n")
        frame.to_csv(buffer, sep=sep, index=False, header=False, lineterminator="\n")
    else:
        frame.to_csv(buffer, sep=sep, index=False, lineterminator="\n")
    return buffer.getvalue()


def render(emission: Emission, fmt: Optional[str] = None) -> str:
    fmt = fmt or emission.default_format
    if fmt == "json":
        return render_json(emission.payload)
    if fmt == "csv":
        return render_table(emission.rows, ",")
    if fmt == "tsv":
        return render_table(emission.rows, "\t", emission.header)
    raise ValueError(f"unknown format {fmt!r}; expected one of {', '.join(FORMATS)}")


def write_emission(emission: Emission, fmt: Optional[str] = None, out: Optional[Path] = None, stream=None) -> str:
    """Render and write to `out` (UTF-8) or to `stream`; returns the text."""
    text = render(emission, fmt)
    if out is not None:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
        logger.info(f"Wrote {len(text)} characters to {path}")
    elif stream is not None:
        stream.write(text)
    return text


def read_fixture(name: str) -> pd.DataFrame:
    """Load a reference CSV from the fixture directory, skipping '#' comment lines."""
    path = config.FIXTURE_DIR / name
    try:
        return pd.read_csv(path, comment="#", dtype=str, keep_default_na=False)
    except Exception as e:
        logger.error(f"Error reading fixture {path}: {str(e)}")
        raise


def series_rows(series) -> List[Dict[str, str]]:
    """One row per grid point: x followed by every channel."""
    rows = []
    for i, x in enumerate(series.grid):
        row = {"x": format_number(x)}
        for name, values in series.channels.items():
            row[name] = format_number(values[i])
        rows.append(row)
    return rows
