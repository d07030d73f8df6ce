"""
Reproduction Harness Module

Re-runs the full pipeline for every row of a reference fixture and compares
the results with the stored values:

    table1, table2  k = 1 quasi-exact solutions against Cardano/surd closed forms
                    (order1 runs both)
    table3          k = 2 quasi-exact solutions (mu, g, E/(2w)), alias order2
    table4          four lowest AIM levels at wa2 = 2 for eight couplings, alias spectrum
    figure1         potential and wave-function checks of the eq34 preset, alias profile

Sector solves run in a process pool when more than one worker is requested;
rows are assembled in fixture order after all sectors return.
"""
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple
import logging
import config
from aim import AimConfig, default_bracket, find_eigenvalues
from exactmath import working_context, to_big
from model import count_nodes, exact_origin_value, potential_scaled, preset_series
from model.plotting import cubic_state
from quasipoly import general_quasi_solve
from .formats import Emission, exact_text, format_number, read_fixture, series_rows
from .run_config import canonical_target

logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

# Closed forms are compared at no less than this precision
ORDER1_MIN_DIGITS = 40


@dataclass
class ReproRow:
    row_id: str
    quantity: str
    computed: object
    reference: object
    abs_diff: object
    tolerance: object

    @property
    def passed(self) -> bool:
        if self.abs_diff is None:
            return False
        if isinstance(self.abs_diff, Fraction):
            return self.abs_diff <= self.tolerance
        return self.abs_diff <= to_big(self.tolerance, self.abs_diff.context)

    def as_dict(self) -> Dict[str, object]:
        return {
            "row": self.row_id,
            "quantity": self.quantity,
            "computed": "missing" if self.computed is None else format_number(self.computed),
            "reference": format_number(self.reference),
            "abs_diff": "missing" if self.abs_diff is None else format_number(self.abs_diff, 3),
            "tolerance": format_number(self.tolerance, 1),
            "pass": self.passed,
        }


@dataclass
class ReproReport:
    """Per-row comparison of one target; passes when every row is within tolerance."""
    target: str
    tolerance: object
    rows: List[ReproRow] = field(default_factory=list)
    series: Optional[object] = None  # PlotSeries for the profile target

    @property
    def passed(self) -> bool:
        return bool(self.rows) and all(r.passed for r in self.rows)

    @property
    def failures(self) -> List[ReproRow]:
        return [r for r in self.rows if not r.passed]

    def to_emission(self) -> Emission:
        rows = [r.as_dict() for r in self.rows]
        payload = {
            "target": self.target,
            "tolerance": format_number(self.tolerance, 1),
            "passed": self.passed,
            "failures": len(self.failures),
            "rows": rows,
        }
        if self.series is None:
            return Emission(payload=payload, rows=rows, header={"target": self.target})
        header = dict(self.series.header)
        header.update({
            "target": self.target,
            "checks": "pass" if self.passed else "fail",
        })
        for r in self.rows:
            header[f"check_{r.quantity}"] = "pass" if r.passed else "fail"
        return Emission(payload=payload, rows=series_rows(self.series), header=header,
                        default_format="tsv")


def _run_jobs(worker: Callable, jobs: Sequence[Tuple], workers: int) -> List:
    """Map a top-level worker over jobs, in a process pool when workers > 1; order is preserved."""
    if workers <= 1 or len(jobs) <= 1:
        return [worker(job) for job in jobs]
    logger.info(f"Running {len(jobs)} sector jobs on {workers} processes")
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(worker, jobs))


def _compare(ctx, row_id: str, quantity: str, computed, reference, tol) -> ReproRow:
    if computed is None:
        return ReproRow(row_id, quantity, None, reference, None, tol)
    if isinstance(computed, Fraction) and isinstance(reference, Fraction):
        diff = abs(computed - reference)
    else:
        diff = abs(to_big(computed, ctx) - to_big(reference, ctx))
    return ReproRow(row_id, quantity, computed, reference, diff, tol)


# ---------------------------------------------------------------- order1/order2

def _quasi_sector(job: Tuple) -> List[Tuple[str, str, str, bool]]:
    """All order-k roots of one (l, wa2) sector as text, so results cross process boundaries."""
    k, l, wa2, digits = job
    solutions = general_quasi_solve(k, l, Fraction(wa2), digits)
    out = []
    for q in solutions:
        if q.exact:
            out.append((str(q.mu), str(q.g), str(q.energy_scaled), True))
        else:
            ctx = q.mu.context
            out.append((ctx.nstr(q.mu, digits), ctx.nstr(q.g, digits), ctx.nstr(q.energy_scaled, digits), False))
    return out


def _parse_sector(ctx, texts) -> List[Tuple]:
    parsed = []
    for mu, g, energy, exact in texts:
        if exact:
            parsed.append((Fraction(mu), Fraction(g), Fraction(energy)))
        else:
            parsed.append((ctx.mpf(mu), ctx.mpf(g), ctx.mpf(energy)))
    return parsed


def _sectors(frame, k: int, digits: int, workers: int, ctx) -> Dict[Tuple[int, str], List[Tuple]]:
    keys = list(dict.fromkeys((int(row.l), row.wa2) for row in frame.itertuples()))
    results = _run_jobs(_quasi_sector, [(k, l, wa2, digits) for l, wa2 in keys], workers)
    return {key: _parse_sector(ctx, texts) for key, texts in zip(keys, results)}


def closed_form_mu(row, ctx):
    """
    Evaluate one order-1 closed form.

    cardano: shift + sign (w^j r + c conj(w)^j / r) / 3 with r the principal cube
    root of a_rat + a_coef sqrt(a_rad); surd: shift + sign a_coef sqrt(a_rad);
    rational: shift, returned as an exact Fraction.

    Raises:
        ArithmeticError: if the Cardano expression is not real
    """
    shift = Fraction(row.shift)
    if row.form == "rational":
        return shift
    sign = int(row.sign)
    coef = to_big(Fraction(row.a_coef), ctx)
    radicand = to_big(Fraction(row.a_rad), ctx)
    if row.form == "surd":
        return to_big(shift, ctx) + sign * coef * ctx.sqrt(radicand)
    if row.form != "cardano":
        raise ValueError(f"unknown closed form {row.form!r} in row {row.row}")
    a = to_big(Fraction(row.a_rat), ctx) + coef * ctx.sqrt(radicand)
    if ctx.im(a) == 0 and ctx.re(a) < 0:
        r = -ctx.cbrt(-ctx.re(a))
    else:
        r = ctx.cbrt(a)
    omega = ctx.expjpi(ctx.mpf(2) / 3)
    j = int(row.branch)
    inner = omega ** j * r + int(row.c) * ctx.conj(omega) ** j / r
    value = to_big(shift, ctx) + sign * inner / 3
    if abs(ctx.im(value)) > ctx.mpf(10) ** (-(ctx.dps // 2)):
        raise ArithmeticError(f"closed form in row {row.row} is not real: {value}")
    return ctx.re(value)


def _nearest(roots: List[Tuple], mu, ctx) -> Optional[Tuple]:
    if not roots:
        return None
    return min(roots, key=lambda r: abs(to_big(r[0], ctx) - to_big(mu, ctx)))


def reproduce_order1(digits: int, tol, workers: int, tables: Sequence[str] = ("1", "2"),
                     target: str = "order1") -> ReproReport:
    """Closed-form rows of the given tables against the k = 1 solver."""
    digits = max(digits, ORDER1_MIN_DIGITS)
    ctx = working_context(digits)
    frame = read_fixture("order1.csv")
    frame = frame[frame["table"].isin(tables)]
    sectors = _sectors(frame, 1, digits, workers, ctx)
    report = ReproReport(target=target, tolerance=tol)
    for row in frame.itertuples():
        l = int(row.l)
        mu = closed_form_mu(row, ctx)
        g = (mu - 1) * (mu - 2)
        e_over_w = 2 * mu + (Fraction(2 * l + 3, 2) if isinstance(mu, Fraction) else ctx.mpf(2 * l + 3) / 2)
        match = _nearest(sectors[(l, row.wa2)], mu, ctx)
        if match is None:
            computed = (None, None, None)
        else:
            wa2 = Fraction(row.wa2)
            computed = (match[0], match[1], match[2] / wa2 if isinstance(match[2], Fraction) else match[2] / to_big(wa2, ctx))
        for quantity, found, reference in zip(("mu", "g", "E_over_w"), computed, (mu, g, e_over_w)):
            report.rows.append(_compare(ctx, row.row, quantity, found, reference, tol))
    return report


def reproduce_order2(digits: int, tol, workers: int) -> ReproReport:
    ctx = working_context(digits)
    frame = read_fixture("order2.csv")
    sectors = _sectors(frame, 2, digits, workers, ctx)
    report = ReproReport(target="table3", tolerance=tol)
    for row in frame.itertuples():
        l = int(row.l)
        reference_mu = ctx.mpf(row.mu)
        match = _nearest(sectors[(l, row.wa2)], reference_mu, ctx)
        if match is None:
            computed = (None, None, None)
        else:
            mu = to_big(match[0], ctx)
            computed = (mu, to_big(match[1], ctx), mu + ctx.mpf(2 * l + 3) / 4)
        references = (reference_mu, ctx.mpf(row.g), ctx.mpf(row.energy_over_2w))
        for quantity, found, reference in zip(("mu", "g", "E_over_2w"), computed, references):
            report.rows.append(_compare(ctx, row.row, quantity, found, reference, tol))
    return report


# ---------------------------------------------------------------- spectrum

def _spectrum_sector(job: Tuple) -> List[Tuple[str, int]]:
    """Lowest `count` AIM levels of one (l, wa2, g) sector as (Ea^2 text, iterations)."""
    l, wa2, g, count, digits = job
    cfg = AimConfig(digits=digits)
    ctx = working_context(digits)
    bracket = default_bracket(l, Fraction(wa2), Fraction(g), count, ctx)
    search = find_eigenvalues(l, Fraction(wa2), Fraction(g), bracket, count, cfg)
    return [(ctx.nstr(r.energy_scaled, digits), r.iterations) for r in search]


def reproduce_spectrum(digits: int, tol, workers: int) -> ReproReport:
    ctx = working_context(digits)
    frame = read_fixture("spectrum.csv")
    counts: Dict[Tuple[int, str, str], int] = {}
    for row in frame.itertuples():
        key = (int(row.l), row.wa2, row.g)
        counts[key] = max(counts.get(key, 0), int(row.level) + 1)
    keys = list(counts)
    jobs = [(l, wa2, g, counts[(l, wa2, g)], digits) for l, wa2, g in keys]
    levels = dict(zip(keys, _run_jobs(_spectrum_sector, jobs, workers)))
    report = ReproReport(target="table4", tolerance=tol)
    for row in frame.itertuples():
        found = levels[(int(row.l), row.wa2, row.g)]
        level = int(row.level)
        computed = ctx.mpf(found[level][0]) if level < len(found) else None
        if computed is not None:
            logger.info(f"Row {row.row}: g={row.g}, E{row.state} found at N={found[level][1]} "
                        f"(reference N={row.iterations})")
        report.rows.append(_compare(ctx, row.row, f"E{row.state}", computed, ctx.mpf(row.energy_scaled), tol))
    return report


# ---------------------------------------------------------------- profile

def reproduce_profile(digits: int, tol, workers: int) -> ReproReport:
    """Origin values, node count and large-x behaviour of the cubic preset, plus its series."""
    spec, wave = cubic_state()
    ctx = working_context(digits)
    far = Fraction(50)
    report = ReproReport(target="figure1", tolerance=tol)
    checks = (
        ("V3_origin", potential_scaled(spec, 0), Fraction(-660, 49)),
        ("psi3_origin", exact_origin_value(wave), Fraction(-49)),
        ("psi3_nodes", Fraction(count_nodes(wave, ctx)), Fraction(1)),
        ("V3_over_x2_at_50", potential_scaled(spec, far) / (far * far), Fraction(225, 196)),
    )
    for quantity, computed, reference in checks:
        report.rows.append(_compare(ctx, "p1", quantity, computed, reference, tol))
    report.series = preset_series("eq34", digits=digits)
    return report


RUNNERS = {
    "table1": lambda digits, tol, workers: reproduce_order1(digits, tol, workers, ("1",), "table1"),
    "table2": lambda digits, tol, workers: reproduce_order1(digits, tol, workers, ("2",), "table2"),
    "order1": reproduce_order1,
    "table3": reproduce_order2,
    "table4": reproduce_spectrum,
    "figure1": reproduce_profile,
}


def run_reproduction(target: str, digits: Optional[int] = None, tol=None,
                     workers: Optional[int] = None) -> ReproReport:
    """
    Run one reproduction target.

    Args:
        target: table1..table4, figure1, or one of the aliases order1,
            order2, spectrum, profile
        digits: Working precision (default config.DEFAULT_DIGITS)
        tol: Row tolerance (default config.REPRO_TOLERANCES[target])
        workers: Process count for sector solves (default config.REPRO_WORKERS)

    Returns:
        ReproReport with one row per compared quantity
    """
    target = canonical_target(target)
    digits = digits or config.DEFAULT_DIGITS
    workers = workers or config.REPRO_WORKERS
    tol = Fraction(str(tol if tol is not None else config.REPRO_TOLERANCES[target]))
    logger.info(f"Reproducing {target} at {digits} digits, tolerance {exact_text(tol)}")
    try:
        report = RUNNERS[target](digits, tol, workers)
    except Exception as e:
        logger.error(f"Reproduction of {target} failed: {str(e)}")
        raise
    for failure in report.failures:
        logger.error(f"Row {failure.row_id} {failure.quantity}: computed {failure.computed}, "
                     f"reference {failure.reference}, diff {failure.abs_diff}")
    logger.info(f"{target}: {len(report.rows) - len(report.failures)}/{len(report.rows)} rows within tolerance")
    return report
