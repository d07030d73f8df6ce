"""
Command Line Interface

Subcommands aim, quasi, case2, exact, wavefunction, oracle and reproduce.
Data goes to stdout or --out; logs go to stderr.

Exit codes: 0 success, 2 usage, 3 convergence, 4 internal consistency,
5 reproduction failure.
"""
from decimal import Decimal
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple
import argparse
import logging
import sys
from mpmath.libmp import NoConvergence
from pydantic import ValidationError
import config
from aim import AimConfig, CrosscheckError, SeriesDepthError, default_bracket, find_eigenvalues
from exactmath import poly_real_roots, working_context
from model import (
    PRESETS,
    OracleConfig,
    OracleError,
    PotentialSpec,
    QuadratureError,
    ScalingError,
    oracle_eigenvalues,
    preset_series,
)
from quasipoly import (
    FactorizationError,
    ProportionalityError,
    case2_Q,
    case2_solution_at_root,
    exact_family,
    exact_family_closed_forms,
    general_quasi_solve,
)
from .formats import FORMATS, Emission, exact_text, format_number, series_rows, write_emission
from .reproduce import run_reproduction
from .run_config import REPRO_ALIASES, REPRO_TARGETS, RunConfig

logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CONVERGENCE = 3
EXIT_CONSISTENCY = 4
EXIT_REPRODUCTION = 5


class ShortfallError(ArithmeticError):
    """AIM found fewer stabilized roots than requested."""


def _number(value) -> Dict[str, str]:
    """Scientific rendering, plus the exact rational when there is one."""
    out = {"value": format_number(value)}
    exact = exact_text(value)
    if exact is not None:
        out["exact"] = exact
    return out


def _decimal(value: Fraction) -> str:
    return str(Decimal(value.numerator) / Decimal(value.denominator))


def _polynomial(solution) -> Dict[str, object]:
    if solution is None:
        return {}
    if solution.exact:
        return {
            "variable": solution.variable,
            "polynomial": str(solution.polynomial),
            "coefficients": [str(c) for c in solution.polynomial.coefficients],
            "residual_zero": solution.substitution_residual.is_zero(),
        }
    return {
        "variable": solution.variable,
        "coefficients": [format_number(c) for c in solution.coefficients],
        "residual": format_number(solution.substitution_residual),
    }


def _cmd_aim(run: RunConfig) -> Tuple[Emission, int]:
    cfg = AimConfig(
        t0=_decimal(run.t0) if run.t0 is not None else None,
        digits=run.digits,
        max_iterations=run.max_iter,
        tolerance=_decimal(run.tol) if run.tol is not None else None,
    )
    count = run.states or 1
    bracket = run.bracket or default_bracket(run.l, run.wa2, run.g, count, working_context(run.digits))
    search = find_eigenvalues(run.l, run.wa2, run.g, bracket, count, cfg)
    if search.shortfall:
        raise ShortfallError(f"{len(search)} of {count} roots stabilized; "
                             f"t0 schedule tried: {', '.join(search.t0_tried)}")
    states = [{
        "Ea2": format_number(r.energy_scaled),
        "iterations": r.iterations,
        "t0": format_number(r.t0),
        "residual": format_number(r.residual, 3),
    } for r in search]
    payload = {"l": run.l, "wa2": exact_text(run.wa2), "g": exact_text(run.g), "states": states}
    rows = [{"state": i, **s} for i, s in enumerate(states)]
    return Emission(payload=payload, rows=rows, header={"l": str(run.l), "wa2": str(run.wa2), "g": str(run.g)}), EXIT_OK


def _cmd_quasi(run: RunConfig) -> Tuple[Emission, int]:
    solutions = general_quasi_solve(run.k, run.l, run.wa2, run.digits)
    items = []
    for q in solutions:
        items.append({
            "mu": _number(q.mu),
            "g": _number(q.g),
            "Ea2": _number(q.energy_scaled),
            "E_over_w": _number(q.energy_over_w),
            "physical": q.physical,
            "exact": q.exact,
            "multiplicity": q.multiplicity,
            "determinant_residual": format_number(q.residuals[0], 3),
            "substitution_residual": format_number(q.residuals[1], 3),
        })
    payload = {"k": run.k, "l": run.l, "wa2": exact_text(run.wa2), "solutions": items}
    rows = [{
        "mu": s["mu"]["value"], "g": s["g"]["value"], "Ea2": s["Ea2"]["value"],
        "E_over_w": s["E_over_w"]["value"], "physical": s["physical"], "exact": s["exact"],
    } for s in items]
    return Emission(payload=payload, rows=rows, header={"k": str(run.k), "l": str(run.l), "wa2": str(run.wa2)}), EXIT_OK


def _cmd_case2(run: RunConfig) -> Tuple[Emission, int]:
    q = case2_Q(run.l, run.n)
    roots = poly_real_roots(q, interval=(0, None), digits=run.digits) if q.degree >= 1 else []
    packages = []
    for root in roots:
        package = case2_solution_at_root(run.l, run.n, root, run.digits)
        potential = package.potential_coefficients
        packages.append({
            "a2w": _number(package.wa2),
            "g": _number(package.g),
            "mu": _number(package.mu),
            "2Ea2": _number(package.two_e_a2),
            "Ea2": _number(package.energy_scaled),
            "potential_x2": _number(potential[0]),
            "potential_coupling": _number(potential[1]),
            "solution_z": _polynomial(package.solution_z),
            "solution_x": _polynomial(package.solution_x),
        })
    if not packages:
        logger.info(f"Q_{run.n - 1}^{run.l} has no positive roots")
    payload = {
        "l": run.l,
        "n": run.n,
        "Q": {"polynomial": str(q), "coefficients": [str(c) for c in q.coefficients]},
        "roots": packages,
    }
    rows = [{"a2w": p["a2w"]["value"], "g": p["g"]["value"], "mu": p["mu"]["value"], "2Ea2": p["2Ea2"]["value"]}
            for p in packages]
    return Emission(payload=payload, rows=rows, header={"l": str(run.l), "n": str(run.n), "Q": str(q)}), EXIT_OK


def _cmd_exact(run: RunConfig) -> Tuple[Emission, int]:
    max_index = 5 if run.max_index is None else run.max_index
    members = []
    for member in exact_family(max_index):
        members.append({
            "degree": member.degree,
            "2Ea2": _number(member.two_e_a2),
            "admissible": member.admissible,
            "list_index": member.list_index,
            **_polynomial(member.solution),
        })
    payload = {"l": -1, "wa2": "1/2", "g": "2", "members": members}
    if run.closed_forms:
        checked = []
        for m in range(max_index):
            form = exact_family_closed_forms(m)
            checked.append({"list_index": m, "degree": form.ode_index, **_polynomial(form)})
        payload["closed_forms"] = checked
    rows = [{"degree": m["degree"], "2Ea2": m["2Ea2"]["value"], "admissible": m["admissible"],
             "polynomial": m.get("polynomial", "")} for m in members]
    return Emission(payload=payload, rows=rows, header={"l": "-1", "wa2": "1/2", "g": "2"}), EXIT_OK


def _cmd_wavefunction(run: RunConfig) -> Tuple[Emission, int]:
    preset = run.preset or "eq34"
    x_range = run.range or (Fraction(0), Fraction(5))
    samples = run.samples or 500
    series = preset_series(preset, x_range, samples, run.normalized, run.digits)
    header = dict(series.header)
    header.update({"range": f"{x_range[0]}:{x_range[1]}", "samples": str(samples),
                   "normalized": str(run.normalized).lower()})
    payload = {"header": header, "rows": series_rows(series)}
    return Emission(payload=payload, rows=payload["rows"], header=header, default_format="tsv"), EXIT_OK


def _cmd_oracle(run: RunConfig) -> Tuple[Emission, int]:
    spec = PotentialSpec(l=run.l, wa2=run.wa2, g=run.g)
    settings = {"cutoff": run.cutoff}
    if run.grid_points is not None:
        settings["grid_points"] = run.grid_points
    count = run.count or 1
    levels = oracle_eigenvalues(spec, count, OracleConfig(**settings))
    items = [{"Ea2": format_number(e), "2Ea2": format_number(2 * e)} for e in levels]
    payload = {"l": run.l, "wa2": exact_text(run.wa2), "g": exact_text(run.g), "levels": items}
    rows = [{"level": i, **item} for i, item in enumerate(items)]
    return Emission(payload=payload, rows=rows, header={"l": str(run.l), "wa2": str(run.wa2), "g": str(run.g)}), EXIT_OK


def _cmd_reproduce(run: RunConfig) -> Tuple[Emission, int]:
    report = run_reproduction(run.target, run.digits, run.tol, run.workers)
    return report.to_emission(), EXIT_OK if report.passed else EXIT_REPRODUCTION


HANDLERS: Dict[str, Callable[[RunConfig], Tuple[Emission, int]]] = {
    "aim": _cmd_aim,
    "quasi": _cmd_quasi,
    "case2": _cmd_case2,
    "exact": _cmd_exact,
    "wavefunction": _cmd_wavefunction,
    "oracle": _cmd_oracle,
    "reproduce": _cmd_reproduce,
}


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--digits", type=int, default=None, help=f"Working precision (default {config.DEFAULT_DIGITS})")
    common.add_argument("--out", default=None, metavar="PATH", help="Write output here instead of stdout")
    common.add_argument("--format", choices=FORMATS, default=None)

    parser = argparse.ArgumentParser(
        prog="giso",
        description="Generalized isotonic oscillator: quasi-exact solutions, AIM eigenvalues and a finite-difference oracle.",
        epilog="Negative ranges need the '=' form, e.g. --bracket=-10:5",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    aim = subparsers.add_parser("aim", parents=[common], help="AIM eigenvalues in one l-sector")
    aim.add_argument("--l", type=int, required=True)
    aim.add_argument("--wa2", required=True)
    aim.add_argument("--g", required=True)
    aim.add_argument("--states", type=int, default=None)
    aim.add_argument("--bracket", default=None, metavar="LO:HI", help="Ea^2 window")
    aim.add_argument("--t0", default=None)
    aim.add_argument("--max-iter", dest="max_iter", type=int, default=None)
    aim.add_argument("--tol", default=None)

    quasi = subparsers.add_parser("quasi", parents=[common], help="Order-k quasi-exact solutions")
    quasi.add_argument("--k", type=int, required=True)
    quasi.add_argument("--l", type=int, required=True)
    quasi.add_argument("--wa2", required=True)

    case2 = subparsers.add_parser("case2", parents=[common], help="Q polynomial and its positive roots")
    case2.add_argument("--n", type=int, required=True)
    case2.add_argument("--l", type=int, required=True)

    exact = subparsers.add_parser("exact", parents=[common], help="Exactly solvable family at l=-1, wa2=1/2, g=2")
    exact.add_argument("--max-index", dest="max_index", type=int, default=None)
    exact.add_argument("--closed-forms", dest="closed_forms", action="store_true")

    wave = subparsers.add_parser("wavefunction", parents=[common], help="Sampled potential and wave function")
    wave.add_argument("--preset", choices=sorted(PRESETS), default=None)
    wave.add_argument("--range", dest="range", default=None, metavar="LO:HI")
    wave.add_argument("--samples", type=int, default=None)
    wave.add_argument("--normalized", action="store_true")

    oracle = subparsers.add_parser("oracle", parents=[common], help="Finite-difference eigenvalues")
    oracle.add_argument("--l", type=int, required=True)
    oracle.add_argument("--wa2", required=True)
    oracle.add_argument("--g", required=True)
    oracle.add_argument("--count", type=int, default=None)
    oracle.add_argument("--cutoff", type=float, default=None)
    oracle.add_argument("--grid-points", dest="grid_points", type=int, default=None)

    reproduce = subparsers.add_parser("reproduce", parents=[common], help="Compare against reference fixtures")
    reproduce.add_argument("target", choices=REPRO_TARGETS + tuple(REPRO_ALIASES))
    reproduce.add_argument("--tol", default=None)
    reproduce.add_argument("--workers", type=int, default=None)
    return parser


def _run_config(args: argparse.Namespace) -> RunConfig:
    fields = {key: value for key, value in vars(args).items() if value is not None}
    for flag in ("closed_forms", "normalized"):
        fields[flag] = bool(getattr(args, flag, False))
    return RunConfig(**fields)


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        run = _run_config(args)
    except ValidationError as e:
        logger.error(f"Invalid flags: {str(e)}")
        return EXIT_USAGE
    try:
        emission, code = HANDLERS[run.command](run)
    except (SeriesDepthError, CrosscheckError, QuadratureError, OracleError, ShortfallError, NoConvergence) as e:
        logger.error(f"{run.command} did not converge: {str(e)}")
        return EXIT_CONVERGENCE
    except (FactorizationError, ProportionalityError, ScalingError, ArithmeticError) as e:
        logger.error(f"{run.command} failed a consistency check: {str(e)}")
        return EXIT_CONSISTENCY
    except ValueError as e:
        logger.error(f"{run.command}: {str(e)}")
        return EXIT_USAGE
    write_emission(emission, run.format, run.out, sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
