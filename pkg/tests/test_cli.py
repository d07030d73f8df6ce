"""
Tests for the command line: output formats, flag validation, exit codes and
the reproduction targets.

The table4 target runs AIM for eight couplings; set GISO_RUN_SLOW=1 to include it.
"""
import json
import os
import pytest
from fractions import Fraction
from pathlib import Path
from unittest.mock import patch
import sys

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from aim import EigenSearch
from cli import (
    Emission,
    ReproReport,
    ReproRow,
    canonical_target,
    closed_form_mu,
    format_number,
    read_fixture,
    render,
    run_reproduction,
)
from cli.formats import reemit_json
from cli.main import main
from exactmath import to_big, working_context
from quasipoly import FactorizationError, condition_polynomial

slow = pytest.mark.skipif(
    not os.getenv("GISO_RUN_SLOW"),
    reason="Set GISO_RUN_SLOW=1 for long AIM reproductions"
)


def _run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


class TestFormats:
    """Test number rendering and table output."""

    def test_format_number(self):
        """Test fixed decimals, lower-case exponent and zero."""
        assert format_number(Fraction(1, 3), 5) == "3.33333e-1"
        assert format_number(0) == "0.000000000000000e+0"
        assert format_number(-1.5, 3) == "-1.500e+0"
        ctx = working_context(30)
        assert format_number(ctx.mpf(1) / 8, 4) == "1.2500e-1"

    def test_tsv_header(self):
        """Test '#' metadata lines, a '#' column line and bare data rows."""
        emission = Emission(payload={}, rows=[{"x": "0", "y": "1"}, {"x": "1", "y": "2"}],
                            header={"preset": "cubic"})
        lines = render(emission, "tsv").splitlines()
        assert lines[0] == "# preset = cubic"
        assert lines[1] == "# x\ty"
        assert lines[2:] == ["0\t1", "1\t2"]

    def test_csv(self):
        """Test a plain CSV header row."""
        emission = Emission(payload={}, rows=[{"x": "0", "y": "1"}])
        assert render(emission, "csv") == "x,y\n0,1\n"

    def test_json_reemit(self):
        """Test re-emitting JSON is the identity."""
        text = render(Emission(payload={"a": "1.0e+0", "b": [1, 2]}))
        assert reemit_json(text) == text

    def test_unknown_format(self):
        """Test format names are validated."""
        with pytest.raises(ValueError):
            render(Emission(payload={}), "xml")


class TestFixtures:
    """Test reference fixtures and the order-1 closed forms."""

    @pytest.mark.parametrize("name,count", [("order1.csv", 16), ("order2.csv", 16), ("spectrum.csv", 32)])
    def test_row_counts(self, name, count):
        """Test comment lines are skipped."""
        assert len(read_fixture(name)) == count

    def test_closed_forms_solve_condition(self):
        """Test every closed-form mu is a root of the order-1 condition."""
        ctx = working_context(40)
        for row in read_fixture("order1.csv").itertuples():
            mu = to_big(closed_form_mu(row, ctx), ctx)
            poly = condition_polynomial(1, int(row.l), Fraction(row.wa2))
            terms = [to_big(c, ctx) * mu ** i for i, c in enumerate(poly.coefficients)]
            scale = sum(abs(t) for t in terms)
            assert abs(sum(terms)) <= ctx.mpf(10) ** -30 * max(1, scale), row.row

    def test_order1_table_split(self):
        """Test rows c1-c10 belong to table 1 and c11-c16 to table 2."""
        frame = read_fixture("order1.csv")
        assert list(frame["table"]) == ["1"] * 10 + ["2"] * 6

    def test_corrected_radicand(self):
        """Test row c1 carries 921 and its printed 961 fails the condition."""
        row = next(read_fixture("order1.csv").itertuples())
        assert row.row == "c1" and row.a_rad == "921"
        ctx = working_context(40)
        poly = condition_polynomial(1, int(row.l), Fraction(row.wa2))
        misprint = to_big(closed_form_mu(row._replace(a_rad="961"), ctx), ctx)
        value = sum(to_big(c, ctx) * misprint ** i for i, c in enumerate(poly.coefficients))
        assert abs(value) > ctx.mpf(10) ** -6

    def test_rational_form_is_exact(self):
        """Test the rational closed form stays a Fraction."""
        row = next(r for r in read_fixture("order1.csv").itertuples() if r.form == "rational")
        assert closed_form_mu(row, working_context(20)) == Fraction(0)


class TestCommands:
    """Test subcommand output."""

    def test_case2_cubic(self, capsys):
        """Test the exact n = 3 package in JSON."""
        code, out = _run(capsys, "case2", "--n", "3", "--l=-1")
        assert code == 0
        payload = json.loads(out)
        assert len(payload["roots"]) == 1
        root = payload["roots"][0]
        assert root["a2w"]["exact"] == "15/14"
        assert root["2Ea2"]["exact"] == "465/98"
        assert root["solution_x"]["polynomial"] == "45*x^6 + 225*x^4 + 315*x^2 - 49"

    def test_exact_family_csv(self, capsys):
        """Test one CSV row per member."""
        code, out = _run(capsys, "exact", "--max-index", "3", "--format", "csv")
        assert code == 0
        lines = out.splitlines()
        assert lines[0].startswith("degree,2Ea2,admissible")
        assert len(lines) == 5

    def test_output_is_deterministic(self, capsys):
        """Test two runs emit identical bytes."""
        _, first = _run(capsys, "exact", "--max-index", "4", "--closed-forms")
        _, second = _run(capsys, "exact", "--max-index", "4", "--closed-forms")
        assert first == second

    def test_wavefunction_tsv(self, capsys):
        """Test the default eq34 preset as TSV."""
        code, out = _run(capsys, "wavefunction", "--samples", "5", "--digits", "30")
        assert code == 0
        lines = out.splitlines()
        assert "# preset = eq34" in lines
        assert "# x\tV3\tpsi3" in lines
        assert len([line for line in lines if not line.startswith("#")]) == 5

    @pytest.mark.parametrize("preset", ["eq34", "cubic"])
    def test_named_presets(self, preset, capsys):
        """Test the eq34 preset and its descriptive alias give the same state."""
        code, out = _run(capsys, "wavefunction", "--preset", preset, "--range", "0:5",
                         "--samples", "5", "--digits", "30")
        assert code == 0
        assert "# psi3(0) = -49" in out.splitlines()

    def test_out_file(self, tmp_path, capsys):
        """Test --out writes UTF-8 text and leaves stdout empty."""
        target = tmp_path / "nested" / "case2.json"
        code, out = _run(capsys, "case2", "--n", "3", "--l=-1", "--out", str(target))
        assert code == 0
        assert out == ""
        assert json.loads(target.read_text(encoding="utf-8"))["n"] == 3


class TestExitCodes:
    """Test the exit-code contract."""

    def test_usage_errors(self, capsys):
        """Test unknown commands, bad flags and invalid values."""
        assert main(["bogus"]) == 2
        assert main(["aim", "--l", "0"]) == 2
        assert main(["aim", "--l", "0", "--wa2", "0", "--g", "1"]) == 2
        assert main(["aim", "--l", "0", "--wa2", "1", "--g", "1", "--bracket", "5:1"]) == 2

    def test_help(self, capsys):
        """Test --help exits cleanly."""
        assert main(["--help"]) == 0

    def test_shortfall_is_convergence_failure(self, capsys):
        """Test too few stabilized roots exits with 3."""
        empty = EigenSearch(results=[], requested=1, t0_tried=["0.5", "0.35"])
        with patch("cli.main.find_eigenvalues", return_value=empty):
            code = main(["aim", "--l", "0", "--wa2", "1", "--g", "1", "--bracket=-1:3"])
        assert code == 3

    def test_unsettled_ground_state_is_convergence_failure(self, capsys, monkeypatch):
        """Test a lower root that never settles is not replaced by the next level."""
        import aim.solver
        settle = aim.solver._stabilize

        def refuse_ground(delta, guess, *args):
            if abs(float(guess) - 1.5) < 0.25:
                return None
            return settle(delta, guess, *args)

        monkeypatch.setattr(aim.solver, "_stabilize", refuse_ground)
        monkeypatch.setattr(aim.solver.config, "AIM_T0_SCHEDULE", ("0.5",))
        monkeypatch.setattr(aim.solver.config, "AIM_MAX_SCAN_POINTS", 64)
        code = main(["aim", "--l", "0", "--wa2", "1", "--g", "0", "--bracket", "0.1:9.8", "--digits", "30"])
        assert code == 3

    def test_consistency_failure(self, capsys):
        """Test a violated factorization exits with 4."""
        error = FactorizationError(-1, 3, condition_polynomial(0, 0, 1))
        with patch("cli.main.case2_Q", side_effect=error):
            assert main(["case2", "--n", "3", "--l=-1"]) == 4

    def test_reproduction_failure(self, capsys):
        """Test a failing reproduction row exits with 5 and still emits the report."""
        report = ReproReport(target="order2", tolerance=Fraction(1, 10),
                             rows=[ReproRow("q1", "mu", Fraction(1), Fraction(2), Fraction(1), Fraction(1, 10))])
        with patch("cli.main.run_reproduction", return_value=report):
            code, out = _run(capsys, "reproduce", "order2")
        assert code == 5
        payload = json.loads(out)
        assert payload["passed"] is False
        assert payload["rows"][0]["pass"] is False


class TestReproduction:
    """Test the reproduction targets against their fixtures."""

    def test_missing_value_fails(self):
        """Test a row without a computed value never passes."""
        row = ReproRow("s1", "E0", None, Fraction(1), None, Fraction(1, 10))
        assert not row.passed
        assert row.as_dict()["computed"] == "missing"

    @pytest.mark.parametrize("target,rows", [("table1", 30), ("table2", 18), ("table3", 48), ("figure1", 4)])
    def test_target_passes(self, target, rows):
        """Test every row is within the configured tolerance."""
        report = run_reproduction(target, digits=40)
        assert report.target == target
        assert len(report.rows) == rows
        assert report.passed, [r.as_dict() for r in report.failures]

    @pytest.mark.parametrize("alias,target", [("order2", "table3"), ("spectrum", "table4"), ("profile", "figure1")])
    def test_aliases(self, alias, target):
        """Test descriptive names resolve to the table targets."""
        assert canonical_target(alias) == target
        assert canonical_target(target) == target

    def test_order1_covers_both_tables(self):
        """Test order1 runs the rows of table1 and table2 together."""
        report = run_reproduction("order1", digits=40)
        assert len(report.rows) == 48
        assert report.passed

    def test_figure1_command(self, capsys):
        """Test reproduce figure1 emits the checked series as TSV."""
        code, out = _run(capsys, "reproduce", "figure1", "--digits", "30")
        assert code == 0
        lines = out.splitlines()
        assert "# checks = pass" in lines
        assert "# psi3(0) = -49" in lines

    def test_profile_emits_series(self):
        """Test the figure1 report carries the eq34 series as TSV."""
        emission = run_reproduction("profile", digits=30).to_emission()
        assert emission.default_format == "tsv"
        assert emission.header["checks"] == "pass"
        assert len(emission.rows) == 500

    def test_unknown_target(self):
        """Test target names are validated."""
        with pytest.raises(ValueError):
            run_reproduction("table9")

    @slow
    def test_spectrum(self):
        """Test the 32 AIM levels within 1e-9."""
        report = run_reproduction("table4", workers=4)
        assert len(report.rows) == 32
        assert report.passed, [r.as_dict() for r in report.failures]


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
