"""
Unit tests for the polynomial-solution engine: determinant conditions, the
isotonic limit, the one-state quasi-exact family, the exactly solvable
family and general quasi-polynomial solutions.
"""
import pytest
import random
from fractions import Fraction
from pathlib import Path
import sys

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from exactmath import RatPoly, working_context
from quasipoly import (
    OdeCoefficients,
    banded_determinant,
    bands_from_ode,
    case1_determinant,
    case1_eigenfunctions,
    case1_energy,
    case2_Q,
    case2_solution_at_root,
    condition_polynomial,
    dense_determinant,
    exact_family,
    exact_family_closed_forms,
    general_quasi_solve,
    k0_closed_form,
    n1_closed_forms,
    null_space,
    ode_case2,
    UnphysicalParameterError,
)


def _random_ode(seed: int) -> OdeCoefficients:
    rng = random.Random(seed)
    values = {name: Fraction(rng.randint(-9, 9), rng.randint(1, 4))
              for name in ("a30", "a31", "a32", "a33", "a20", "a21", "a22", "tau10", "tau11")}
    values["a32"] = values["a32"] or Fraction(1)
    return OdeCoefficients(**values)


class TestDeterminantCondition:
    """Test the banded determinant and its dense counterpart."""

    @pytest.mark.parametrize("seed", range(8))
    @pytest.mark.parametrize("n", range(6))
    def test_recurrence_matches_dense(self, seed, n):
        """Test the four-term recurrence against cofactor expansion."""
        bands = bands_from_ode(_random_ode(seed), n)
        assert banded_determinant(bands) == dense_determinant(bands.matrix())

    def test_symbolic_entries(self):
        """Test the recurrence works over RatPoly entries."""
        s = RatPoly.variable("s")
        bands = bands_from_ode(OdeCoefficients(a31=4, a32=-4, a20=-4 * s, a21=-2 * (6 * s - 1), a22=16 * s, var="z"), 3)
        assert banded_determinant(bands) == dense_determinant(bands.matrix())

    def test_null_space(self):
        """Test the exact kernel of a rank-one matrix."""
        basis = null_space([[1, 2], [2, 4]])
        assert basis == [[Fraction(-2), Fraction(1)]]

    def test_needs_second_derivative(self):
        """Test an ODE without an f'' coefficient is rejected."""
        with pytest.raises(ValueError):
            OdeCoefficients(a20=1)


class TestIsotonicLimit:
    """Test the g = 0 limit solved by terminating 1F1."""

    def test_energy(self):
        """Test 2Ea^2 = wa2 (2n' + 2l + 3)."""
        assert case1_energy(0, 1, 0) == 3
        assert case1_energy(0, Fraction(1, 2), 2) == Fraction(7, 2)
        assert case1_energy(-1, 2, 4) == 18

    def test_determinant_parity(self):
        """Test odd n' is inadmissible for l >= 0 and every n' is degenerate for l = -1."""
        assert case1_determinant(0, 1, 1) != 0
        assert case1_determinant(0, 1, 2) == 0
        for n_prime in range(5):
            assert case1_determinant(-1, 1, n_prime) == 0

    @pytest.mark.parametrize("l", [-1, 0, 2])
    def test_eigenfunctions(self, l):
        """Test f_n solves the ODE exactly and has degree 2n in x."""
        solution = case1_eigenfunctions(l, Fraction(3, 2), 3)
        assert solution.substitution_residual.is_zero()
        assert solution.polynomial.degree == 6
        assert solution.ode_index == 6


class TestOneStateFamily:
    """Test Q polynomials and the packages at their roots."""

    @pytest.mark.parametrize("n,expected", [
        (2, RatPoly([1], "a2w")),
        (3, RatPoly([-15, 14], "a2w")),
        (4, RatPoly([105, -148, 44], "a2w")),
        (5, RatPoly([315, -514, 200], "a2w")),
    ])
    def test_q_polynomials(self, n, expected):
        """Test Q_{n-1} for l = -1 up to a rational factor."""
        assert case2_Q(-1, n).ratio_to(expected) != 0

    def test_cubic_package(self):
        """Test the exact package at a2w = 15/14."""
        package = case2_solution_at_root(-1, 3, Fraction(15, 14))
        assert package.two_e_a2 == Fraction(465, 98)
        assert package.mu == Fraction(-15, 7)
        assert package.potential_coefficients == (Fraction(225, 196), Fraction(660, 49))
        x = RatPoly.variable("x")
        assert package.solution_x.polynomial == 45 * x ** 6 + 225 * x ** 4 + 315 * x ** 2 - 49
        assert package.solution_z.substitution_residual.is_zero()

    def test_irrational_roots(self):
        """Test the n = 4 roots (37 +/- sqrt(214))/22 give numeric packages."""
        from exactmath import poly_real_roots
        ctx = working_context(40)
        roots = poly_real_roots(case2_Q(-1, 4), interval=(0, None), digits=40)
        expected = sorted([(37 - ctx.sqrt(214)) / 22, (37 + ctx.sqrt(214)) / 22])
        assert len(roots) == 2
        for root, value in zip(roots, expected):
            assert abs(ctx.mpf(root.value) - value) < ctx.mpf(10) ** -30
            package = case2_solution_at_root(-1, 4, root, 40)
            assert not package.solution_z.exact
            assert package.solution_z.substitution_residual < ctx.mpf(10) ** -25

    def test_nonpositive_root(self):
        """Test a2w <= 0 is unphysical."""
        with pytest.raises(UnphysicalParameterError):
            case2_solution_at_root(-1, 3, Fraction(-1, 2))


class TestOneStateFactorization:
    """Test the Q cofactor divides out exactly beyond l = -1."""

    @pytest.mark.parametrize("l", [-1, 0, 1])
    @pytest.mark.parametrize("n", range(2, 7))
    def test_division_is_exact(self, l, n):
        """Test Delta_{n+1} = const * a2w (l+1+a2w)(1+2l+2a2w) Q."""
        q = case2_Q(l, n)
        s = RatPoly.variable("a2w")
        delta = banded_determinant(bands_from_ode(ode_case2(l, s), n))
        rebuilt = s * (s + (l + 1)) * (2 * s + (1 + 2 * l)) * q
        assert delta.ratio_to(rebuilt) != 0

    @pytest.mark.parametrize("l", [0, 1])
    @pytest.mark.parametrize("n", range(2, 7))
    def test_positive_roots_give_solutions(self, l, n):
        """Test every positive root of Q yields a polynomial solving its ODE."""
        from exactmath import poly_real_roots
        q = case2_Q(l, n)
        if q.degree < 1:
            return
        ctx = working_context(40)
        for root in poly_real_roots(q, interval=(0, None), digits=40):
            package = case2_solution_at_root(l, n, root, 40)
            residual = package.solution_z.substitution_residual
            if package.solution_z.exact:
                assert residual.is_zero()
            else:
                assert residual < ctx.mpf(10) ** -25


class TestExactFamily:
    """Test the exactly solvable family at l = -1, wa2 = 1/2, g = 2."""

    @pytest.fixture(scope="class")
    def members(self):
        return exact_family(5)

    def test_spectrum(self, members):
        """Test 2Ea^2 = 2n - 3/2."""
        assert [m.two_e_a2 for m in members] == [Fraction(4 * n - 3, 2) for n in range(6)]

    def test_index_one_inadmissible(self, members):
        """Test only degree 1 has no polynomial solution."""
        assert [m.admissible for m in members] == [True, False, True, True, True, True]

    def test_polynomials(self, members):
        """Test the printed sequence with zero substitution residuals."""
        z = RatPoly.variable("z")
        expected = {
            0: RatPoly([1], "z"),
            2: z ** 2 - 2,
            3: z ** 3 - 6 * z ** 2 + 8,
            4: z ** 4 - 16 * z ** 3 + 52 * z ** 2 - 52,
            5: z ** 5 - 30 * z ** 4 + 250 * z ** 3 - 580 * z ** 2 + 464,
        }
        for member in members:
            if not member.admissible:
                continue
            assert member.solution.polynomial.ratio_to(expected[member.degree]) != 0
            assert member.solution.substitution_residual.is_zero()

    @pytest.mark.parametrize("m", range(1, 5))
    def test_closed_forms(self, m, members):
        """Test hypergeometric and Laguerre forms reproduce the degree m+1 solution."""
        form = exact_family_closed_forms(m)
        assert form.ode_index == m + 1
        assert form.polynomial.ratio_to(members[m + 1].solution.polynomial) != 0
        assert form.substitution_residual.is_zero()


class TestGeneralSolutions:
    """Test quasi-polynomial solutions of order k."""

    def test_k0_closed_form(self):
        """Test mu = -4, g = 20, Ea^2 = -13/2 at l = 0, wa2 = 1."""
        assert k0_closed_form(0, 1) == (Fraction(-4), Fraction(20), Fraction(-13, 2))
        solutions = general_quasi_solve(0, 0, 1)
        physical = [q for q in solutions if q.physical]
        assert len(physical) == 1
        assert physical[0].exact
        assert (physical[0].mu, physical[0].g, physical[0].energy_scaled) == k0_closed_form(0, 1)

    def test_order_one_rational_root(self):
        """Test (mu, g, E) = (0, 2, 3w/2) at l = 0, wa2 = 1/2."""
        solutions = general_quasi_solve(1, 0, Fraction(1, 2))
        exact = [q for q in solutions if q.exact and q.mu == 0]
        assert len(exact) == 1
        assert exact[0].g == 2
        assert exact[0].energy_over_w == Fraction(3, 2)

    def test_order_two_row(self):
        """Test the first order-2 root at l = -1, wa2 = 1/2."""
        ctx = working_context(40)
        solutions = general_quasi_solve(2, -1, Fraction(1, 2), 40)
        mu = ctx.mpf("-6.301870878994198")
        nearest = min(solutions, key=lambda q: abs(q.numeric(ctx)[0] - mu))
        found_mu, found_g, found_energy = nearest.numeric(ctx)
        assert not nearest.exact
        assert abs(found_mu - mu) < ctx.mpf("1e-12")
        assert abs(found_g - ctx.mpf("77.22293097048609")) < ctx.mpf("1e-12")
        assert abs(found_energy / (2 * ctx.mpf("0.5")) - ctx.mpf("-6.051870878994198")) < ctx.mpf("1e-12")

    def test_mixed_roots_share_numeric_view(self):
        """Test rational and irrational roots convert alike."""
        ctx = working_context(40)
        solutions = general_quasi_solve(1, 0, Fraction(1, 2), 40)
        assert any(q.exact for q in solutions) and any(not q.exact for q in solutions)
        for q in solutions:
            mu, g, energy = q.numeric(ctx)
            assert abs(g - (mu - 1) * (mu - 2)) < ctx.mpf(10) ** -35
            assert abs(energy - (3 + 4 * mu) / 4) < ctx.mpf(10) ** -35

    @pytest.mark.parametrize("k,l,wa2", [(1, 0, Fraction(1, 2)), (2, -1, Fraction(1, 2)), (2, 0, 2)])
    def test_polynomial_substitutes_back(self, k, l, wa2):
        """Test the order-k polynomial solves its ODE at every root."""
        solutions = general_quasi_solve(k, l, wa2, 40)
        assert solutions
        for q in solutions:
            if q.exact:
                assert q.residuals[1] == 0
            else:
                assert q.residuals[1] < working_context(40).mpf(10) ** -30

    def test_condition_polynomial_degree(self):
        """Test the order-0 condition is quadratic in mu."""
        assert condition_polynomial(0, 0, 1).degree == 2

    def test_order_one_branches(self):
        """Test solving for l recovers l = 0 and the closed-form energy."""
        ctx = working_context(40)
        mu = -(7 + ctx.sqrt(17)) / 2
        branches = n1_closed_forms(mu, Fraction(1, 2), 40)
        assert any(abs(b.l) < ctx.mpf(10) ** -30 for b in branches)
        for b in branches:
            assert abs(b.energy_scaled - b.energy_closed_form) < ctx.mpf(10) ** -30


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
