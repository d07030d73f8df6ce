"""
Unit tests for exact rational arithmetic, root isolation and special functions.
"""
import pytest
import random
from fractions import Fraction
from pathlib import Path
import sys

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from exactmath import (
    IdenticallyZeroError,
    PochhammerPoleError,
    RatPoly,
    hyp1f1_terminating,
    laguerre_assoc,
    pochhammer,
    poly_arith,
    poly_gcd,
    poly_real_roots,
    sqrt_pi_gamma_ratio,
    square_free_decomposition,
    sturm_sequence,
    to_big,
    tolerance,
    working_context,
)


@pytest.fixture
def x():
    return RatPoly.variable("x")


class TestRatPoly:
    """Test exact polynomial arithmetic."""

    def test_product_and_division(self, x):
        """Test (x+1)(x-1) = x^2 - 1 and exact division back."""
        p = (x + 1) * (x - 1)
        assert p == RatPoly([-1, 0, 1])
        quotient, remainder = divmod(p, x - 1)
        assert quotient == x + 1
        assert remainder.is_zero()

    def test_trailing_zeros_are_dropped(self):
        """Test normalization of the coefficient list."""
        p = RatPoly([1, 2, 0, 0])
        assert p.degree == 1
        assert RatPoly([]).degree == -1

    def test_primitive_form(self):
        """Test integer coefficients, content 1, positive leading coefficient."""
        p = RatPoly([Fraction(1, 2), Fraction(-3, 4)])
        assert p.primitive() == RatPoly([-2, 3])

    def test_poly_arith_dispatch(self, x):
        """Test add/sub/mul by name and rejection of unknown ops."""
        p, q = x + 2, x - 3
        assert poly_arith(p, q, "add") == 2 * x - 1
        assert poly_arith(p, q, "sub") == RatPoly([5])
        assert poly_arith(p, q, "mul") == x * x - x - 6
        with pytest.raises(ValueError):
            poly_arith(p, q, "div")

    def test_gcd_is_monic(self, x):
        """Test gcd of polynomials sharing the factor 2x - 1."""
        p = (2 * x - 1) * (x + 5)
        q = (2 * x - 1) * (x - 7)
        assert poly_gcd(p, q) == x - Fraction(1, 2)

    def test_square_free_decomposition(self, x):
        """Test multiplicities of (x-1)^2 (x+2)."""
        p = (x - 1) ** 2 * (x + 2)
        assert square_free_decomposition(p) == [(x + 2, 1), (x - 1, 2)]

    def test_ratio_to(self, x):
        """Test scalar-multiple detection."""
        assert (3 * x + 6).ratio_to(x + 2) == 3
        with pytest.raises(ValueError):
            (x + 3).ratio_to(x + 2)

    def test_string_form(self, x):
        """Test printing with descending powers."""
        assert str(45 * x ** 6 + 225 * x ** 4 + 315 * x ** 2 - 49) == "45*x^6 + 225*x^4 + 315*x^2 - 49"


class TestRootIsolation:
    """Test Sturm-sequence root isolation."""

    def test_sturm_chain_starts_with_p(self, x):
        """Test the chain begins with p and p'."""
        p = x ** 3 - 2 * x
        chain = sturm_sequence(p)
        assert chain[0] == p
        assert chain[1] == p.derivative()

    def test_irrational_roots(self, x):
        """Test x^2 - 2 has two inexact roots at +/- sqrt(2)."""
        ctx = working_context(40)
        roots = poly_real_roots(x * x - 2, digits=40)
        assert len(roots) == 2
        assert all(r.exact is None for r in roots)
        assert abs(to_big(roots[1].value, ctx) - ctx.sqrt(2)) < ctx.mpf(10) ** -35
        assert abs(to_big(roots[0].value, ctx) + ctx.sqrt(2)) < ctx.mpf(10) ** -35

    def test_rational_roots_recognized(self, x):
        """Test exact recognition of 1/2 and -3."""
        roots = poly_real_roots((2 * x - 1) * (x + 3))
        assert [r.exact for r in roots] == [Fraction(-3), Fraction(1, 2)]

    def test_multiplicity(self, x):
        """Test a double root is reported once."""
        roots = poly_real_roots((x - 1) ** 2 * (x * x + 1))
        assert len(roots) == 1
        assert roots[0].multiplicity == 2
        assert roots[0].exact == 1

    def test_interval_filter(self, x):
        """Test restriction to positive roots."""
        roots = poly_real_roots((x + 1) * (x - 2) * (x - 5), interval=(0, None))
        assert [r.exact for r in roots] == [2, 5]

    def test_zero_polynomial_raises(self):
        """Test the identically-zero condition."""
        with pytest.raises(IdenticallyZeroError):
            poly_real_roots(RatPoly([]))


class TestSpecialFunctions:
    """Test terminating 1F1, Laguerre polynomials and Pochhammer symbols."""

    def test_pochhammer(self):
        """Test (1/2)_3 = 15/8 and (a)_0 = 1."""
        assert pochhammer(Fraction(1, 2), 3) == Fraction(15, 8)
        assert pochhammer(7, 0) == 1

    @pytest.mark.parametrize("n", range(7))
    def test_kummer_residual(self, n):
        """Test 1F1(-n; a; z) solves z y'' + (a - z) y' + n y = 0 exactly."""
        a = Fraction(3, 2)
        z = RatPoly.variable("z")
        y = hyp1f1_terminating(n, a, z)
        residual = z * y.derivative().derivative() + RatPoly([a, -1], "z") * y.derivative() + n * y
        assert residual.is_zero()
        assert y.degree == n

    def test_pochhammer_pole(self):
        """Test a nonpositive integer a inside the sum raises."""
        with pytest.raises(PochhammerPoleError):
            hyp1f1_terminating(3, 0, RatPoly.variable("z"))

    def test_hyp1f1_numeric(self):
        """Test 1F1(-1; a; z) = 1 - z/a with mpf argument."""
        ctx = working_context(30)
        value = hyp1f1_terminating(1, Fraction(3, 2), ctx.mpf(3))
        assert abs(value - (1 - ctx.mpf(3) / ctx.mpf(1.5))) < ctx.mpf(10) ** -25

    def test_laguerre(self):
        """Test L_2^0(x) = (x^2 - 4x + 2)/2, exactly and numerically."""
        x = RatPoly.variable("x")
        assert laguerre_assoc(2, 0, x) == (x * x - 4 * x + 2) / 2
        ctx = working_context(30)
        assert abs(laguerre_assoc(2, 0, ctx.mpf(1)) + ctx.mpf(0.5)) < ctx.mpf(10) ** -25

    def test_gamma_ratio(self):
        """Test sqrt(pi) Gamma(1) / Gamma(5/2) = 4/3."""
        assert sqrt_pi_gamma_ratio(1) == Fraction(4, 3)


class TestBigReal:
    """Test private mpmath contexts."""

    def test_contexts_are_independent(self):
        """Test two contexts keep their own precision."""
        low, high = working_context(20), working_context(80)
        assert low.dps == 20
        assert high.dps == 80

    def test_fraction_conversion(self):
        """Test a correctly rounded 1/3."""
        ctx = working_context(50)
        assert abs(to_big(Fraction(1, 3), ctx) * 3 - 1) < tolerance(ctx)

    def test_unsupported_type(self):
        """Test conversion of an arbitrary object fails."""
        with pytest.raises(TypeError):
            to_big(object(), working_context(20))


class TestPlantedRoots:
    """Test recovery of rational roots planted by construction."""

    @pytest.mark.parametrize("seed", range(12))
    def test_every_planted_root_is_found(self, seed):
        """Test exact recovery for random degree <= 8 products of linear factors."""
        rng = random.Random(seed)
        x = RatPoly.variable("x")
        size = rng.randint(1, 8)
        planted = set()
        while len(planted) < size:
            planted.add(Fraction(rng.randint(-20, 20), rng.randint(1, 6)))
        p = RatPoly([rng.randint(1, 5)])
        for root in planted:
            p = p * (root.denominator * x - root.numerator)
        roots = poly_real_roots(p, digits=30)
        assert [r.exact for r in roots] == sorted(planted)
        for r, value in zip(roots, sorted(planted)):
            assert r.contains(value)

    def test_refinement_is_monotone(self, x):
        """Test more digits keep every root inside its isolating interval."""
        p = x ** 3 - 3 * x + 1
        coarse = poly_real_roots(p, digits=20)
        assert len(coarse) == 3
        for digits in (40, 60, 80):
            ctx = working_context(digits)
            fine = poly_real_roots(p, digits=digits)
            for before, after in zip(coarse, fine):
                assert (before.lower, before.upper) == (after.lower, after.upper)
                value = to_big(after.value, ctx)
                assert to_big(before.lower, ctx) < value <= to_big(before.upper, ctx)
                assert abs(value - to_big(before.value, ctx)) < ctx.mpf(10) ** -18


class TestSpecialFunctionExamples:
    """Test worked values and identities of the special functions."""

    def test_hyp1f1_two_terms(self):
        """Test 1F1(-2; 3/2; z) = 1 - 4z/3 + 4z^2/15."""
        z = RatPoly.variable("z")
        assert hyp1f1_terminating(2, Fraction(3, 2), z) == RatPoly([1, Fraction(-4, 3), Fraction(4, 15)], "z")

    def test_laguerre_two(self):
        """Test L_2^{3/2}(x) = x^2/2 - 7x/2 + 35/8."""
        x = RatPoly.variable("x")
        assert laguerre_assoc(2, Fraction(3, 2), x) == RatPoly([Fraction(35, 8), Fraction(-7, 2), Fraction(1, 2)])

    def test_laguerre_one(self):
        """Test L_1^{1/2}(x) = 3/2 - x."""
        x = RatPoly.variable("x")
        assert laguerre_assoc(1, Fraction(1, 2), x) == RatPoly([Fraction(3, 2), -1])

    def test_pochhammer_values(self):
        """Test (-3)_2 = 6 and (3/2)_2 = 15/4."""
        assert pochhammer(-3, 2) == 6
        assert pochhammer(Fraction(3, 2), 2) == Fraction(15, 4)

    @pytest.mark.parametrize("seed", range(10))
    def test_pochhammer_split(self, seed):
        """Test (a)_{j+k} = (a)_j (a+j)_k for random rational a."""
        rng = random.Random(seed)
        a = Fraction(rng.randint(-30, 30), rng.randint(1, 9))
        j, k = rng.randint(0, 6), rng.randint(0, 6)
        assert pochhammer(a, j + k) == pochhammer(a, j) * pochhammer(a + j, k)


class TestMixedPrecision:
    """Test 60-digit evaluation against exact rational results."""

    @pytest.mark.parametrize("n", range(7))
    def test_hyp1f1_agrees_to_55_digits(self, n):
        """Test the mpf series against the exact Fraction value."""
        ctx = working_context(60)
        z = Fraction(7, 3)
        exact = hyp1f1_terminating(n, Fraction(3, 2), z)
        assert isinstance(exact, Fraction)
        numeric = hyp1f1_terminating(n, Fraction(3, 2), to_big(z, ctx))
        assert abs(numeric - to_big(exact, ctx)) <= ctx.mpf(10) ** -55 * max(1, abs(to_big(exact, ctx)))

    @pytest.mark.parametrize("n", range(1, 8))
    def test_laguerre_agrees_to_55_digits(self, n):
        """Test the recurrence in mpf against exact evaluation of the polynomial."""
        ctx = working_context(60)
        x = Fraction(11, 4)
        exact = laguerre_assoc(n, Fraction(1, 2), RatPoly.variable("x"))(x)
        numeric = laguerre_assoc(n, Fraction(1, 2), to_big(x, ctx))
        assert abs(numeric - to_big(exact, ctx)) <= ctx.mpf(10) ** -55 * max(1, abs(to_big(exact, ctx)))


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
