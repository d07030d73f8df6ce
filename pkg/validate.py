"""
Simple validation script for the isotonic oscillator solver

Validates that all modules import and that the exact pipeline reproduces a
known quasi-exact state.
"""
from fractions import Fraction


def validate_imports():
    """Validate all module imports."""
    print("Validating module imports...")
    print()

    try:
        import config
        print(f"✓ config module ({config.DEFAULT_DIGITS} digits)")

        import exactmath
        print("✓ exactmath")

        import quasipoly
        print("✓ quasipoly")

        import aim
        print("✓ aim")

        import model
        print("✓ model")

        import cli
        print("✓ cli")

        print()
        print("Module validation successful!")
        return True
    except Exception as e:
        print(f"✗ Import error: {str(e)}")
        return False


def validate_exact_pipeline():
    """Validate Q polynomial, root isolation and the package at the cubic root."""
    print()
    print("Validating exact pipeline...")
    print()

    try:
        from exactmath import poly_real_roots
        from quasipoly import case2_Q, case2_solution_at_root, exact_family

        q = case2_Q(-1, 3)
        roots = poly_real_roots(q, interval=(0, None))
        print(f"✓ Q = {q} has {len(roots)} positive root(s)")

        package = case2_solution_at_root(-1, 3, roots[0])
        if package.two_e_a2 != Fraction(465, 98):
            print(f"✗ 2Ea^2 = {package.two_e_a2}, expected 465/98")
            return False
        print(f"  - a2w: {package.wa2}")
        print(f"  - g: {package.g}")
        print(f"  - 2Ea^2: {package.two_e_a2}")
        print(f"  - f(x): {package.solution_x.polynomial}")

        members = exact_family(3)
        print(f"✓ Exact family: {sum(m.admissible for m in members)} admissible of {len(members)}")
        return True
    except Exception as e:
        print(f"✗ Pipeline error: {str(e)}")
        return False


def main():
    """Run validation."""
    print()
    print("=" * 60)
    print("ISOTONIC OSCILLATOR SOLVER - VALIDATION")
    print("=" * 60)
    print()

    imports_ok = validate_imports()
    pipeline_ok = validate_exact_pipeline() if imports_ok else False

    print()
    print("=" * 60)
    if imports_ok and pipeline_ok:
        print("✓ All validations passed!")
    else:
        print("⚠ Some validations failed")
    print()
    print("Next steps:")
    print("  1. Run the tests: pytest tests/ -v")
    print("  2. Try the CLI: python -m cli case2 --n 3 --l=-1")
    print("=" * 60)


if __name__ == "__main__":
    main()
