"""Tests for the exact arithmetic substrate: polynomials, matrices, spectral bounds."""

import math
import sys
from fractions import Fraction

import numpy as np

from orbitlab.algebra import (
    IntMatrix,
    MultiPoly,
    NEG_INF,
    coprime_probe,
    divides,
    exterior_power,
    integer_kernel,
    poly_compose,
    poly_exact_divide,
    poly_gcd,
    poly_mul,
    root_bounds,
    spectral_radius,
)
from orbitlab.algebra.spectral import charpoly_coefficients, companion
from orbitlab.errors import ArityError, DimensionMismatchError, IndexRangeError
from orbitlab.maps.parser import parse_polynomial

GOLDEN_SQUARED = (3 + math.sqrt(5)) / 2


def P(text: str, nvars: int = 2) -> MultiPoly:
    return parse_polynomial(text, nvars)


def test_poly_canonical_form():
    """Zero coefficients vanish and equal polynomials compare equal."""
    print("Testing canonical term storage...")
    p = MultiPoly.from_dict(2, {(1, 0): 3, (0, 1): 0, (2, 0): -1})
    assert p.term_count() == 2
    assert p == P("-x0^2 + 3*x0")
    assert MultiPoly.zero(2).degree() == NEG_INF
    assert P("x0^2*x1 + x1").degree() == 3
    assert P("x0*x1 + x1^2").is_homogeneous()
    assert not P("x0 + 1").is_homogeneous()
    print("✅ Canonical form holds")


def test_poly_mul():
    print("\nTesting poly_mul...")
    assert poly_mul(P("x0 + x1"), P("x0 - x1")) == P("x0^2 - x1^2")
    p = P("3*x0^2 - x1 + 7")
    assert poly_mul(p, MultiPoly.constant(2, 1)) == p
    assert poly_mul(P("x0^2*x1"), P("x0*x1^2")) == P("x0^3*x1^3")
    assert poly_mul(p, MultiPoly.zero(2)).is_zero()
    try:
        poly_mul(P("x0"), P("x0", 3))
        raise AssertionError("mismatched nvars accepted")
    except DimensionMismatchError:
        pass
    print("✅ Products are exact")


def test_poly_compose():
    print("\nTesting poly_compose...")
    assert poly_compose(P("x0^2", 1), [P("x0^3", 1)]) == P("x0^6", 1)
    assert poly_compose(P("x0 + x1"), [P("x1"), P("x0")]) == P("x0 + x1")
    # xy with x -> yz, y -> xz gives xyz^2
    assert poly_compose(P("x0*x1", 2), [P("x1*x2", 3), P("x0*x2", 3)]) == P("x0*x1*x2^2", 3)
    try:
        poly_compose(P("x0*x1"), [P("x0")])
        raise AssertionError("wrong arity accepted")
    except ArityError:
        pass
    print("✅ Substitution matches hand computation")


def _random_poly(rng, nvars: int, terms: int = 3, max_exp: int = 2) -> MultiPoly:
    coeffs = {}
    for _ in range(terms):
        exps = tuple(int(e) for e in rng.integers(0, max_exp + 1, size=nvars))
        coeffs[exps] = int(rng.integers(-3, 4))
    poly = MultiPoly.from_dict(nvars, coeffs)
    return poly if not poly.is_zero() else MultiPoly.variable(nvars, 0)


def test_poly_compose_associative():
    """(p o Q) o R = p o (Q o R) for random substitutions."""
    print("\nTesting poly_compose associativity...")
    rng = np.random.default_rng(7071)
    for _ in range(20):
        p = _random_poly(rng, 2)
        Q = [_random_poly(rng, 2) for _ in range(2)]
        R = [_random_poly(rng, 2) for _ in range(2)]
        left = poly_compose(poly_compose(p, Q), R)
        right = poly_compose(p, [poly_compose(q, R) for q in Q])
        assert left == right, (str(p), [str(q) for q in Q], [str(r) for r in R])
    print("✅ Substitution is associative")


def test_poly_gcd():
    print("\nTesting poly_gcd...")
    assert poly_gcd(P("x0^2*x1"), P("x0*x1^2")) == P("x0*x1")
    assert poly_gcd(P("x0^2 - x1^2"), P("x0 - x1")) == P("x0 - x1")
    assert poly_gcd(P("x0^2 + x1^2"), P("x0 + x1")) == MultiPoly.constant(2, 1)
    # sign normalization: leading coefficient positive
    assert poly_gcd(P("x1 - x0"), P("x0^2 - x1^2")) == P("x0 - x1")
    # integer content is part of the gcd
    assert poly_gcd(P("6*x0"), P("4*x0^2")) == P("2*x0")
    assert poly_gcd(P("x0 + x1"), MultiPoly.zero(2)) == P("x0 + x1")
    print("✅ Gcds agree with factorizations")


def test_gcd_divides_both_random():
    """gcd(p*r, q*r) is divisible by r and divides both inputs."""
    print("\nTesting gcd on random products...")
    rng = np.random.default_rng(20240611)
    for _ in range(10):
        polys = []
        for _ in range(3):
            coeffs = {}
            for _ in range(3):
                exps = tuple(int(e) for e in rng.integers(0, 3, size=3))
                coeffs[exps] = int(rng.integers(-4, 5))
            poly = MultiPoly.from_dict(3, coeffs)
            polys.append(poly if not poly.is_zero() else MultiPoly.constant(3, 1))
        p, q, r = polys
        a, b = poly_mul(p, r), poly_mul(q, r)
        g = poly_gcd(a, b)
        assert divides(g, a) and divides(g, b)
        if not r.is_constant():
            assert divides(r.primitive_part(), g)
    print("✅ Random gcds are common divisors")


def test_coprime_check_and_exact_divide():
    print("\nTesting the coprimality check and exact division...")
    assert coprime_probe(P("x0^2 + x1^2"), P("x0 + x1"))
    assert not coprime_probe(P("x0^2 - x1^2"), P("x0 - x1"))
    # seeded generators give the same verdicts
    for seed in (1, 2, 3):
        assert coprime_probe(P("x0^3 + x1^3 + x0*x1"), P("x0^2 - 3*x1^2"), np.random.default_rng(seed))
        assert not coprime_probe(P("x0^2*x1 - x1^3"), P("x0 + x1"), np.random.default_rng(seed))
    assert poly_exact_divide(P("x0^2 - x1^2"), P("x0 - x1")) == P("x0 + x1")
    try:
        poly_exact_divide(P("x0^2 + x1^2"), P("x0 + x1"))
        raise AssertionError("inexact division accepted")
    except ValueError:
        pass
    print("✅ Coprimality check and division behave")


def test_exterior_power():
    print("\nTesting exterior powers...")
    A = IntMatrix.from_rows([[1, 1, 0], [0, 1, 1], [1, 0, 1]])
    assert exterior_power(A, 1) == A
    assert exterior_power(A, 0) == IntMatrix.from_rows([[1]])
    assert exterior_power(A, 3) == IntMatrix.from_rows([[2]])
    assert A.det() == 2
    wedge2 = exterior_power(A, 2)
    assert wedge2.n == 3
    rho = spectral_radius(wedge2, 1e-9)
    assert rho.lower <= 2 <= rho.upper
    try:
        exterior_power(A, 4)
        raise AssertionError("index 4 accepted for a 3x3 matrix")
    except IndexRangeError:
        pass
    print("✅ Minors match cofactor oracles")


def test_exterior_power_is_multiplicative():
    """Cauchy-Binet: wedge(AB) = wedge(A) wedge(B)."""
    print("\nTesting Cauchy-Binet on random matrices...")
    rng = np.random.default_rng(7)
    for _ in range(10):
        A = IntMatrix.from_rows(rng.integers(-3, 4, size=(4, 4)).tolist())
        B = IntMatrix.from_rows(rng.integers(-3, 4, size=(4, 4)).tolist())
        for i in range(5):
            assert exterior_power(A @ B, i) == exterior_power(A, i) @ exterior_power(B, i)
    print("✅ Exterior powers are multiplicative")


def test_integer_kernel():
    print("\nTesting integer kernels...")
    assert integer_kernel([[0, 0], [0, 0]], 2) != []
    assert len(integer_kernel([[0, 0], [0, 0]], 2)) == 2
    assert integer_kernel([[1, 2], [3, 1]], 2) == []
    basis = integer_kernel([[1, -1]], 2)
    assert basis == [(1, 1)]
    rows = [[2, 4, 6], [1, 2, 3]]
    for v in integer_kernel(rows, 3):
        assert all(sum(r[k] * v[k] for k in range(3)) == 0 for r in rows)
    print("✅ Kernel lattices are correct")


def test_spectral_radius():
    print("\nTesting spectral radius intervals...")
    ident = spectral_radius(IntMatrix.identity(3), 1e-9)
    assert ident.lower == 1 and ident.upper == 1

    cat = spectral_radius(IntMatrix.from_rows([[2, 1], [1, 1]]), 1e-9)
    assert cat.contains(GOLDEN_SQUARED, 1e-12)
    assert float(cat.width) <= 1e-9

    nil = spectral_radius(IntMatrix.from_rows([[0, 1], [0, 0]]), 1e-9)
    assert nil.upper == 0

    # complex pair of modulus sqrt(2): rotation-scaling matrix
    rot = spectral_radius(IntMatrix.from_rows([[1, -1], [1, 1]]), 1e-9)
    assert rot.contains(math.sqrt(2), 1e-12)
    print(f"✅ rho([[2,1],[1,1]]) in {cat}")


def test_spectral_radius_brackets_numpy():
    """Certified intervals contain the floating-point eigenvalue modulus."""
    print("\nTesting spectral intervals against numpy eigenvalues...")
    rng = np.random.default_rng(99)
    for _ in range(15):
        rows = rng.integers(-2, 3, size=(3, 3))
        rho = max(abs(np.linalg.eigvals(rows.astype(float))))
        interval = spectral_radius(IntMatrix.from_rows(rows.tolist()), 1e-9)
        assert interval.contains(rho, 1e-4), (rows.tolist(), rho, str(interval))
    print("✅ All intervals bracket the numeric radius")


def test_spectral_radius_complex_dominant():
    """Complex pairs on top of the spectrum are found through the pairwise-product polynomial."""
    print("\nTesting spectral radius with a dominant complex pair...")
    coeffs = charpoly_coefficients(IntMatrix.from_rows([[1, -2, 0], [1, 1, 0], [0, 0, 1]]))
    assert coeffs == (1, -3, 5, -3)
    assert charpoly_coefficients(companion(coeffs)) == coeffs

    # eigenvalues 1 +- i*sqrt(2) and 1
    top = spectral_radius(IntMatrix.from_rows([[1, -2, 0], [1, 1, 0], [0, 0, 1]]), 1e-9)
    assert top.contains(math.sqrt(3), 1e-12) and float(top.width) <= 1e-9

    rng = np.random.default_rng(4242)
    for n in (4, 6):
        for _ in range(6):
            rows = rng.integers(-2, 3, size=(n, n))
            rho = max(abs(np.linalg.eigvals(rows.astype(float))))
            interval = spectral_radius(IntMatrix.from_rows(rows.tolist()), 1e-9)
            assert interval.contains(rho, 1e-6), (rows.tolist(), rho, str(interval))
            assert float(interval.width) <= 1e-9
    print(f"✅ rho = sqrt(3) certified in {top}")


def test_root_bounds():
    print("\nTesting certified roots...")
    lo, hi = root_bounds(Fraction(8), 3)
    assert lo == hi == 2
    lo, hi = root_bounds(Fraction(2), 2)
    assert lo < math.sqrt(2) < hi
    assert hi - lo <= Fraction(1, 2**60)
    assert root_bounds(Fraction(0), 5) == (0, 0)
    print("✅ Root brackets are tight")


def main():
    """Run all tests."""
    print("=" * 50)
    print("Algebra - Exact Arithmetic Tests")
    print("=" * 50)

    tests = [
        test_poly_canonical_form,
        test_poly_mul,
        test_poly_compose,
        test_poly_compose_associative,
        test_poly_gcd,
        test_gcd_divides_both_random,
        test_coprime_check_and_exact_divide,
        test_exterior_power,
        test_exterior_power_is_multiplicative,
        test_integer_kernel,
        test_spectral_radius,
        test_spectral_radius_brackets_numpy,
        test_spectral_radius_complex_dominant,
        test_root_bounds,
    ]
    try:
        for test in tests:
            test()
        print("\n" + "=" * 50)
        print("✅ All tests passed!")
        print("=" * 50)
    except Exception as e:
        print(f"\n❌ Test failed with error: {e}")
        import traceback

        traceback.print_exc()
        sys.exit(1)


if __name__ == "__main__":
    main()
