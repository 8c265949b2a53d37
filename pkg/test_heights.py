"""Tests for Weil heights of points and along orbits."""

import math
import sys

import numpy as np

from orbitlab.algebra import IntMatrix
from orbitlab.errors import InvalidArgumentError
from orbitlab.heights import monomial_orbit_heights, orbit_heights, torus_height, weil_height
from orbitlab.maps import (
    ProjPointQ,
    TorusPoint,
    cremona,
    evaluate,
    monomial_to_rational,
    parse_map_description,
    power_map,
)
from orbitlab.orbits.search import projective_seed_sampler, random_unimodular

LOG2 = math.log(2)


def close(a: float, b: float, tol: float = 1e-9) -> bool:
    return abs(a - b) <= tol * max(1.0, abs(b))


def test_weil_height():
    print("Testing weil_height...")
    assert close(weil_height(ProjPointQ.normalized([1, 2])).h, LOG2)
    assert close(weil_height(ProjPointQ.normalized([3, 6, 9])).h, math.log(3))
    assert weil_height(ProjPointQ.normalized([1, 0, 0])).h == 0.0
    assert weil_height(ProjPointQ.normalized([-1, 1, 0])).h == 0.0
    huge = weil_height(ProjPointQ.normalized([1, 10**400]))
    assert close(huge.h, 400 * math.log(10))
    print("✅ h([1:2]) = log 2 and normalization is applied")


def test_height_value_clamping():
    print("\nTesting clamped heights...")
    small = weil_height(ProjPointQ.normalized([1, 2]))
    assert small.clamped == 1.0 and small.log_clamped == 0.0
    big = weil_height(ProjPointQ.normalized([1, 10**50]))
    assert close(big.log_clamped, math.log(50 * math.log(10)))
    print("✅ log max(1, h) is tracked")


def test_orbit_heights_power_map():
    print("\nTesting orbit heights of (x^2:y^2)...")
    series = orbit_heights(power_map(1, 2), ProjPointQ.normalized([2, 1]), 10)
    assert len(series) == 11
    assert series.truncated_at is None
    for n, value in enumerate(series.values):
        assert close(value.h, 2**n * LOG2), (n, value.h)
    print("✅ h_n = 2^n log 2")


def test_orbit_heights_fixed_point_and_indeterminacy():
    print("\nTesting fixed points and indeterminacy...")
    sigma = cremona(2)
    fixed = orbit_heights(sigma, ProjPointQ.normalized([1, 1, 1]), 6)
    assert fixed.h() == [0.0] * 7

    # sigma([1:-1:0]) = [0:0:1], which lies in the indeterminacy locus
    stopped = orbit_heights(sigma, ProjPointQ.normalized([1, -1, 0]), 6)
    assert stopped.truncated_at == 1
    assert len(stopped) == 2
    try:
        orbit_heights(sigma, ProjPointQ.normalized([1, 1, 1]), -1)
        raise AssertionError("negative horizon accepted")
    except InvalidArgumentError:
        pass
    print("✅ Fixed points stay at height 0, indeterminacy truncates")


def test_height_functoriality():
    """For a morphism of degree d, h(f(x)) - d*h(x) stays in a fixed band."""
    print("\nTesting |h(f(x)) - d h(x)| <= C_f on 1000 random points...")
    f = parse_map_description(
        {"kind": "homogeneous", "n": 2, "coords": ["x0^2 + x1*x2", "x1^2 - x0*x2", "x2^2"]}
    )
    # |x0^2 + x1*x2| <= 2 max^2 above; below, some coordinate keeps max^2 / 4
    low, high = -math.log(4), LOG2
    square = power_map(2, 2)
    rng = np.random.default_rng(1000)
    worst_power = 0.0
    for p in projective_seed_sampler(rng, 2, 1000, bound=60):
        h = weil_height(p).h
        gap = weil_height(evaluate(f, p)).h - 2 * h
        assert low - 1e-9 <= gap <= high + 1e-9, (p, gap)
        worst_power = max(worst_power, abs(weil_height(evaluate(square, p)).h - 2 * h))
    assert worst_power <= 1e-9
    print(f"✅ Gaps stay in [{low:.4f}, {high:.4f}]; power map gap {worst_power:.2g}")


def test_torus_height():
    print("\nTesting torus heights...")
    assert torus_height(TorusPoint.from_rationals([1, 1])).h == 0.0
    # [2/3 : 5 : 1] = [2 : 15 : 3]
    value = torus_height(TorusPoint.from_rationals(["2/3", 5]))
    assert close(value.h, math.log(15))
    value = torus_height(TorusPoint.from_rationals(["-1/4", "1/6"]))
    # [-1/4 : 1/6 : 1] = [-3 : 2 : 12]
    assert close(value.h, math.log(12))
    print("✅ Prime-exponent heights match coordinate heights")


def test_monomial_orbit_heights_matches_general_path():
    print("\nTesting fast path against evaluate-based heights...")
    A = IntMatrix.from_rows([[2, 1], [1, 1]])
    fast = monomial_orbit_heights(A, (2, 3), 12)
    slow = orbit_heights(monomial_to_rational(A), ProjPointQ.normalized([2, 3, 1]), 12)
    assert len(fast) == len(slow) == 13
    for a, b in zip(fast.h(), slow.h()):
        assert close(a, b), (a, b)

    rng = np.random.default_rng(2024)
    for _ in range(10):
        B = random_unimodular(rng, 2, steps=2, bound=1)
        seed = tuple(int(v) for v in rng.choice([-7, -3, -2, 2, 3, 5], size=2))
        fast = monomial_orbit_heights(B, seed, 12)
        slow = orbit_heights(monomial_to_rational(B), ProjPointQ.normalized(list(seed) + [1]), 12)
        for n, (a, b) in enumerate(zip(fast.h(), slow.h())):
            assert close(a, b), (B, seed, n, a, b)
    print("✅ Both height pipelines agree on 11 maps")


def test_monomial_orbit_heights_edge_cases():
    print("\nTesting fast-path edge cases...")
    ident = monomial_orbit_heights(IntMatrix.identity(2), (2, 3), 5)
    assert len(set(ident.h())) == 1
    ones = monomial_orbit_heights(IntMatrix.from_rows([[2, 1], [1, 1]]), (1, 1), 5)
    assert ones.h() == [0.0] * 6
    # signs survive: (-1, 1) is not fixed but has height 0
    signed = monomial_orbit_heights(IntMatrix.from_rows([[2, 1], [1, 1]]), (-1, 1), 5)
    assert signed.h() == [0.0] * 6
    try:
        monomial_orbit_heights(IntMatrix.identity(2), (2, 3), 0)
        raise AssertionError("horizon 0 accepted")
    except InvalidArgumentError:
        pass
    print("✅ Identity and unit points behave")


def main():
    """Run all tests."""
    print("=" * 50)
    print("Heights - Weil Height Tests")
    print("=" * 50)

    tests = [
        test_weil_height,
        test_height_value_clamping,
        test_orbit_heights_power_map,
        test_orbit_heights_fixed_point_and_indeterminacy,
        test_height_functoriality,
        test_torus_height,
        test_monomial_orbit_heights_matches_general_path,
        test_monomial_orbit_heights_edge_cases,
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
