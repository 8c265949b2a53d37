"""Certified enclosures of spectral radii of integer matrices.

Bounds are exact rationals. The Gelfand sandwich

    (|tr A^k| / n)^(1/k)  <=  rho(A)  <=  ||A^k||^(1/k)

is evaluated at k = 1, 2, 4, ... and, for n <= 6, refined from isolating
intervals of real roots: those of the characteristic polynomial and those
of the polynomial whose roots are the pairwise products of eigenvalues.
Results are cached by characteristic polynomial.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence, Tuple

import sympy
from sympy import ZZ, integer_nthroot
from sympy.polys.matrices import DomainMatrix

from orbitlab.algebra.matrix import IntMatrix, exterior_power
from orbitlab.errors import InvalidArgumentError

logger = logging.getLogger(__name__)

ROOT_SCALE_BITS = 64
MAX_GELFAND_SQUARINGS = 7  # k up to 128
ISOLATION_MAX_DIM = 6

_T = sympy.Symbol("t")


@dataclass(frozen=True)
class SpectralInterval:
    """lower <= rho <= upper, both exact rationals."""

    lower: Fraction
    upper: Fraction
    n_power: int = 0
    converged: bool = True
    method: str = "exact"

    @classmethod
    def exact(cls, value: int) -> "SpectralInterval":
        v = Fraction(value)
        return cls(v, v, 0, True, "exact")

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    @property
    def midpoint(self) -> float:
        return float((self.lower + self.upper) / 2)

    @property
    def is_exact(self) -> bool:
        return self.lower == self.upper

    def contains(self, value: float, slack: float = 0.0) -> bool:
        return float(self.lower) - slack <= value <= float(self.upper) + slack

    def overlaps(self, other: "SpectralInterval") -> bool:
        return self.lower <= other.upper and other.lower <= self.upper

    def power(self, m: int) -> "SpectralInterval":
        return SpectralInterval(
            self.lower**m, self.upper**m, self.n_power, self.converged, "power"
        )

    def divided_by(self, other: "SpectralInterval") -> "SpectralInterval":
        if other.lower <= 0:
            raise ZeroDivisionError("divisor interval touches zero")
        return SpectralInterval(
            self.lower / other.upper,
            self.upper / other.lower,
            max(self.n_power, other.n_power),
            self.converged and other.converged,
            "quotient",
        )

    def __str__(self) -> str:
        if self.is_exact:
            return f"{float(self.lower):.12g}"
        return f"[{float(self.lower):.12g}, {float(self.upper):.12g}]"


def root_bounds(value: Fraction, k: int) -> Tuple[Fraction, Fraction]:
    """Rational bracket of value**(1/k) with width 2**-ROOT_SCALE_BITS."""
    if value < 0:
        raise InvalidArgumentError("root of a negative number")
    if value == 0:
        return Fraction(0), Fraction(0)
    value = Fraction(value)
    scale = 1 << ROOT_SCALE_BITS
    q, r = divmod(value.numerator * scale**k, value.denominator)
    root, exact = integer_nthroot(q, k)
    root = int(root)
    lower = Fraction(root, scale)
    upper = lower if (exact and r == 0) else Fraction(root + 1, scale)
    return lower, upper


def _gelfand(A: IntMatrix, tol: Fraction) -> SpectralInterval:
    n = A.n
    lower, upper = Fraction(0), None
    power, k = A, 1
    for _ in range(MAX_GELFAND_SQUARINGS + 1):
        up = root_bounds(Fraction(power.max_row_sum()), k)[1]
        lo = root_bounds(Fraction(abs(power.trace()), n), k)[0]
        upper = up if upper is None else min(upper, up)
        lower = max(lower, lo)
        if upper - lower <= tol:
            return SpectralInterval(lower, upper, k, True, "gelfand")
        power, k = power @ power, 2 * k
    return SpectralInterval(lower, upper, k // 2, False, "gelfand")


def _to_fraction(x: sympy.Expr) -> Fraction:
    x = sympy.Rational(x)
    return Fraction(int(x.p), int(x.q))


def _abs_range(a: Fraction, b: Fraction) -> Tuple[Fraction, Fraction]:
    """Range of |t| for t in [a, b]."""
    a, b = min(a, b), max(a, b)
    if a <= 0 <= b:
        return Fraction(0), max(-a, b)
    return min(abs(a), abs(b)), max(abs(a), abs(b))


def charpoly_coefficients(A: IntMatrix) -> Tuple[int, ...]:
    """Monic characteristic polynomial of A, leading coefficient first."""
    dm = DomainMatrix([[ZZ(x) for x in row] for row in A.rows], (A.n, A.n), ZZ)
    return tuple(int(c) for c in dm.charpoly())


def companion(coeffs: Sequence[int]) -> IntMatrix:
    """Frobenius companion matrix of the monic polynomial with these coefficients."""
    d = len(coeffs) - 1
    return IntMatrix.from_rows(
        [
            [-coeffs[d - i] if j == d - 1 else int(j == i - 1) for j in range(d)]
            for i in range(d)
        ]
    )


def _largest_real_root(
    coeffs: Sequence[int], eps: Fraction, positive_only: bool = False
) -> Optional[Tuple[Fraction, Fraction]]:
    """Bracket of max |r| over the real roots r of the polynomial, or None.

    Roots are isolated once; only the intervals that can still hold the
    maximum are refined down to ``eps``.
    """
    poly = sympy.Poly(list(coeffs), _T)
    if poly.degree() < 1:
        return None
    poly = poly.sqf_part()
    boxes = []
    for (s, u), _mult in poly.intervals():
        s, u = _to_fraction(s), _to_fraction(u)
        if positive_only and u <= 0:
            continue
        boxes.append((s, u))
    if not boxes:
        return None
    floor = max(_abs_range(s, u)[0] for s, u in boxes)
    width = sympy.Rational(eps.numerator, eps.denominator)
    refined = []
    for s, u in boxes:
        if _abs_range(s, u)[1] >= floor and u - s > eps:
            s, u = poly.refine_root(
                sympy.Rational(s.numerator, s.denominator),
                sympy.Rational(u.numerator, u.denominator),
                eps=width,
            )
            s, u = _to_fraction(s), _to_fraction(u)
        refined.append(_abs_range(s, u))
    return max(lo for lo, _ in refined), max(hi for _, hi in refined)


@lru_cache(maxsize=4096)
def _radius_from_charpoly(coeffs: Tuple[int, ...], tol: Fraction) -> SpectralInterval:
    """rho from real roots only.

    The real roots give max |r|. Every complex pair z, conj(z) shows up as
    the real root |z|^2 of the pairwise-product polynomial charpoly(wedge^2 C),
    whose roots never exceed rho^2 in modulus.
    """
    real = _largest_real_root(coeffs, tol / 4)
    sq_lo = sq_hi = Fraction(0)
    if real is not None:
        sq_lo, sq_hi = real[0] ** 2, real[1] ** 2
    pair_coeffs = None
    if len(coeffs) > 2:
        pair_coeffs = charpoly_coefficients(exterior_power(companion(coeffs), 2))
    for eps in (tol / 4, tol * tol / 4):
        lo, hi = sq_lo, sq_hi
        pairs = _largest_real_root(pair_coeffs, eps, positive_only=True) if pair_coeffs else None
        if pairs is not None:
            lo, hi = max(lo, pairs[0]), max(hi, pairs[1])
        lower, upper = root_bounds(lo, 2)[0], root_bounds(hi, 2)[1]
        if upper - lower <= tol:
            break
    return SpectralInterval(lower, upper, 0, upper - lower <= tol, "isolation")


def _isolate(A: IntMatrix, tol: Fraction) -> SpectralInterval:
    return _radius_from_charpoly(charpoly_coefficients(A), tol)


@lru_cache(maxsize=2048)
def _spectral_radius_cached(A: IntMatrix, tol: Fraction) -> SpectralInterval:
    interval = _gelfand(A, tol)
    if interval.converged or A.n > ISOLATION_MAX_DIM:
        if not interval.converged:
            logger.warning(
                f"spectral radius of {A.n}x{A.n} matrix not converged: width {float(interval.width):.3g}"
            )
        return interval
    isolated = _isolate(A, tol)
    lower = max(interval.lower, isolated.lower)
    upper = min(interval.upper, isolated.upper)
    return SpectralInterval(
        lower, upper, interval.n_power, upper - lower <= tol, "gelfand+isolation"
    )


def spectral_radius(A: IntMatrix, tol: float) -> SpectralInterval:
    """Certified interval of width <= tol containing the spectral radius of A.

    Matrices larger than 6x6 get Gelfand bounds only; if those have not closed
    to ``tol`` after the iteration cap the widest certified interval is
    returned with ``converged=False``.
    """
    if tol <= 0:
        raise InvalidArgumentError("tolerance must be positive")
    if A.n == 0:
        return SpectralInterval.exact(0)
    return _spectral_radius_cached(A, Fraction(tol))
