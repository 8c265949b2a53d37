"""Monomial maps of the torus and their projective realizations.

Row j of the exponent matrix A holds the exponents of output coordinate j:

    x'_j = x_1^{A[j][1]} * ... * x_n^{A[j][n]}

so f_A o f_B = f_{AB}. On P^n the affine chart is x_i = X_i / X_n, i.e. the
extra coordinate is the last one.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

import sympy

from orbitlab.algebra.matrix import IntMatrix, integer_kernel
from orbitlab.algebra.polynomial import MultiPoly
from orbitlab.errors import (
    DimensionMismatchError,
    InvalidPointError,
    SingularMatrixError,
)
from orbitlab.maps.point import ProjPointQ
from orbitlab.maps.rational_map import RationalMapPn, reduce_map

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MonomialMap:
    """Dominant monomial map given by a nonsingular exponent matrix."""

    A: IntMatrix

    def __post_init__(self):
        if self.A.n == 0 or self.A.det() == 0:
            raise SingularMatrixError(f"exponent matrix {self.A} is singular")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "MonomialMap":
        return cls(IntMatrix.from_rows(rows))

    @property
    def n(self) -> int:
        return self.A.n

    def is_birational(self) -> bool:
        return monomial_is_birational(self.A)

    def to_rational(self) -> RationalMapPn:
        return monomial_to_rational(self.A)

    def __str__(self) -> str:
        return f"monomial{self.A}"


def homogenized_exponents(A: IntMatrix) -> List[Tuple[int, ...]]:
    n = A.n
    vectors = [tuple(A.rows[j]) + (-sum(A.rows[j]),) for j in range(n)]
    vectors.append((0,) * (n + 1))
    shift = [-min(v[k] for v in vectors) for k in range(n + 1)]
    return [tuple(a + s for a, s in zip(v, shift)) for v in vectors]


def monomial_to_rational(A: IntMatrix) -> RationalMapPn:
    """Minimal-degree homogenization of f_A on P^n."""
    if A.det() == 0:
        raise SingularMatrixError(f"exponent matrix {A} is singular")
    coords = [MultiPoly.monomial(exps) for exps in homogenized_exponents(A)]
    return reduce_map(coords)


def monomial_is_birational(A: IntMatrix) -> bool:
    return abs(A.det()) == 1


def monomial_inverse(A: IntMatrix) -> IntMatrix:
    """Integral inverse of a unimodular exponent matrix."""
    det = A.det()
    if abs(det) != 1:
        raise SingularMatrixError(f"det {det}: inverse of {A} is not integral")
    adj = A.to_sympy().adjugate()
    return IntMatrix.from_rows([[int(x) * det for x in adj.row(i)] for i in range(A.n)])


def invariant_monomials(A: IntMatrix) -> List[Tuple[int, ...]]:
    """Lattice basis of {v : A^T v = v}; x^v o f_A = x^(A^T v)."""
    shifted = A.transpose() - IntMatrix.identity(A.n)
    return integer_kernel(shifted.rows, A.n)


Rational = Union[int, Fraction, str]


@dataclass(frozen=True)
class TorusPoint:
    """Point of the torus (Q^*)^n stored as signs and prime exponents.

    ``exponents[i][k]`` is the exponent of ``primes[k]`` in coordinate i.
    """

    primes: Tuple[int, ...]
    exponents: Tuple[Tuple[int, ...], ...]
    signs: Tuple[int, ...]

    @classmethod
    def from_rationals(cls, values: Sequence[Rational]) -> "TorusPoint":
        fracs = [Fraction(v) for v in values]
        if any(f == 0 for f in fracs):
            raise InvalidPointError(f"torus point has a zero coordinate: {list(map(str, fracs))}")
        factored = []
        for f in fracs:
            num = sympy.factorint(abs(f.numerator))
            den = sympy.factorint(f.denominator)
            exps = {int(p): int(e) for p, e in num.items()}
            for p, e in den.items():
                exps[int(p)] = exps.get(int(p), 0) - int(e)
            factored.append(exps)
        primes = tuple(sorted({p for exps in factored for p in exps}))
        return cls(
            primes,
            tuple(tuple(exps.get(p, 0) for p in primes) for exps in factored),
            tuple(1 if f > 0 else -1 for f in fracs),
        )

    @property
    def n(self) -> int:
        return len(self.signs)

    def image(self, A: IntMatrix) -> "TorusPoint":
        if A.n != self.n:
            raise DimensionMismatchError(f"{A.n}x{A.n} matrix on a torus point of dimension {self.n}")
        negative = [i for i, s in enumerate(self.signs) if s < 0]
        exponents = tuple(
            tuple(
                sum(A.rows[j][i] * self.exponents[i][k] for i in range(self.n))
                for k in range(len(self.primes))
            )
            for j in range(self.n)
        )
        signs = tuple(-1 if sum(A.rows[j][i] for i in negative) % 2 else 1 for j in range(self.n))
        return TorusPoint(self.primes, exponents, signs)

    def values(self) -> Tuple[Fraction, ...]:
        out = []
        for sign, exps in zip(self.signs, self.exponents):
            value = Fraction(sign)
            for p, e in zip(self.primes, exps):
                if e:
                    value *= Fraction(p) ** e
            out.append(value)
        return tuple(out)

    def to_projective(self) -> ProjPointQ:
        return ProjPointQ.normalized(list(self.values()) + [1])

    def residues(self, modulus: int) -> Optional[Tuple[int, ...]]:
        """Affine coordinates mod a prime, None if a prime of the support is the modulus."""
        if modulus in self.primes:
            return None
        out = []
        for sign, exps in zip(self.signs, self.exponents):
            r = sign % modulus
            for p, e in zip(self.primes, exps):
                if e:
                    r = r * pow(p, e, modulus) % modulus
            out.append(r)
        return tuple(out)

    def exponent_bits(self) -> float:
        """Rough size of the largest coordinate in bits."""
        return max(
            (sum(abs(e) * math.log2(p) for p, e in zip(self.primes, exps)) for exps in self.exponents),
            default=0.0,
        )
