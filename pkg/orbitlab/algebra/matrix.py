"""Square integer matrices: exact products, exterior powers, integer kernels."""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Sequence, Tuple

import sympy

from orbitlab.errors import DimensionMismatchError, IndexRangeError

logger = logging.getLogger(__name__)

Row = Tuple[int, ...]


@dataclass(frozen=True)
class IntMatrix:
    """An n x n matrix of arbitrary-precision integers."""

    rows: Tuple[Row, ...]

    def __post_init__(self):
        n = len(self.rows)
        if any(len(r) != n for r in self.rows):
            raise DimensionMismatchError(f"matrix is not square: {self.rows}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntMatrix":
        return cls(tuple(tuple(int(x) for x in r) for r in rows))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, index: Tuple[int, int]) -> int:
        i, j = index
        return self.rows[i][j]

    def to_list(self) -> List[List[int]]:
        return [list(r) for r in self.rows]

    def to_sympy(self) -> sympy.Matrix:
        return sympy.Matrix(self.to_list())

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(zip(*self.rows)) if self.rows else ())

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.n != other.n:
            raise DimensionMismatchError(f"cannot multiply {self.n}x{self.n} by {other.n}x{other.n}")
        cols = list(zip(*other.rows))
        return IntMatrix(
            tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.rows)
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        if self.n != other.n:
            raise DimensionMismatchError("matrix sizes differ")
        return IntMatrix(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows))
        )

    def __pow__(self, k: int) -> "IntMatrix":
        if k < 0:
            raise ValueError("negative matrix power")
        result = IntMatrix.identity(self.n)
        base = self
        while k:
            if k & 1:
                result = result @ base
            k >>= 1
            if k:
                base = base @ base
        return result

    def trace(self) -> int:
        return sum(self.rows[i][i] for i in range(self.n))

    def max_row_sum(self) -> int:
        """Induced infinity norm (submultiplicative)."""
        return max((sum(abs(x) for x in r) for r in self.rows), default=0)

    def det(self) -> int:
        return _det(self.rows)

    def minor(self, rows: Sequence[int], cols: Sequence[int]) -> int:
        return _det(tuple(tuple(self.rows[i][j] for j in cols) for i in rows))

    def __str__(self) -> str:
        return str(self.to_list())


@lru_cache(maxsize=4096)
def _det(rows: Tuple[Row, ...]) -> int:
    if not rows:
        return 1
    if len(rows) == 1:
        return rows[0][0]
    if len(rows) == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    return int(sympy.Matrix([list(r) for r in rows]).det(method="bareiss"))


def exterior_power(A: IntMatrix, i: int) -> IntMatrix:
    """The i-th exterior power: i x i minors indexed by lexicographic subsets."""
    if not 0 <= i <= A.n:
        raise IndexRangeError(f"exterior power index {i} outside 0..{A.n}")
    subsets = list(itertools.combinations(range(A.n), i))
    return IntMatrix(tuple(tuple(A.minor(r, c) for c in subsets) for r in subsets))


def integer_kernel(rows: Sequence[Sequence[int]], ncols: int) -> List[Tuple[int, ...]]:
    """Basis of the integer lattice {v in Z^ncols : M v = 0}.

    Unimodular column operations bring M to column echelon form while the same
    operations are applied to an identity matrix U; the columns of U that end
    up opposite zero columns of M U span the kernel lattice.
    """
    m = [list(r) for r in rows]
    u = [[int(i == j) for j in range(ncols)] for i in range(ncols)]

    def col_axpy(dst: int, src: int, q: int) -> None:
        for mat in (m, u):
            for r in mat:
                r[dst] -= q * r[src]

    def col_swap(a: int, b: int) -> None:
        for mat in (m, u):
            for r in mat:
                r[a], r[b] = r[b], r[a]

    pivot = 0
    for row in m:
        if pivot >= ncols:
            break
        while True:
            nonzero = [c for c in range(pivot, ncols) if row[c] != 0]
            if len(nonzero) <= 1:
                break
            smallest = min(nonzero, key=lambda c: abs(row[c]))
            for c in nonzero:
                if c != smallest:
                    col_axpy(c, smallest, row[c] // row[smallest])
        if nonzero:
            col_swap(pivot, nonzero[0])
            pivot += 1

    basis = []
    for c in range(pivot, ncols):
        vec = [u[r][c] for r in range(ncols)]
        first = next((x for x in vec if x != 0), 0)
        if first < 0:
            vec = [-x for x in vec]
        basis.append(tuple(vec))
    return basis
