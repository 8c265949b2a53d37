"""Rational points of projective space with a canonical integer representative."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Sequence, Tuple, Union

from orbitlab.errors import InvalidPointError

Number = Union[int, Fraction, str]


@dataclass(frozen=True)
class ProjPointQ:
    """Point of P^n(Q): coprime integers, first nonzero coordinate positive."""

    coords: Tuple[int, ...]

    @classmethod
    def normalized(cls, values: Sequence[Number]) -> "ProjPointQ":
        fracs = [Fraction(v) for v in values]
        if not fracs or all(f == 0 for f in fracs):
            raise InvalidPointError("all coordinates are zero")
        denom = reduce(lambda a, b: a * b // math.gcd(a, b), (f.denominator for f in fracs), 1)
        ints = [int(f * denom) for f in fracs]
        g = reduce(math.gcd, ints, 0)
        ints = [x // g for x in ints]
        if next(x for x in ints if x != 0) < 0:
            ints = [-x for x in ints]
        return cls(tuple(ints))

    @property
    def n(self) -> int:
        return len(self.coords) - 1

    def max_abs(self) -> int:
        return max(abs(x) for x in self.coords)

    def bit_size(self) -> int:
        return self.max_abs().bit_length()

    def __str__(self) -> str:
        return "[" + ":".join(str(x) for x in self.coords) + "]"
