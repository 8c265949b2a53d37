"""Weil heights of rational points, natural-log scale.

The clamped value max(1, h) is what the arithmetic degree is built from;
``log_clamped`` keeps log max(1, h) so that heights too large for a float
still contribute finite logarithms.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import mpmath

from orbitlab.algebra.matrix import IntMatrix
from orbitlab.errors import Indeterminate, InvalidArgumentError
from orbitlab.maps.monomial import TorusPoint
from orbitlab.maps.point import ProjPointQ
from orbitlab.maps.rational_map import RationalMapPn, evaluate

logger = logging.getLogger(__name__)

mpmath.mp.dps = 40


@dataclass(frozen=True)
class HeightValue:
    h: float
    log_clamped: float

    @classmethod
    def from_mpf(cls, value) -> "HeightValue":
        value = mpmath.mpf(value)
        log_clamped = float(mpmath.log(value)) if value > 1 else 0.0
        return cls(float(value), log_clamped)

    @property
    def clamped(self) -> float:
        return max(1.0, self.h)


@dataclass(frozen=True)
class HeightSeries:
    """Heights of x, f(x), ... with the step at which iteration stopped early."""

    values: Tuple[HeightValue, ...]
    truncated_at: Optional[int] = None

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, index: int) -> HeightValue:
        return self.values[index]

    def h(self) -> List[float]:
        return [v.h for v in self.values]


def weil_height(p: ProjPointQ) -> HeightValue:
    """log max |coordinate| of the normalized representative."""
    m = p.max_abs()
    if m <= 1:
        return HeightValue(0.0, 0.0)
    return HeightValue.from_mpf(mpmath.log(mpmath.mpf(m)))


def torus_height(point: TorusPoint) -> HeightValue:
    """Height of [x_1 : ... : x_n : 1] read off the prime exponents.

    Finite places contribute log p * max(0, -min_i e_ip) (the coordinate 1
    has exponent 0); the archimedean place contributes
    max(0, max_i sum_p e_ip log p).
    """
    logs = [mpmath.log(p) for p in point.primes]
    finite = mpmath.mpf(0)
    for k, lp in enumerate(logs):
        lowest = min(exps[k] for exps in point.exponents)
        if lowest < 0:
            finite += -lowest * lp
    archimedean = max(
        (mpmath.fsum(e * lp for e, lp in zip(exps, logs)) for exps in point.exponents),
        default=mpmath.mpf(0),
    )
    return HeightValue.from_mpf(finite + max(mpmath.mpf(0), archimedean))


def orbit_heights(f: RationalMapPn, x: ProjPointQ, N: int) -> HeightSeries:
    """Heights of x, f(x), ..., f^N(x), stopping at indeterminacy."""
    if N < 0:
        raise InvalidArgumentError("horizon must be nonnegative")
    values = [weil_height(x)]
    point = x
    for step in range(N):
        try:
            point = evaluate(f, point)
        except Indeterminate:
            logger.warning(f"orbit of {x} meets the indeterminacy locus at step {step}")
            return HeightSeries(tuple(values), truncated_at=step)
        values.append(weil_height(point))
    return HeightSeries(tuple(values))


def monomial_orbit_heights(A: IntMatrix, x: Sequence, N: int) -> HeightSeries:
    """Fast path: heights of a torus orbit from exponent vectors only."""
    if N < 1:
        raise InvalidArgumentError("horizon must be at least 1")
    point = TorusPoint.from_rationals(x)
    values = [torus_height(point)]
    for _ in range(N):
        point = point.image(A)
        values.append(torus_height(point))
    return HeightSeries(tuple(values))
