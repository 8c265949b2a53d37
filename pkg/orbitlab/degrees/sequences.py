"""Degree sequences of iterates and the first dynamical degree they bound."""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from orbitlab.algebra.matrix import IntMatrix
from orbitlab.algebra.spectral import SpectralInterval, root_bounds
from orbitlab.errors import InvalidArgumentError, TooShortRecordError
from orbitlab.maps.monomial import homogenized_exponents
from orbitlab.maps.rational_map import RationalMapPn, compose

logger = logging.getLogger(__name__)

DEFAULT_TERM_CAP = 200_000


def term_cap_from_env() -> int:
    return int(os.getenv("ORBITLAB_TERM_CAP", DEFAULT_TERM_CAP))


@dataclass(frozen=True)
class DegreeSequence:
    """d_0 = 1, d_1, ..., d_N of the reduced iterates."""

    degs: Tuple[int, ...]
    truncated: bool = False
    term_counts: Tuple[int, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if not self.degs or self.degs[0] != 1:
            raise InvalidArgumentError("a degree sequence starts with d_0 = 1")

    @property
    def horizon(self) -> int:
        return len(self.degs) - 1

    def submultiplicativity_violations(self) -> List[Tuple[int, int]]:
        """Pairs (m, n) with d_{m+n} > d_m * d_n; empty for every valid sequence."""
        d = self.degs
        return [
            (m, n)
            for m in range(1, len(d))
            for n in range(m, len(d) - m)
            if d[m + n] > d[m] * d[n]
        ]


def degree_sequence(f: RationalMapPn, N: int, term_cap: Optional[int] = None) -> DegreeSequence:
    """Degrees of f, f^2, ..., f^N.

    Stops early, returning the prefix with ``truncated=True``, once an
    iterate has more than ``term_cap`` terms (default: ``ORBITLAB_TERM_CAP``).
    """
    if N < 1:
        raise InvalidArgumentError("horizon must be at least 1")
    cap = term_cap if term_cap is not None else term_cap_from_env()
    degs, counts = [1, f.degree], [f.n + 1, f.term_count()]
    iterate = f
    for n in range(2, N + 1):
        if counts[-1] > cap:
            logger.warning(f"term cap {cap} exceeded at n={n - 1}; returning prefix")
            return DegreeSequence(tuple(degs), True, tuple(counts))
        iterate = compose(f, iterate)
        degs.append(iterate.degree)
        counts.append(iterate.term_count())
    logger.debug(f"degree sequence to n={N}: {degs}")
    return DegreeSequence(tuple(degs), False, tuple(counts))


def monomial_degree_sequence(A: IntMatrix, N: int) -> DegreeSequence:
    """Degrees of the homogenized A^n, straight from the matrix powers."""
    if N < 1:
        raise InvalidArgumentError("horizon must be at least 1")
    degs = [1]
    power = IntMatrix.identity(A.n)
    for _ in range(N):
        power = power @ A
        degs.append(sum(homogenized_exponents(power)[-1]))
    return DegreeSequence(tuple(degs))


@dataclass(frozen=True)
class DynDegReport:
    """lower <= lambda_i <= upper.

    For ``exact-monomial`` both bounds are certified. For ``sequence-limit``
    only ``upper`` is (Fekete); ``lower`` is the heuristic estimate.
    """

    i: int
    lower: float
    upper: float
    estimate: float
    method: str
    interval: Optional[SpectralInterval] = None

    @property
    def certified(self) -> bool:
        return self.method == "exact-monomial"


def lambda1_estimate(seq: DegreeSequence) -> DynDegReport:
    d = seq.degs
    if len(d) < 3:
        raise TooShortRecordError("lambda_1 estimate needs d_0, d_1, d_2 at least")
    upper = min(root_bounds(Fraction(d[n]), n)[1] for n in range(1, len(d)))
    tail = max(1, (len(d) - 1) // 3)
    start = len(d) - 1 - tail
    # geometric mean of d_{n+1}/d_n over the tail telescopes
    estimate = (d[-1] / d[start]) ** (1.0 / tail)
    estimate = min(max(estimate, 1.0), float(upper))
    return DynDegReport(1, estimate, float(upper), estimate, "sequence-limit")
