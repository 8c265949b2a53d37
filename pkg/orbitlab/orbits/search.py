"""Seed samplers and the search for orbits of near-maximal arithmetic degree."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, List, Tuple

import numpy as np

from orbitlab.algebra.matrix import IntMatrix
from orbitlab.degrees.sequences import DynDegReport
from orbitlab.errors import InvalidArgumentError, OrbitLabError
from orbitlab.maps.point import ProjPointQ
from orbitlab.orbits.alpha import AlphaEstimate, alpha_estimate
from orbitlab.orbits.records import COMPLETE, PERIODIC, OrbitRecord

logger = logging.getLogger(__name__)


def torus_seed_sampler(rng: np.random.Generator, n: int, count: int, bound: int = 9) -> Iterator[Tuple[int, ...]]:
    """Integer torus points with coordinates in [-bound, bound] \\ {0}."""
    for _ in range(count):
        mags = rng.integers(1, bound + 1, size=n)
        signs = rng.choice([-1, 1], size=n)
        yield tuple(int(s * m) for s, m in zip(signs, mags))


def projective_seed_sampler(
    rng: np.random.Generator, n: int, count: int, bound: int = 9
) -> Iterator[ProjPointQ]:
    """Points of P^n(Q) with coordinates in [-bound, bound], not all zero."""
    produced = 0
    while produced < count:
        coords = rng.integers(-bound, bound + 1, size=n + 1)
        if not coords.any():
            continue
        produced += 1
        yield ProjPointQ.normalized([int(c) for c in coords])


def random_matrix(rng: np.random.Generator, n: int, low: int = -3, high: int = 3) -> IntMatrix:
    return IntMatrix.from_rows(rng.integers(low, high + 1, size=(n, n)).tolist())


def random_unimodular(rng: np.random.Generator, n: int, steps: int = 6, bound: int = 1) -> IntMatrix:
    """A product of random elementary matrices and a signed permutation (det = +-1)."""
    rows = np.eye(n, dtype=object)
    for _ in range(steps):
        i, j = rng.choice(n, size=2, replace=False)
        q = int(rng.integers(1, bound + 1)) * int(rng.choice([-1, 1]))
        rows[i] = rows[i] + q * rows[j]
    perm = rng.permutation(n)
    signs = rng.choice([-1, 1], size=n)
    rows = np.array([rows[int(p)] * int(s) for p, s in zip(perm, signs)], dtype=object)
    return IntMatrix.from_rows(rows.tolist())


@dataclass
class SearchResult:
    threshold: float
    ranked: List[Tuple[OrbitRecord, AlphaEstimate]] = field(default_factory=list)
    rejected: int = 0

    @property
    def hits(self) -> List[Tuple[OrbitRecord, AlphaEstimate]]:
        return [(r, a) for r, a in self.ranked if a.slope_estimate >= self.threshold]


def high_alpha_search(
    orbit_fn: Callable[[object, int], OrbitRecord],
    seeds: Iterable,
    N: int,
    eps: float,
    lam1: DynDegReport,
) -> SearchResult:
    """Rank seeds by slope estimate; hits reach (1 - eps) * upper(lambda_1).

    Complete and periodic orbits are ranked (periodic ones have alpha = 1);
    indeterminate, truncated or too-short orbits are counted as rejected.
    """
    if eps <= 0:
        raise InvalidArgumentError("eps must be positive")
    result = SearchResult((1 - eps) * lam1.upper)
    for seed in seeds:
        try:
            rec = orbit_fn(seed, N)
            if rec.status.kind not in (COMPLETE, PERIODIC):
                result.rejected += 1
                continue
            result.ranked.append((rec, alpha_estimate(rec)))
        except OrbitLabError as e:
            logger.debug(f"seed {seed} rejected: {e}")
            result.rejected += 1
    result.ranked.sort(key=lambda item: -item[1].slope_estimate)
    if not result.hits:
        logger.info(f"no seed reached alpha >= {result.threshold:.6g}")
    return result
