"""Return sets {n : f^n(x) in V(w)} and their progression decomposition."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import List, Set, Tuple

from orbitlab.algebra.polynomial import MultiPoly
from orbitlab.errors import (
    DimensionMismatchError,
    InvalidArgumentError,
    NotHomogeneousError,
    PointsElidedError,
)
from orbitlab.orbits.records import OrbitRecord

logger = logging.getLogger(__name__)

MIN_PROGRESSION_LENGTH = 3


@dataclass(frozen=True)
class Progression:
    start: int
    step: int

    def __str__(self) -> str:
        return f"{{{self.start} + {self.step}k}}"


@dataclass
class ReturnSetAnalysis:
    horizon: int
    members: List[int]
    progressions: List[Progression] = field(default_factory=list)
    finite_part: List[int] = field(default_factory=list)
    consistent: bool = True

    def to_dict(self) -> dict:
        return {
            "horizon": self.horizon,
            "members": self.members,
            "progressions": [[p.start, p.step] for p in self.progressions],
            "finite_part": self.finite_part,
            "consistent": self.consistent,
        }


def extract_progressions(members: Set[int], horizon: int) -> Tuple[List[Progression], List[int]]:
    """Greedy decomposition into progressions that run out to the horizon.

    The longest progression {a, a+r, ...} <= horizon fully contained in the
    set is taken first (ties: smaller start, then smaller step); at least
    MIN_PROGRESSION_LENGTH terms are required. Whatever is left over is the
    finite part.
    """
    remaining = set(members)
    progressions: List[Progression] = []
    while remaining:
        best = None
        for a in sorted(remaining):
            for r in range(1, horizon - a + 1):
                terms = range(a, horizon + 1, r)
                if len(terms) < MIN_PROGRESSION_LENGTH:
                    break
                if all(t in members for t in terms):
                    key = (len(terms), -a, -r)
                    if best is None or key > best[0]:
                        best = (key, Progression(a, r), terms)
        if best is None:
            break
        progressions.append(best[1])
        remaining.difference_update(best[2])
    return progressions, sorted(remaining)


def return_set(rec: OrbitRecord, w: MultiPoly) -> ReturnSetAnalysis:
    if rec.points is None:
        raise PointsElidedError("return sets need the orbit points; rerun on the general path")
    if w.is_zero():
        raise InvalidArgumentError("w = 0 vanishes everywhere")
    if not w.is_homogeneous():
        raise NotHomogeneousError(f"{w} is not homogeneous")
    if w.nvars != len(rec.seed.coords):
        raise DimensionMismatchError(f"{w} is not a form on P^{len(rec.seed.coords) - 1}")

    length = rec.unrolled_length()
    horizon = length - 1
    members = [n for n in range(length) if w.evaluate(rec.point_at(n).coords) == 0]
    progressions, finite = extract_progressions(set(members), horizon)
    cutoff = horizon - horizon // 3
    consistent = all(n < cutoff for n in finite)
    if not consistent:
        logger.info(f"return set of {rec.map_id} has unexplained members near the horizon: {finite}")
    return ReturnSetAnalysis(horizon, members, progressions, finite, consistent)
