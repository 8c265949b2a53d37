"""Orbit iteration on P^n(Q) and on the torus, with termination status."""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple, Union

from orbitlab.algebra.matrix import IntMatrix
from orbitlab.errors import Indeterminate, InvalidArgumentError
from orbitlab.heights.weil import HeightValue, torus_height, weil_height
from orbitlab.maps.monomial import TorusPoint
from orbitlab.maps.point import ProjPointQ
from orbitlab.maps.rational_map import RationalMapPn, evaluate

logger = logging.getLogger(__name__)

DEFAULT_BIT_CAP = 2**20

COMPLETE = "complete"
INDETERMINATE = "indeterminate"
PERIODIC = "periodic"
TRUNCATED = "truncated"


def bit_cap_from_env() -> int:
    return int(os.getenv("ORBITLAB_BIT_CAP", DEFAULT_BIT_CAP))


@dataclass(frozen=True)
class OrbitStatus:
    kind: str
    step: Optional[int] = None
    period: Optional[int] = None
    preperiod: Optional[int] = None

    @classmethod
    def complete(cls) -> "OrbitStatus":
        return cls(COMPLETE)

    @classmethod
    def indeterminate_at(cls, k: int) -> "OrbitStatus":
        return cls(INDETERMINATE, step=k)

    @classmethod
    def periodic(cls, period: int, preperiod: int) -> "OrbitStatus":
        return cls(PERIODIC, period=period, preperiod=preperiod)

    @classmethod
    def truncated_at(cls, k: int) -> "OrbitStatus":
        return cls(TRUNCATED, step=k)

    def __str__(self) -> str:
        if self.kind == PERIODIC:
            return f"periodic({self.period}, {self.preperiod})"
        if self.kind in (INDETERMINATE, TRUNCATED):
            return f"{self.kind}-at({self.step})"
        return self.kind


Seed = Union[ProjPointQ, TorusPoint]


@dataclass(frozen=True)
class OrbitRecord:
    """x, f(x), ... up to the first stop.

    ``points``/``torus_points`` hold the distinct iterates that were computed;
    for a periodic record the cycle is points[preperiod:]. General-path records
    keep ``points``; fast-path records keep only ``torus_points``.
    """

    map_id: str
    seed: Seed
    heights: Tuple[HeightValue, ...]
    status: OrbitStatus
    horizon: int
    points: Optional[Tuple[ProjPointQ, ...]] = None
    torus_points: Optional[Tuple[TorusPoint, ...]] = None

    def __len__(self) -> int:
        return len(self.heights)

    @property
    def is_periodic(self) -> bool:
        return self.status.kind == PERIODIC

    def _unrolled_index(self, n: int) -> int:
        if not self.is_periodic or n < len(self.heights):
            return n
        q, p = self.status.preperiod, self.status.period
        return q + (n - q) % p

    def height_at(self, n: int) -> HeightValue:
        return self.heights[self._unrolled_index(n)]

    def point_at(self, n: int) -> ProjPointQ:
        index = self._unrolled_index(n)
        if self.points is not None:
            return self.points[index]
        return self.torus_points[index].to_projective()

    def unrolled_length(self) -> int:
        """Entries available once a cycle is repeated out to the horizon."""
        if self.is_periodic:
            return self.horizon + 1
        return len(self.heights)

    def unrolled_heights(self) -> Tuple[HeightValue, ...]:
        return tuple(self.height_at(n) for n in range(self.unrolled_length()))

    def dropped(self, k: int) -> "OrbitRecord":
        """The record of f^k(x): first k entries removed."""
        if not 0 <= k < len(self.heights):
            raise InvalidArgumentError(f"cannot drop {k} of {len(self.heights)} entries")
        status = self.status
        indices = range(k, len(self.heights))
        if status.kind == PERIODIC:
            status = OrbitStatus.periodic(status.period, max(0, status.preperiod - k))
            indices = [self._unrolled_index(k + j) for j in range(status.preperiod + status.period)]
        elif status.step is not None:
            status = OrbitStatus(status.kind, step=status.step - k)
        points = None if self.points is None else tuple(self.points[i] for i in indices)
        torus = None if self.torus_points is None else tuple(self.torus_points[i] for i in indices)
        return OrbitRecord(
            self.map_id,
            points[0] if points is not None else torus[0],
            tuple(self.heights[i] for i in indices),
            status,
            self.horizon - k,
            points,
            torus,
        )


def iterate_orbit(
    f: RationalMapPn,
    x: ProjPointQ,
    N: int,
    map_id: str = "",
    bit_cap: Optional[int] = None,
) -> OrbitRecord:
    """General path: exact evaluation with cycle detection by point hashing."""
    if N < 1:
        raise InvalidArgumentError("horizon must be at least 1")
    cap = bit_cap if bit_cap is not None else bit_cap_from_env()
    points = [x]
    heights = [weil_height(x)]
    seen: Dict[ProjPointQ, int] = {x: 0}
    status = OrbitStatus.complete()
    for k in range(N):
        try:
            nxt = evaluate(f, points[-1])
        except Indeterminate:
            status = OrbitStatus.indeterminate_at(k)
            logger.info(f"orbit of {x} is indeterminate at step {k}")
            break
        if nxt in seen:
            q = seen[nxt]
            status = OrbitStatus.periodic(k + 1 - q, q)
            break
        if nxt.bit_size() > cap:
            status = OrbitStatus.truncated_at(k + 1)
            logger.warning(f"coordinate bit cap {cap} exceeded at step {k + 1}")
            break
        seen[nxt] = len(points)
        points.append(nxt)
        heights.append(weil_height(nxt))
    return OrbitRecord(map_id, x, tuple(heights), status, N, tuple(points), None)


def iterate_torus_orbit(
    A: IntMatrix, x: Union[TorusPoint, Sequence], N: int, map_id: str = ""
) -> OrbitRecord:
    """Fast path for monomial maps: exponent vectors only, no bit cap."""
    if N < 1:
        raise InvalidArgumentError("horizon must be at least 1")
    seed = x if isinstance(x, TorusPoint) else TorusPoint.from_rationals(x)
    states = [seed]
    heights = [torus_height(seed)]
    seen: Dict[TorusPoint, int] = {seed: 0}
    status = OrbitStatus.complete()
    for k in range(N):
        nxt = states[-1].image(A)
        if nxt in seen:
            q = seen[nxt]
            status = OrbitStatus.periodic(k + 1 - q, q)
            break
        seen[nxt] = len(states)
        states.append(nxt)
        heights.append(torus_height(nxt))
    return OrbitRecord(map_id, seed, tuple(heights), status, N, None, tuple(states))
