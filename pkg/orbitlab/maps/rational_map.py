"""Rational self-maps of P^n given by coprime homogeneous coordinates."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

from orbitlab.algebra.polynomial import (
    MultiPoly,
    poly_compose,
    poly_exact_divide,
    poly_gcd_many,
)
from orbitlab.errors import (
    DegenerateMapError,
    DimensionMismatchError,
    Indeterminate,
    NotHomogeneousError,
)
from orbitlab.maps.point import ProjPointQ

logger = logging.getLogger(__name__)


def _check_coords(coords: Sequence[MultiPoly]) -> int:
    """Validate an equal-degree homogeneous tuple and return its degree."""
    if len(coords) < 2:
        raise DimensionMismatchError("a self-map of P^n needs at least two coordinates")
    nvars = len(coords)
    if any(c.nvars != nvars for c in coords):
        raise DimensionMismatchError(
            f"coordinates of a map on P^{nvars - 1} must use {nvars} variables"
        )
    nonzero = [c for c in coords if not c.is_zero()]
    if not nonzero:
        raise DegenerateMapError("all coordinates are zero")
    degrees = {c.degree() for c in nonzero}
    if len(degrees) != 1 or not all(c.is_homogeneous() for c in nonzero):
        raise NotHomogeneousError(
            f"coordinates are not homogeneous of one degree (degrees {sorted(degrees)})"
        )
    return degrees.pop()


@dataclass(frozen=True)
class RationalMapPn:
    """f = (f_0 : ... : f_n) with homogeneous f_i of a common degree."""

    n: int
    coords: Tuple[MultiPoly, ...]
    removed_factor: Optional[MultiPoly] = field(default=None, compare=False)

    def __post_init__(self):
        if len(self.coords) != self.n + 1:
            raise DimensionMismatchError(
                f"map on P^{self.n} needs {self.n + 1} coordinates, got {len(self.coords)}"
            )
        _check_coords(self.coords)

    @property
    def degree(self) -> int:
        return max(c.degree() for c in self.coords if not c.is_zero())

    @property
    def removed_degree(self) -> int:
        if self.removed_factor is None:
            return 0
        return self.removed_factor.degree()

    def term_count(self) -> int:
        return sum(c.term_count() for c in self.coords)

    def __str__(self) -> str:
        return "(" + " : ".join(str(c) for c in self.coords) + ")"


def reduce_map(raw_coords: Sequence[MultiPoly]) -> RationalMapPn:
    """Divide out the common polynomial factor of positive degree.

    Integer content is left in place; only the primitive part of the gcd is
    removed.
    """
    raw_coords = tuple(raw_coords)
    _check_coords(raw_coords)
    g = poly_gcd_many(raw_coords).primitive_part().normalized()
    if g.degree() > 0:
        coords = tuple(poly_exact_divide(c, g) for c in raw_coords)
        removed = g
    else:
        coords = raw_coords
        removed = MultiPoly.constant(len(raw_coords), 1)
    reduced = RationalMapPn(len(coords) - 1, coords, removed)
    if reduced.degree < 1:
        raise DegenerateMapError("reduced map is constant")
    if removed.degree() > 0:
        logger.debug(f"removed common factor of degree {removed.degree()}")
    return reduced


def identity_map(n: int) -> RationalMapPn:
    return RationalMapPn(
        n,
        tuple(MultiPoly.variable(n + 1, i) for i in range(n + 1)),
        MultiPoly.constant(n + 1, 1),
    )


def compose(f: RationalMapPn, g: RationalMapPn) -> RationalMapPn:
    """The reduced representative of f o g."""
    if f.n != g.n:
        raise DimensionMismatchError(f"cannot compose maps on P^{f.n} and P^{g.n}")
    raw = [poly_compose(c, list(g.coords)) for c in f.coords]
    return reduce_map(raw)


def evaluate(f: RationalMapPn, p: ProjPointQ) -> ProjPointQ:
    """Image of p; raises ``Indeterminate`` when every coordinate vanishes."""
    if len(p.coords) != f.n + 1:
        raise DimensionMismatchError(f"point {p} is not on P^{f.n}")
    values = [c.evaluate(p.coords) for c in f.coords]
    if all(v == 0 for v in values):
        raise Indeterminate(p.coords)
    return ProjPointQ.normalized(values)
