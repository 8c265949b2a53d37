"""Degree-d forms through a set of orbit points.

The kernel of the evaluation matrix (points x degree-d monomials) is the
space of degree-d forms vanishing on every point. Rank over GF(p) never
exceeds the rational rank, so full rank mod p already certifies an empty
kernel; otherwise the rank is recomputed over QQ.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from functools import reduce
from math import gcd
from typing import List, Optional, Sequence, Tuple, Union

import sympy
from sympy import GF, QQ, ZZ
from sympy.polys.matrices import DomainMatrix

from orbitlab.algebra.polynomial import PROBE_PRIME, MultiPoly
from orbitlab.errors import CapExceededError, DimensionMismatchError, InvalidArgumentError
from orbitlab.maps.monomial import TorusPoint
from orbitlab.maps.point import ProjPointQ
from orbitlab.orbits.records import bit_cap_from_env

logger = logging.getLogger(__name__)

OrbitPoint = Union[ProjPointQ, TorusPoint]


def degree_monomials(nvars: int, d: int) -> List[Tuple[int, ...]]:
    out = []
    for combo in itertools.combinations_with_replacement(range(nvars), d):
        exps = [0] * nvars
        for i in combo:
            exps[i] += 1
        out.append(tuple(exps))
    return sorted(out, reverse=True)


def _projective_dim(p: OrbitPoint) -> int:
    return p.n if isinstance(p, TorusPoint) else len(p.coords) - 1


def _row_mod(p: OrbitPoint, monomials: Sequence[Tuple[int, ...]], modulus: int) -> Optional[List[int]]:
    if isinstance(p, TorusPoint):
        coords = p.residues(modulus)
        if coords is None:
            return None
        coords = coords + (1,)
    else:
        coords = tuple(c % modulus for c in p.coords)
    return [
        MultiPoly.monomial(m).evaluate_mod(coords, modulus)
        for m in monomials
    ]


def _coordinate_bits(p: OrbitPoint) -> float:
    return p.exponent_bits() if isinstance(p, TorusPoint) else float(p.bit_size())


def _row_exact(p: OrbitPoint, monomials: Sequence[Tuple[int, ...]]) -> List[int]:
    coords = p.to_projective().coords if isinstance(p, TorusPoint) else p.coords
    return [MultiPoly.monomial(m).evaluate(coords) for m in monomials]


@dataclass
class ZariskiReport:
    degree: int
    n_points: int
    n_monomials: int
    rank: int
    method: str
    kernel_forms: List[MultiPoly] = field(default_factory=list)

    @property
    def kernel_dim(self) -> int:
        return self.n_monomials - self.rank

    @property
    def underdetermined(self) -> bool:
        return self.n_points < self.n_monomials

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "n_points": self.n_points,
            "n_monomials": self.n_monomials,
            "kernel_dim": self.kernel_dim,
            "underdetermined": self.underdetermined,
            "method": self.method,
        }


def orbit_zariski_test(
    points: Sequence[OrbitPoint], d: int, with_forms: bool = False, modulus: int = PROBE_PRIME
) -> ZariskiReport:
    if d < 1:
        raise InvalidArgumentError("interpolation degree must be at least 1")
    if not points:
        raise InvalidArgumentError("no points to interpolate")
    n = _projective_dim(points[0])
    if any(_projective_dim(p) != n for p in points):
        raise DimensionMismatchError("points live on different projective spaces")
    monomials = degree_monomials(n + 1, d)
    shape = (len(points), len(monomials))
    if len(points) < len(monomials):
        logger.info(f"{len(points)} points for {len(monomials)} degree-{d} monomials: underdetermined")

    if not with_forms:
        rows = [_row_mod(p, monomials, modulus) for p in points]
        if all(r is not None for r in rows):
            field_ = GF(modulus)
            dm = DomainMatrix([[field_(x) for x in r] for r in rows], shape, field_)
            rank = dm.rank()
            if rank == len(monomials):
                return ZariskiReport(d, len(points), len(monomials), rank, "modular")

    cap = bit_cap_from_env()
    widest = max(_coordinate_bits(p) for p in points)
    if widest > cap:
        raise CapExceededError(
            f"exact rank needs coordinates of about {widest:.0f} bits (cap {cap}); shorten the orbit"
        )
    rows = [_row_exact(p, monomials) for p in points]
    dm = DomainMatrix([[ZZ(x) for x in r] for r in rows], shape, ZZ).convert_to(QQ)
    rank = dm.rank()
    report = ZariskiReport(d, len(points), len(monomials), rank, "exact")
    if with_forms and report.kernel_dim:
        for vec in sympy.Matrix(rows).nullspace():
            denom = reduce(lambda a, b: a * b // gcd(a, b), (int(sympy.Rational(x).q) for x in vec), 1)
            coeffs = {m: int(x * denom) for m, x in zip(monomials, vec)}
            report.kernel_forms.append(MultiPoly.from_dict(n + 1, coeffs).primitive_part().normalized())
    return report


def interpolation_profile(points: Sequence[OrbitPoint], d_max: int) -> List[ZariskiReport]:
    """Kernel dimensions for d = 1..d_max; all zero means no obstruction to density."""
    return [orbit_zariski_test(points, d) for d in range(1, d_max + 1)]
