"""Named example maps usable from configs as {"kind": "named", "name": ...}."""

from __future__ import annotations

from typing import Callable, Dict, Sequence, Union

from orbitlab.algebra.matrix import IntMatrix
from orbitlab.algebra.polynomial import MultiPoly
from orbitlab.errors import ConfigError, Indeterminate
from orbitlab.maps.monomial import MonomialMap
from orbitlab.maps.point import ProjPointQ
from orbitlab.maps.rational_map import RationalMapPn, evaluate, reduce_map


def cremona(n: int = 2) -> RationalMapPn:
    """Standard Cremona involution (prod_{j != i} x_j)_i on P^n."""
    if n < 1:
        raise ConfigError("cremona needs n >= 1")
    coords = []
    for i in range(n + 1):
        exps = tuple(0 if j == i else 1 for j in range(n + 1))
        coords.append(MultiPoly.monomial(exps))
    return reduce_map(coords)


def power_map(n: int = 1, d: int = 2) -> RationalMapPn:
    """(x0^d : ... : xn^d), a morphism of degree d."""
    if n < 1 or d < 1:
        raise ConfigError("power map needs n >= 1 and d >= 1")
    return RationalMapPn(
        n, tuple(MultiPoly.variable(n + 1, i) ** d for i in range(n + 1))
    )


def monomial(matrix: Sequence[Sequence[int]]) -> MonomialMap:
    return MonomialMap(IntMatrix.from_rows(matrix))


def cat_map() -> MonomialMap:
    return monomial([[2, 1], [1, 1]])


def fibonacci_map() -> MonomialMap:
    return monomial([[1, 1], [1, 0]])


CATALOG: Dict[str, Callable[..., Union[RationalMapPn, MonomialMap]]] = {
    "cremona": cremona,
    "power": power_map,
    "monomial": monomial,
    "cat": cat_map,
    "fibonacci": fibonacci_map,
}


def named_map(name: str, **params) -> Union[RationalMapPn, MonomialMap]:
    if name not in CATALOG:
        raise ConfigError(f"unknown named map {name!r}; known: {sorted(CATALOG)}")
    try:
        return CATALOG[name](**params)
    except (TypeError, ValueError) as e:
        raise ConfigError(f"bad parameters for {name}: {e}") from e


def is_morphism_on_sample(f: RationalMapPn, points: Sequence[ProjPointQ]) -> bool:
    """True when no sample point lies in the indeterminacy locus of f."""
    for p in points:
        try:
            evaluate(f, p)
        except Indeterminate:
            return False
    return True
