"""Self-maps of P^n: reduced rational maps, monomial maps, parsing."""

from .point import ProjPointQ
from .rational_map import RationalMapPn, reduce_map, compose, evaluate, identity_map
from .monomial import (
    MonomialMap,
    TorusPoint,
    monomial_to_rational,
    monomial_is_birational,
    monomial_inverse,
    invariant_monomials,
)
from .parser import parse_polynomial, parse_map_description
from .catalog import cremona, power_map, named_map, is_morphism_on_sample

__all__ = [
    "ProjPointQ",
    "RationalMapPn",
    "reduce_map",
    "compose",
    "evaluate",
    "identity_map",
    "MonomialMap",
    "TorusPoint",
    "monomial_to_rational",
    "monomial_is_birational",
    "monomial_inverse",
    "invariant_monomials",
    "parse_polynomial",
    "parse_map_description",
    "cremona",
    "power_map",
    "named_map",
    "is_morphism_on_sample",
]
