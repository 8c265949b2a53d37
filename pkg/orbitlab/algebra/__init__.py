"""Exact arithmetic substrate: polynomials, integer matrices, spectral bounds."""

from .polynomial import (
    MultiPoly,
    NEG_INF,
    poly_mul,
    poly_compose,
    poly_gcd,
    poly_gcd_many,
    poly_exact_divide,
    divides,
    coprime_probe,
)
from .matrix import IntMatrix, exterior_power, integer_kernel
from .spectral import SpectralInterval, spectral_radius, root_bounds

__all__ = [
    "MultiPoly",
    "NEG_INF",
    "poly_mul",
    "poly_compose",
    "poly_gcd",
    "poly_gcd_many",
    "poly_exact_divide",
    "divides",
    "coprime_probe",
    "IntMatrix",
    "exterior_power",
    "integer_kernel",
    "SpectralInterval",
    "spectral_radius",
    "root_bounds",
]
