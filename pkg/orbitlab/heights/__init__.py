"""Weil heights on P^n(Q) and along orbits."""

from .weil import (
    HeightValue,
    HeightSeries,
    weil_height,
    torus_height,
    orbit_heights,
    monomial_orbit_heights,
)

__all__ = [
    "HeightValue",
    "HeightSeries",
    "weil_height",
    "torus_height",
    "orbit_heights",
    "monomial_orbit_heights",
]
