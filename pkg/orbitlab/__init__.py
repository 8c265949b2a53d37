"""orbitlab - exact-arithmetic laboratory for degrees, heights and orbits of rational self-maps of projective space."""

__version__ = "0.1.0"

__all__ = ["__version__"]
