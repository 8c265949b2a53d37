"""Exception hierarchy shared by every orbitlab package."""

from typing import Optional, Sequence


class OrbitLabError(Exception):
    """Base class for all orbitlab errors."""


class ArityError(OrbitLabError):
    """Substitution list does not match the number of variables."""


class DimensionMismatchError(OrbitLabError):
    """Objects living on projective spaces of different dimension."""


class NotHomogeneousError(OrbitLabError):
    """Coordinates are not homogeneous of one common degree."""


class DegenerateMapError(OrbitLabError):
    """Coordinate tuple does not define a dominant map (all zero or constant)."""


class InvalidPointError(OrbitLabError):
    """Point with all coordinates zero, or a zero torus coordinate."""


class InvalidArgumentError(OrbitLabError):
    """Argument outside the documented domain of an operation."""


class SingularMatrixError(OrbitLabError):
    """Exponent matrix with determinant zero."""


class IndexRangeError(OrbitLabError):
    """Exterior power or dynamical degree index outside 0..n."""


class Indeterminate(OrbitLabError):
    """All coordinates of the map vanish at the point (the point lies in I_f)."""

    def __init__(self, point: Sequence[int], step: Optional[int] = None):
        self.point = tuple(point)
        self.step = step
        where = f" at step {step}" if step is not None else ""
        super().__init__(f"map is indeterminate at {list(self.point)}{where}")


class ParseError(OrbitLabError):
    """Malformed polynomial string or map description."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class CapExceededError(OrbitLabError):
    """A configured term-count or bit-size cap was exceeded."""


class UnsupportedFeatureError(OrbitLabError):
    """Requested computation has no implemented procedure for this map class."""


class TooShortRecordError(OrbitLabError):
    """Orbit record has too few height entries for the requested estimator."""


class PointsElidedError(OrbitLabError):
    """Orbit record was built on the fast path and keeps no points."""


class ConfigError(OrbitLabError):
    """Experiment configuration is missing fields or has invalid values."""
