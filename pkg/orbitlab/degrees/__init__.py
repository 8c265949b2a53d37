"""Degree sequences and dynamical degrees."""

from .sequences import (
    DegreeSequence,
    DynDegReport,
    degree_sequence,
    monomial_degree_sequence,
    lambda1_estimate,
    term_cap_from_env,
)
from .dynamical import (
    monomial_dyndeg,
    dynamical_degrees,
    lyapunov_exponents,
    verify_degree_laws,
    DegreeLawReport,
    LawCheck,
)
from .criterion import ZdoVerdict, zdo_criterion, classify_alpha, AlphaClass

__all__ = [
    "DegreeSequence",
    "DynDegReport",
    "degree_sequence",
    "monomial_degree_sequence",
    "lambda1_estimate",
    "term_cap_from_env",
    "monomial_dyndeg",
    "dynamical_degrees",
    "lyapunov_exponents",
    "verify_degree_laws",
    "DegreeLawReport",
    "LawCheck",
    "ZdoVerdict",
    "zdo_criterion",
    "classify_alpha",
    "AlphaClass",
]
