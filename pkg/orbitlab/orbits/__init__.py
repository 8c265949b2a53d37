"""Orbits and their arithmetic invariants."""

from .records import (
    OrbitRecord,
    OrbitStatus,
    iterate_orbit,
    iterate_torus_orbit,
    bit_cap_from_env,
)
from .alpha import AlphaEstimate, AlphaBoundReport, alpha_estimate, check_alpha_bound
from .returns import Progression, ReturnSetAnalysis, return_set, extract_progressions
from .interpolation import ZariskiReport, orbit_zariski_test, interpolation_profile
from .diagnostics import GapReport, recursive_gap_tracker
from .search import (
    SearchResult,
    high_alpha_search,
    torus_seed_sampler,
    projective_seed_sampler,
    random_matrix,
    random_unimodular,
)

__all__ = [
    "OrbitRecord",
    "OrbitStatus",
    "iterate_orbit",
    "iterate_torus_orbit",
    "bit_cap_from_env",
    "AlphaEstimate",
    "AlphaBoundReport",
    "alpha_estimate",
    "check_alpha_bound",
    "Progression",
    "ReturnSetAnalysis",
    "return_set",
    "extract_progressions",
    "ZariskiReport",
    "orbit_zariski_test",
    "interpolation_profile",
    "GapReport",
    "recursive_gap_tracker",
    "SearchResult",
    "high_alpha_search",
    "torus_seed_sampler",
    "projective_seed_sampler",
    "random_matrix",
    "random_unimodular",
]
