"""Business logic services."""

from .config_service import ConfigService
from .experiment_service import ExperimentService, exit_code_for, map_dimension

__all__ = ["ConfigService", "ExperimentService", "exit_code_for", "map_dimension"]
