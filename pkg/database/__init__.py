"""Database package for the SQLite run ledger."""

from .db_manager import DatabaseManager
from .models import ExperimentRun, MapEntry, SCHEMA

__all__ = ["DatabaseManager", "ExperimentRun", "MapEntry", "SCHEMA"]
