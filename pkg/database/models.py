"""Run ledger models and schema definitions."""

from typing import Optional, Dict, Any, List
from datetime import datetime
import json


class ExperimentRun:
    """One invocation of an orbitlab command."""

    def __init__(
        self,
        id: Optional[int] = None,
        command: str = "",
        config_hash: str = "",
        rng_seed: int = 0,
        tool_version: str = "",
        exit_code: int = 0,
        map_hash: Optional[str] = None,
        output_path: Optional[str] = None,
        summary_json: Optional[str] = None,
        created_at: Optional[datetime] = None,
    ):
        self.id = id
        self.command = command
        self.config_hash = config_hash
        self.rng_seed = rng_seed
        self.tool_version = tool_version
        self.exit_code = exit_code
        self.map_hash = map_hash
        self.output_path = output_path
        self.summary_json = summary_json
        self.created_at = created_at

    @property
    def summary(self) -> Dict[str, Any]:
        """Parse summary JSON into a dictionary."""
        if self.summary_json:
            try:
                return json.loads(self.summary_json)
            except json.JSONDecodeError:
                return {}
        return {}

    @summary.setter
    def summary(self, value: Dict[str, Any]):
        self.summary_json = json.dumps(value, sort_keys=True) if value else None

    @property
    def succeeded(self) -> bool:
        return self.exit_code == 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "id": self.id,
            "command": self.command,
            "config_hash": self.config_hash,
            "rng_seed": self.rng_seed,
            "tool_version": self.tool_version,
            "exit_code": self.exit_code,
            "map_hash": self.map_hash,
            "output_path": self.output_path,
            "summary": self.summary,
            "created_at": self.created_at.isoformat() if self.created_at else None,
        }


class MapEntry:
    """A map seen by the ledger, keyed by the hash of its description."""

    def __init__(
        self,
        id: Optional[int] = None,
        map_hash: str = "",
        kind: str = "",
        dimension: int = 0,
        description_json: Optional[str] = None,
        first_seen: Optional[datetime] = None,
    ):
        self.id = id
        self.map_hash = map_hash
        self.kind = kind
        self.dimension = dimension
        self.description_json = description_json
        self.first_seen = first_seen

    @property
    def description(self) -> Dict[str, Any]:
        if self.description_json:
            try:
                return json.loads(self.description_json)
            except json.JSONDecodeError:
                return {}
        return {}

    @property
    def matrix(self) -> Optional[List[List[int]]]:
        """Exponent matrix for monomial entries."""
        return self.description.get("matrix") if self.kind == "monomial" else None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "id": self.id,
            "map_hash": self.map_hash,
            "kind": self.kind,
            "dimension": self.dimension,
            "description": self.description,
            "first_seen": self.first_seen.isoformat() if self.first_seen else None,
        }


SCHEMA = """
-- Catalog of maps referenced by runs
CREATE TABLE IF NOT EXISTS maps (
    id INTEGER PRIMARY KEY AUTOINCREMENT,
    map_hash TEXT NOT NULL UNIQUE,
    kind TEXT NOT NULL,
    dimension INTEGER NOT NULL,
    description_json TEXT,
    first_seen TIMESTAMP DEFAULT CURRENT_TIMESTAMP
);

-- One row per command invocation
CREATE TABLE IF NOT EXISTS runs (
    id INTEGER PRIMARY KEY AUTOINCREMENT,
    command TEXT NOT NULL,
    config_hash TEXT NOT NULL,
    rng_seed TEXT NOT NULL,  -- u64 does not fit a signed SQLite integer
    tool_version TEXT NOT NULL,
    exit_code INTEGER NOT NULL,
    map_hash TEXT,
    output_path TEXT,
    summary_json TEXT,
    created_at TIMESTAMP DEFAULT CURRENT_TIMESTAMP,
    FOREIGN KEY (map_hash) REFERENCES maps(map_hash)
);

CREATE INDEX IF NOT EXISTS idx_runs_config_hash ON runs(config_hash);
CREATE INDEX IF NOT EXISTS idx_runs_command ON runs(command);
CREATE INDEX IF NOT EXISTS idx_maps_kind ON maps(kind);
"""
