"""Database manager for the SQLite run ledger."""

import sqlite3
import json
from typing import Optional, List, Dict, Any
from contextlib import contextmanager
from datetime import datetime
import logging

from .models import SCHEMA, ExperimentRun, MapEntry

logger = logging.getLogger(__name__)


class DatabaseManager:
    """Manages SQLite database connections and ledger operations."""

    def __init__(self, db_path: str = "orbitlab.db"):
        """
        Initialize database manager.

        Args:
            db_path: Path to SQLite database file
        """
        self.db_path = db_path
        self._initialized = False

    def initialize(self) -> None:
        """Initialize database schema if not already initialized."""
        if self._initialized:
            return

        try:
            with self.get_connection() as conn:
                cursor = conn.cursor()
                cursor.executescript(SCHEMA)
                conn.commit()
                logger.info(f"Run ledger initialized at {self.db_path}")
            self._initialized = True
        except sqlite3.Error as e:
            logger.error(f"Error initializing database: {e}")
            raise

    @contextmanager
    def get_connection(self):
        """
        Get database connection with proper transaction handling.

        Usage:
            with db_manager.get_connection() as conn:
                cursor = conn.cursor()
                cursor.execute(...)
        """
        conn = sqlite3.connect(
            self.db_path,
            check_same_thread=False,
            timeout=30.0,
        )
        conn.row_factory = sqlite3.Row
        try:
            yield conn
            conn.commit()
        except Exception as e:
            conn.rollback()
            logger.error(f"Database transaction error: {e}")
            raise
        finally:
            conn.close()

    # Run operations
    def create_run(
        self,
        command: str,
        config_hash: str,
        rng_seed: int,
        tool_version: str,
        exit_code: int,
        map_hash: Optional[str] = None,
        output_path: Optional[str] = None,
        summary: Optional[Dict[str, Any]] = None,
    ) -> int:
        """
        Record a finished run.

        Args:
            command: Command name (degrees, orbit, ...)
            config_hash: SHA-256 of the merged config
            rng_seed: Seed the run used
            tool_version: orbitlab version string
            exit_code: Process exit code of the run
            map_hash: Hash of the map description, if any
            output_path: Where the table or report was written
            summary: Small JSON-serializable summary of the result

        Returns:
            ID of the created run
        """
        summary_json = json.dumps(summary, sort_keys=True) if summary else None

        with self.get_connection() as conn:
            cursor = conn.cursor()
            cursor.execute(
                """
                INSERT INTO runs (command, config_hash, rng_seed, tool_version,
                                  exit_code, map_hash, output_path, summary_json)
                VALUES (?, ?, ?, ?, ?, ?, ?, ?)
                """,
                (command, config_hash, str(rng_seed), tool_version, exit_code,
                 map_hash, output_path, summary_json),
            )
            return cursor.lastrowid

    def get_run(self, run_id: int) -> Optional[ExperimentRun]:
        """Get run by ID."""
        with self.get_connection() as conn:
            cursor = conn.cursor()
            cursor.execute("SELECT * FROM runs WHERE id = ?", (run_id,))
            row = cursor.fetchone()
            if row:
                return self._row_to_run(row)
            return None

    def list_runs(self, command: Optional[str] = None, limit: int = 50) -> List[ExperimentRun]:
        """List the most recent runs, optionally for one command."""
        with self.get_connection() as conn:
            cursor = conn.cursor()
            if command:
                cursor.execute(
                    "SELECT * FROM runs WHERE command = ? ORDER BY id DESC LIMIT ?",
                    (command, limit),
                )
            else:
                cursor.execute("SELECT * FROM runs ORDER BY id DESC LIMIT ?", (limit,))
            return [self._row_to_run(row) for row in cursor.fetchall()]

    def get_runs_by_config_hash(self, config_hash: str) -> List[ExperimentRun]:
        """All runs of one config, oldest first."""
        with self.get_connection() as conn:
            cursor = conn.cursor()
            cursor.execute(
                "SELECT * FROM runs WHERE config_hash = ? ORDER BY id",
                (config_hash,),
            )
            return [self._row_to_run(row) for row in cursor.fetchall()]

    # Map catalog operations
    def upsert_map(self, map_hash: str, kind: str, dimension: int, description: Dict[str, Any]) -> int:
        """Insert a map if its hash is new; return its ID either way."""
        existing = self.get_map_by_hash(map_hash)
        if existing:
            return existing.id

        with self.get_connection() as conn:
            cursor = conn.cursor()
            cursor.execute(
                """
                INSERT INTO maps (map_hash, kind, dimension, description_json)
                VALUES (?, ?, ?, ?)
                """,
                (map_hash, kind, dimension, json.dumps(description, sort_keys=True)),
            )
            logger.debug(f"New map {map_hash[:12]} ({kind}, n={dimension})")
            return cursor.lastrowid

    def get_map_by_hash(self, map_hash: str) -> Optional[MapEntry]:
        with self.get_connection() as conn:
            cursor = conn.cursor()
            cursor.execute("SELECT * FROM maps WHERE map_hash = ?", (map_hash,))
            row = cursor.fetchone()
            if row:
                return self._row_to_map(row)
            return None

    def list_maps(self, kind: Optional[str] = None) -> List[MapEntry]:
        with self.get_connection() as conn:
            cursor = conn.cursor()
            if kind:
                cursor.execute("SELECT * FROM maps WHERE kind = ? ORDER BY id", (kind,))
            else:
                cursor.execute("SELECT * FROM maps ORDER BY id")
            return [self._row_to_map(row) for row in cursor.fetchall()]

    # Helper methods
    def _row_to_run(self, row: sqlite3.Row) -> ExperimentRun:
        """Convert database row to ExperimentRun object."""
        return ExperimentRun(
            id=row["id"],
            command=row["command"],
            config_hash=row["config_hash"],
            rng_seed=int(row["rng_seed"]),
            tool_version=row["tool_version"],
            exit_code=row["exit_code"],
            map_hash=row["map_hash"],
            output_path=row["output_path"],
            summary_json=row["summary_json"],
            created_at=self._parse_timestamp(row["created_at"]),
        )

    def _row_to_map(self, row: sqlite3.Row) -> MapEntry:
        """Convert database row to MapEntry object."""
        return MapEntry(
            id=row["id"],
            map_hash=row["map_hash"],
            kind=row["kind"],
            dimension=row["dimension"],
            description_json=row["description_json"],
            first_seen=self._parse_timestamp(row["first_seen"]),
        )

    @staticmethod
    def _parse_timestamp(timestamp_str: Optional[str]) -> Optional[datetime]:
        """Parse timestamp string to datetime object."""
        if not timestamp_str:
            return None
        try:
            return datetime.fromisoformat(timestamp_str.replace("Z", "+00:00"))
        except (ValueError, AttributeError):
            return None
