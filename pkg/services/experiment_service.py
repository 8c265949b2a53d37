"""Experiment execution service: config -> command -> output file -> ledger."""

from typing import Optional, Dict, Any, TextIO
import logging
import os

from database.db_manager import DatabaseManager
from orbitlab import __version__
from orbitlab.context import EXIT_CAP, EXIT_OK, EXIT_PARSE, EXIT_USAGE
from orbitlab.errors import CapExceededError, OrbitLabError, ParseError
from orbitlab.maps.parser import parse_map_description
from orbitlab.pipeline import COMMANDS, JSON_COMMANDS, run_command
from services.config_service import ConfigService
from utils.output import Provenance, render_csv, render_json, write_output

logger = logging.getLogger(__name__)


def exit_code_for(error: Exception) -> int:
    """Map a library error to the CLI exit code."""
    if isinstance(error, ParseError):
        return EXIT_PARSE
    if isinstance(error, CapExceededError):
        return EXIT_CAP
    return EXIT_USAGE


def map_dimension(desc: Dict[str, Any]) -> int:
    """Dimension n of the map a description builds; 0 if it does not build."""
    try:
        return parse_map_description(desc).n
    except OrbitLabError:
        return 0


class ExperimentService:
    """Service for running orbitlab commands."""

    def __init__(
        self,
        config_service: Optional[ConfigService] = None,
        db_manager: Optional[DatabaseManager] = None,
        workers: Optional[int] = None,
    ):
        """
        Initialize experiment service.

        Args:
            config_service: Config loader (a fresh one by default)
            db_manager: Run ledger; runs are only recorded when given
            workers: Worker processes for batch fan-out (ORBITLAB_WORKERS)
        """
        self.config_service = config_service or ConfigService()
        self.db = db_manager
        self.workers = workers if workers is not None else int(os.getenv("ORBITLAB_WORKERS", "1"))

    def run(
        self,
        command: str,
        config_path: str,
        out_path: Optional[str] = None,
        seed: Optional[int] = None,
        stream: Optional[TextIO] = None,
    ) -> Dict[str, Any]:
        """
        Run a command from a config file.

        Args:
            command: One of the registered command names
            config_path: Path to the JSON config
            out_path: Output file; ``stream`` (or the config's outputs.path) otherwise
            seed: Overrides params.seed when given
            stream: Where to write when there is no output path

        Returns:
            Result dictionary with success, exit_code, error and output
        """
        if command not in COMMANDS:
            return {
                "success": False,
                "exit_code": EXIT_USAGE,
                "error": f"Unknown command '{command}'. Choose from: {', '.join(sorted(COMMANDS))}",
            }
        try:
            raw = self.config_service.load(config_path)
            config = self.config_service.merge_with_defaults(raw)
            config = self.config_service.with_seed(config, seed)
        except OrbitLabError as e:
            logger.error(f"Could not load config {config_path}: {e}")
            return {"success": False, "exit_code": exit_code_for(e), "error": str(e)}
        return self.run_config(command, config, out_path, stream)

    def run_config(
        self,
        command: str,
        config: Dict[str, Any],
        out_path: Optional[str] = None,
        stream: Optional[TextIO] = None,
    ) -> Dict[str, Any]:
        """Run a command on an already merged config."""
        config_hash = self.config_service.config_hash(config)
        provenance = Provenance(__version__, config_hash, config["params"]["seed"], command)
        out_path = out_path or config["outputs"].get("path")

        try:
            result = run_command(command, config, self.workers)
        except OrbitLabError as e:
            code = exit_code_for(e)
            logger.error(f"'{command}' failed: {e}")
            self._record(command, config, code, None, {"error": str(e)})
            return {"success": False, "exit_code": code, "error": str(e), "config_hash": config_hash}

        if command in JSON_COMMANDS:
            text = render_json(result.report or {}, provenance)
        else:
            text = render_csv(result.table, provenance)
        write_output(text, out_path, stream)

        if result.exit_code != EXIT_OK:
            logger.warning(f"'{command}' finished with exit code {result.exit_code}: {result.message}")
        self._record(command, config, result.exit_code, out_path, result.summary)
        return {
            "success": result.exit_code == EXIT_OK,
            "exit_code": result.exit_code,
            "error": result.message or None,
            "output": text,
            "summary": result.summary,
            "config_hash": config_hash,
        }

    def _record(
        self,
        command: str,
        config: Dict[str, Any],
        exit_code: int,
        out_path: Optional[str],
        summary: Dict[str, Any],
    ) -> Optional[int]:
        if self.db is None:
            return None
        try:
            map_hash = self.config_service.map_hash(config)
            if map_hash:
                desc = config["map"]
                self.db.upsert_map(map_hash, desc.get("kind", ""), map_dimension(desc), desc)
            run_id = self.db.create_run(
                command=command,
                config_hash=self.config_service.config_hash(config),
                rng_seed=config["params"]["seed"],
                tool_version=__version__,
                exit_code=exit_code,
                map_hash=map_hash,
                output_path=out_path,
                summary=summary,
            )
            logger.info(f"Recorded run {run_id}")
            return run_id
        except Exception as e:
            logger.error(f"Error recording run: {e}")
            return None
