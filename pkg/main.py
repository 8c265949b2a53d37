"""Main entry point for orbitlab."""

import argparse
import os
import logging
import sys
from typing import List, Optional

from dotenv import load_dotenv

from database import DatabaseManager
from orbitlab import __version__
from orbitlab.context import EXIT_USAGE
from orbitlab.pipeline import COMMANDS
from services import ExperimentService

# Load environment variables
load_dotenv()

# Configure logging; stdout carries the tables
logging.basicConfig(
    level=os.getenv("LOG_LEVEL", "INFO"),
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    stream=sys.stderr,
)

logger = logging.getLogger(__name__)


class _ArgumentParser(argparse.ArgumentParser):
    """argparse exits with 2 on usage errors; orbitlab reserves 2 for parse errors."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="orbitlab",
        description="Degrees, heights and orbits of rational self-maps of projective space.",
    )
    parser.add_argument("--version", action="version", version=f"orbitlab {__version__}")
    parser.add_argument("command", choices=sorted(COMMANDS), help="Command to run")
    parser.add_argument("--config", required=True, help="Path to the JSON experiment config")
    parser.add_argument("--out", default=None, help="Output file (stdout when omitted)")
    parser.add_argument("--seed", type=int, default=None, help="Override params.seed (u64)")
    parser.add_argument(
        "--workers",
        type=int,
        default=None,
        help="Worker processes for batch commands (default: ORBITLAB_WORKERS or 1)",
    )
    parser.add_argument(
        "--record",
        action="store_true",
        help="Record the run in the SQLite ledger at ORBITLAB_DB_PATH",
    )
    return parser


def initialize_database() -> DatabaseManager:
    """Initialize the run ledger."""
    db_path = os.getenv("ORBITLAB_DB_PATH", "./orbitlab.db")
    db = DatabaseManager(db_path)
    db.initialize()
    return db


def main(argv: Optional[List[str]] = None) -> None:
    """Main function."""
    args = build_parser().parse_args(argv)

    if args.seed is not None and not 0 <= args.seed < 2**64:
        logger.error("--seed must be an unsigned 64-bit integer")
        sys.exit(EXIT_USAGE)
    if args.workers is not None and args.workers < 1:
        logger.error("--workers must be at least 1")
        sys.exit(EXIT_USAGE)

    db = initialize_database() if args.record else None
    service = ExperimentService(db_manager=db, workers=args.workers)
    result = service.run(args.command, args.config, args.out, args.seed, stream=sys.stdout)

    if result.get("error"):
        logger.error(result["error"])
    sys.exit(result["exit_code"])


if __name__ == "__main__":
    main()
