"""Command registry: command name -> runner, and the single-run driver."""

from __future__ import annotations

import logging
from typing import Any, Callable, Dict

from orbitlab import commands
from orbitlab.context import CommandResult, RunContext

logger = logging.getLogger(__name__)

Runner = Callable[[RunContext], CommandResult]

# Commands whose output is a JSON report rather than a CSV table.
JSON_COMMANDS = {"zdo"}


def create_command_registry() -> Dict[str, Runner]:
    """
    Create the command registry.

    Returns:
        Mapping from command name to its runner
    """
    return {
        "degrees": commands.cmd_degrees,
        "dyndeg": commands.cmd_dyndeg,
        "orbit": commands.cmd_orbit,
        "alpha": commands.cmd_alpha,
        "zdo": commands.cmd_zdo,
        "verify": commands.cmd_verify,
        "interpolate": commands.cmd_interpolate,
        "search": commands.cmd_search,
    }


COMMANDS = create_command_registry()


def run_command(command: str, config: Dict[str, Any], workers: int = 1) -> CommandResult:
    """Run one command on a merged config; library errors propagate."""
    runner = COMMANDS[command]
    ctx = RunContext(command, config, workers)
    logger.info(f"Running '{command}' (seed {ctx.seed}, {workers} worker(s))")
    return runner(ctx)
