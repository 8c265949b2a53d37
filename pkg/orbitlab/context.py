"""Shared state of one command run and the ordered worker fan-out."""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterable, List, Optional, Union

import numpy as np

from orbitlab.errors import ConfigError
from orbitlab.maps.monomial import MonomialMap
from orbitlab.maps.parser import parse_map_description
from orbitlab.maps.rational_map import RationalMapPn
from utils.output import Table

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_CAP = 3
EXIT_PROPERTY = 4


@dataclass
class RunContext:
    command: str
    config: Dict[str, Any]
    workers: int = 1
    _map: Optional[Union[RationalMapPn, MonomialMap]] = field(default=None, repr=False)

    @property
    def params(self) -> Dict[str, Any]:
        return self.config["params"]

    @property
    def seed(self) -> int:
        return self.params["seed"]

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)

    @property
    def map(self) -> Union[RationalMapPn, MonomialMap]:
        if self._map is None:
            desc = self.config.get("map")
            if desc is None:
                raise ConfigError(f"command '{self.command}' needs a 'map' in the config")
            self._map = parse_map_description(desc)
            logger.info(f"Built map {self._map}")
        return self._map

    @property
    def map_id(self) -> str:
        desc = self.config.get("map") or {}
        return str(desc.get("name") or desc.get("kind") or "")

    def fan_out(self, fn: Callable[..., Any], jobs: Iterable[tuple]) -> List[Any]:
        """Apply fn to each job tuple; results come back in input order."""
        jobs = list(jobs)
        if self.workers <= 1 or len(jobs) <= 1:
            return [fn(*job) for job in jobs]
        with ProcessPoolExecutor(max_workers=self.workers) as executor:
            return list(executor.map(fn, *zip(*jobs)))


@dataclass
class CommandResult:
    """A CSV table or a JSON report, plus exit code and ledger summary."""

    exit_code: int = EXIT_OK
    table: Optional[Table] = None
    report: Optional[Dict[str, Any]] = None
    summary: Dict[str, Any] = field(default_factory=dict)
    message: str = ""
