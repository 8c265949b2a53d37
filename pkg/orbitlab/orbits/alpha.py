"""Arithmetic-degree estimators and the upper bound alpha <= lambda_1."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import List, Tuple

from orbitlab.degrees.sequences import DynDegReport
from orbitlab.errors import TooShortRecordError
from orbitlab.orbits.records import INDETERMINATE, OrbitRecord

logger = logging.getLogger(__name__)

MIN_ENTRIES = 8


@dataclass(frozen=True)
class AlphaEstimate:
    slope_estimate: float
    cesaro_estimate: float
    window: Tuple[int, int]

    def to_dict(self) -> dict:
        return {
            "slope_estimate": self.slope_estimate,
            "cesaro_estimate": self.cesaro_estimate,
            "window_start": self.window[0],
            "window_end": self.window[1],
        }


def alpha_estimate(rec: OrbitRecord) -> AlphaEstimate:
    """Slope and Cesaro estimators over the final third of the record.

    Both are built from log max(1, h_n) and clamped to >= 1. Periodic
    records have bounded heights and give exactly 1.
    """
    if rec.is_periodic:
        last = rec.horizon
        return AlphaEstimate(1.0, 1.0, (last - max(1, last // 3), last))
    if len(rec) < MIN_ENTRIES:
        where = f" ({rec.status})" if rec.status.kind == INDETERMINATE else ""
        raise TooShortRecordError(
            f"alpha estimate needs {MIN_ENTRIES} height entries, record has {len(rec)}{where}"
        )
    logs = [v.log_clamped for v in rec.heights]
    last = len(logs) - 1
    start = last - max(1, last // 3)
    # mean of successive differences telescopes
    slope = math.exp((logs[last] - logs[start]) / (last - start))
    cesaro = math.exp(logs[last] / last)
    return AlphaEstimate(max(1.0, slope), max(1.0, cesaro), (start, last))


@dataclass
class AlphaBoundReport:
    passed: bool
    estimate: AlphaEstimate
    lambda1_upper: float
    slack: float
    failures: List[str] = field(default_factory=list)


def check_alpha_bound(rec: OrbitRecord, lam1: DynDegReport, slack: float) -> AlphaBoundReport:
    est = alpha_estimate(rec)
    limit = lam1.upper * (1 + slack)
    report = AlphaBoundReport(est.slope_estimate <= limit, est, lam1.upper, slack)
    if not report.passed:
        report.failures.append(
            f"map={rec.map_id} seed={rec.seed} status={rec.status} window={est.window}: "
            f"slope {est.slope_estimate:.12g} > {lam1.upper:.12g} * (1 + {slack})"
        )
        logger.error(report.failures[-1])
    return report
