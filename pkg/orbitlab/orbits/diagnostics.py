"""Gap tracking for the recursive height inequality h_{(k+1)m} >= c h_{km} + ..."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import List, Optional

from orbitlab.errors import InvalidArgumentError, TooShortRecordError
from orbitlab.orbits.records import OrbitRecord

logger = logging.getLogger(__name__)


@dataclass
class GapReport:
    c: float
    m: int
    beta: float
    gaps: List[float] = field(default_factory=list)
    ratios: List[float] = field(default_factory=list)
    first_positive: Optional[int] = None

    @property
    def fraction_above_beta(self) -> float:
        if not self.ratios:
            return 0.0
        return sum(1 for r in self.ratios if r >= self.beta) / len(self.ratios)

    @property
    def message(self) -> str:
        if self.first_positive is None:
            return f"no positive gap found at this (c,m) = ({self.c}, {self.m})"
        return f"first positive gap at k={self.first_positive}"

    def to_dict(self) -> dict:
        return {
            "c": self.c,
            "m": self.m,
            "beta": self.beta,
            "first_positive": self.first_positive,
            "fraction_above_beta": self.fraction_above_beta,
            "message": self.message,
        }


def recursive_gap_tracker(rec: OrbitRecord, c: float, m: int, beta: float) -> GapReport:
    """G_k = h_{(k+1)m} - c * h_{km} along the record, and growth ratios G_{k+1}/G_k.

    Ratios are taken only between consecutive positive gaps. This mirrors the
    mechanism of the lower-bound argument; it proves nothing.
    """
    if m < 1:
        raise InvalidArgumentError("step m must be at least 1")
    heights = [v.h for v in rec.unrolled_heights()]
    if len(heights) < 3 * m:
        raise TooShortRecordError(f"gap tracking at m={m} needs {3 * m} entries, record has {len(heights)}")
    report = GapReport(c, m, beta)
    k = 0
    while (k + 1) * m < len(heights):
        report.gaps.append(heights[(k + 1) * m] - c * heights[k * m])
        k += 1
    for k, g in enumerate(report.gaps):
        if g > 0 and report.first_positive is None:
            report.first_positive = k
    for g0, g1 in zip(report.gaps, report.gaps[1:]):
        if g0 > 0 and g1 > 0:
            report.ratios.append(g1 / g0)
    if report.first_positive is None:
        logger.info(report.message)
    return report
