"""Dense-orbit criterion lambda_3 < lambda_1 for birational monomial maps."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from orbitlab.algebra.matrix import IntMatrix
from orbitlab.algebra.spectral import SpectralInterval
from orbitlab.degrees.dynamical import monomial_dyndeg
from orbitlab.maps.monomial import invariant_monomials, monomial_is_birational

logger = logging.getLogger(__name__)

SATISFIED = "criterion-satisfied"
SATISFIED_VIA_INVERSE = "criterion-satisfied-via-inverse"
FAILS = "criterion-fails"
INCONCLUSIVE = "inconclusive"
NOT_APPLICABLE = "criterion-not-applicable"


@dataclass
class ZdoVerdict:
    verdict: str
    n: int
    birational: bool
    lambda1: Optional[SpectralInterval] = None
    lambda3: Optional[SpectralInterval] = None
    invariant_basis: List[Tuple[int, ...]] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    @property
    def monomial_invariant_free(self) -> bool:
        return not self.invariant_basis

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "n": self.n,
            "birational": self.birational,
            "lambda1": None if self.lambda1 is None else [float(self.lambda1.lower), float(self.lambda1.upper)],
            "lambda3": None if self.lambda3 is None else [float(self.lambda3.lower), float(self.lambda3.upper)],
            "monomial_invariant_free": self.monomial_invariant_free,
            "invariant_monomials": [list(v) for v in self.invariant_basis],
            "notes": list(self.notes),
        }


def _compare(small: SpectralInterval, large: SpectralInterval) -> Optional[bool]:
    """True if certainly small < large, False if certainly not, None if undecided."""
    if small.upper < large.lower:
        return True
    if small.lower >= large.upper:
        return False
    return None


def zdo_criterion(A: IntMatrix, tol: float) -> ZdoVerdict:
    n = A.n
    birational = monomial_is_birational(A)
    basis = invariant_monomials(A)
    if not birational:
        return ZdoVerdict(NOT_APPLICABLE, n, False, invariant_basis=basis,
                          notes=[f"|det A| = {abs(A.det())} != 1"])

    lam1 = monomial_dyndeg(A, 1, tol).interval
    verdict = ZdoVerdict(INCONCLUSIVE, n, True, lam1, invariant_basis=basis)
    if basis:
        verdict.notes.append(f"invariant monomials found: {[list(v) for v in basis]}")
    else:
        verdict.notes.append("monomial-invariant-free")

    if n <= 2:
        verdict.notes.append("lambda_3 condition is vacuous for n <= 2")
        one = SpectralInterval.exact(1)
        decided = _compare(one, lam1)
    else:
        lam3 = monomial_dyndeg(A, 3, tol).interval
        verdict.lambda3 = lam3
        if n == 3:
            verdict.notes.append("lambda_3 = |det A| = 1, so the test reduces to lambda_1 > 1")
        decided = _compare(lam3, lam1)
        if decided is False and n == 4 and _compare(lam1, lam3) is True:
            verdict.notes.append("lambda_1(f^-1) = lambda_3(f) > lambda_3(f^-1) = lambda_1(f)")
            verdict.verdict = SATISFIED_VIA_INVERSE
            return verdict

    if decided is True:
        verdict.verdict = SATISFIED
    elif decided is False:
        verdict.verdict = FAILS
    logger.info(f"zdo criterion for {A}: {verdict.verdict}")
    return verdict


@dataclass(frozen=True)
class AlphaClass:
    label: str
    value: float
    distance: float


def classify_alpha(alpha: float, mus: Sequence[SpectralInterval]) -> AlphaClass:
    """Snap an arithmetic-degree estimate to the nearest of mu_1, mu_2, 1."""
    candidates = [("1", 1.0)]
    for i, mu in enumerate(mus[:2], start=1):
        if mu.upper > 0:
            candidates.append((f"mu{i}", mu.midpoint))
    label, value = min(candidates, key=lambda c: abs(alpha - c[1]))
    return AlphaClass(label, value, abs(alpha - value))
