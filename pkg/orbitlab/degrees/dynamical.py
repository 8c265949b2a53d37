"""Exact dynamical degrees of monomial maps and the laws they satisfy."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import List

from orbitlab.algebra.matrix import IntMatrix, exterior_power
from orbitlab.algebra.spectral import SpectralInterval, spectral_radius
from orbitlab.degrees.sequences import DynDegReport
from orbitlab.errors import IndexRangeError, InvalidArgumentError, SingularMatrixError
from orbitlab.maps.monomial import monomial_inverse, monomial_is_birational

logger = logging.getLogger(__name__)


def _dyndeg_interval(A: IntMatrix, i: int, tol: float) -> SpectralInterval:
    if i == 0:
        return SpectralInterval.exact(1)
    if i == A.n:
        return SpectralInterval.exact(abs(A.det()))
    return spectral_radius(exterior_power(A, i), tol)


def monomial_dyndeg(A: IntMatrix, i: int, tol: float) -> DynDegReport:
    """lambda_i(f_A) = rho(wedge^i A), certified."""
    if not 0 <= i <= A.n:
        raise IndexRangeError(f"dynamical degree index {i} outside 0..{A.n}")
    if A.det() == 0:
        raise SingularMatrixError(f"exponent matrix {A} is singular")
    interval = _dyndeg_interval(A, i, tol)
    return DynDegReport(
        i, float(interval.lower), float(interval.upper), interval.midpoint, "exact-monomial", interval
    )


def dynamical_degrees(A: IntMatrix, tol: float) -> List[DynDegReport]:
    return [monomial_dyndeg(A, i, tol) for i in range(A.n + 1)]


def lyapunov_exponents(A: IntMatrix, tol: float) -> List[SpectralInterval]:
    """mu_i = lambda_i / lambda_{i-1} for i = 1..n, followed by mu_{n+1} = 0."""
    lams = [r.interval for r in dynamical_degrees(A, tol)]
    mus = [lams[i].divided_by(lams[i - 1]) for i in range(1, len(lams))]
    mus.append(SpectralInterval.exact(0))
    return mus


@dataclass
class LawCheck:
    name: str
    i: int
    m: int
    passed: bool
    detail: str = ""


@dataclass
class DegreeLawReport:
    matrix: IntMatrix
    checks: List[LawCheck] = field(default_factory=list)

    @property
    def violations(self) -> List[LawCheck]:
        return [c for c in self.checks if not c.passed]

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_degree_laws(A: IntMatrix, m_max: int, tol: float) -> DegreeLawReport:
    """Power compatibility, log concavity and (for birational A) inverse duality.

    A failed check is an implementation defect, never a counterexample.
    """
    if m_max < 2:
        raise InvalidArgumentError("m_max must be at least 2")
    if A.det() == 0:
        raise SingularMatrixError(f"exponent matrix {A} is singular")
    n = A.n
    report = DegreeLawReport(A)
    lams = [_dyndeg_interval(A, i, tol) for i in range(n + 1)]

    for m in range(1, m_max + 1):
        Am = A**m
        for i in range(n + 1):
            wedge_m = exterior_power(Am, i)
            exact = wedge_m == exterior_power(A, i) ** m
            report.checks.append(LawCheck("power-exact", i, m, exact))
            lam_m = _dyndeg_interval(Am, i, tol)
            expected = lams[i].power(m)
            report.checks.append(
                LawCheck(
                    "power-interval", i, m, lam_m.overlaps(expected),
                    f"rho(wedge^{i} A^{m}) in {lam_m}, rho(wedge^{i} A)^{m} in {expected}",
                )
            )

    for i in range(1, n):
        lhs = lams[i - 1].lower * lams[i + 1].lower
        rhs = lams[i].upper ** 2
        passed = float(lhs) <= float(rhs) * (1 + tol)
        report.checks.append(
            LawCheck("log-concavity", i, 1, passed, f"{float(lhs):.12g} <= {float(rhs):.12g}")
        )

    if monomial_is_birational(A):
        inverse = monomial_inverse(A)
        for i in range(n + 1):
            lam_inv = _dyndeg_interval(inverse, i, tol)
            report.checks.append(
                LawCheck(
                    "inverse-duality", i, 1, lam_inv.overlaps(lams[n - i]),
                    f"lambda_{i}(f^-1) in {lam_inv}, lambda_{n - i}(f) in {lams[n - i]}",
                )
            )

    for v in report.violations:
        logger.error(f"degree law {v.name} fails at i={v.i}, m={v.m} for {A}: {v.detail}")
    return report
