"""The command runners behind ``orbitlab <command>``."""

from __future__ import annotations

import logging
import math
from fractions import Fraction
from functools import lru_cache, partial
from typing import Any, List, Optional, Sequence, Tuple, Union

from orbitlab.algebra.matrix import IntMatrix
from orbitlab.degrees.criterion import classify_alpha, zdo_criterion
from orbitlab.degrees.dynamical import lyapunov_exponents, monomial_dyndeg, verify_degree_laws
from orbitlab.degrees.sequences import (
    DynDegReport,
    degree_sequence,
    lambda1_estimate,
    monomial_degree_sequence,
    term_cap_from_env,
)
from orbitlab.context import EXIT_CAP, EXIT_OK, EXIT_PROPERTY, CommandResult, RunContext
from orbitlab.errors import (
    ConfigError,
    IndexRangeError,
    TooShortRecordError,
    UnsupportedFeatureError,
)
from orbitlab.maps.monomial import MonomialMap
from orbitlab.maps.parser import parse_polynomial
from orbitlab.maps.point import ProjPointQ
from orbitlab.maps.rational_map import RationalMapPn
from orbitlab.orbits.alpha import alpha_estimate, check_alpha_bound
from orbitlab.orbits.diagnostics import recursive_gap_tracker
from orbitlab.orbits.interpolation import orbit_zariski_test
from orbitlab.orbits.records import (
    TRUNCATED,
    OrbitRecord,
    bit_cap_from_env,
    iterate_orbit,
    iterate_torus_orbit,
)
from orbitlab.orbits.returns import return_set
from orbitlab.orbits.search import (
    high_alpha_search,
    projective_seed_sampler,
    random_matrix,
    torus_seed_sampler,
)
from utils.output import Table

logger = logging.getLogger(__name__)

AnyMap = Union[RationalMapPn, MonomialMap]
Seed = Union[ProjPointQ, Tuple[Fraction, ...]]


@lru_cache(maxsize=32)
def _as_rational(map_obj: AnyMap) -> RationalMapPn:
    return map_obj.to_rational() if isinstance(map_obj, MonomialMap) else map_obj


def _run_orbit(map_obj: AnyMap, seed: Seed, N: int, map_id: str = "", bit_cap: Optional[int] = None) -> OrbitRecord:
    if isinstance(seed, ProjPointQ):
        return iterate_orbit(_as_rational(map_obj), seed, N, map_id, bit_cap)
    return iterate_torus_orbit(map_obj.A, seed, N, map_id)


def _seed_label(seed: Seed) -> str:
    if isinstance(seed, ProjPointQ):
        return str(seed)
    return "(" + ",".join(str(v) for v in seed) + ")"


def _parse_seed(raw: Sequence[Any], map_obj: AnyMap) -> Seed:
    try:
        values = tuple(Fraction(str(v)) for v in raw)
    except (TypeError, ValueError, ZeroDivisionError) as e:
        raise ConfigError(f"bad seed {raw!r}: {e}") from e
    if isinstance(map_obj, MonomialMap) and len(values) == map_obj.n:
        return values
    if len(values) != map_obj.n + 1:
        raise ConfigError(f"seed {raw!r} is not a point of P^{map_obj.n}")
    return ProjPointQ.normalized(values)


def _seeds(ctx: RunContext, default_count: int, projective_only: bool = False) -> List[Seed]:
    map_obj = ctx.map
    if ctx.params["seeds"]:
        seeds = [_parse_seed(raw, map_obj) for raw in ctx.params["seeds"]]
    else:
        sampler = ctx.params["sampler"]
        kind = sampler["kind"] or ("torus" if isinstance(map_obj, MonomialMap) else "projective")
        rng = ctx.rng()
        if kind == "torus":
            if not isinstance(map_obj, MonomialMap):
                raise ConfigError("torus sampling needs a monomial map")
            seeds = [
                tuple(Fraction(v) for v in s)
                for s in torus_seed_sampler(rng, map_obj.n, default_count, sampler["bound"])
            ]
        elif kind == "projective":
            seeds = list(projective_seed_sampler(rng, map_obj.n, default_count, sampler["bound"]))
        else:
            raise ConfigError(f"unknown sampler kind {kind!r}")
    if projective_only:
        seeds = [s if isinstance(s, ProjPointQ) else ProjPointQ.normalized(list(s) + [1]) for s in seeds]
    return seeds


def _lambda1(ctx: RunContext) -> DynDegReport:
    map_obj = ctx.map
    if isinstance(map_obj, MonomialMap):
        return monomial_dyndeg(map_obj.A, 1, ctx.params["tol"])
    seq = degree_sequence(map_obj, max(2, ctx.params["horizon"]), term_cap_from_env())
    return lambda1_estimate(seq)


def cmd_degrees(ctx: RunContext) -> CommandResult:
    map_obj = ctx.map
    N = ctx.params["horizon"]
    if isinstance(map_obj, MonomialMap) and not ctx.params["via_compose"]:
        seq = monomial_degree_sequence(map_obj.A, N)
    else:
        seq = degree_sequence(_as_rational(map_obj), N, term_cap_from_env())

    table = Table(["n", "deg", "deg_root", "ratio"])
    for n, d in enumerate(seq.degs):
        root = d ** (1.0 / n) if n else None
        ratio = d / seq.degs[n - 1] if n else None
        table.add(n, d, root, ratio)

    result = CommandResult(table=table, summary={"degs": list(seq.degs), "truncated": seq.truncated})
    if len(seq.degs) >= 3:
        lam = lambda1_estimate(seq)
        result.summary.update(lambda1_upper=lam.upper, lambda1_estimate=lam.estimate)
    violations = seq.submultiplicativity_violations()
    if violations:
        result.exit_code = EXIT_PROPERTY
        result.message = f"submultiplicativity fails at {violations[:5]}"
    elif seq.truncated:
        result.exit_code = EXIT_CAP
        result.message = f"term cap exceeded; sequence stops at n={seq.horizon}"
    return result


def cmd_dyndeg(ctx: RunContext) -> CommandResult:
    map_obj = ctx.map
    tol = ctx.params["tol"]
    table = Table(["i", "lower", "upper", "estimate", "method", "mu_lower", "mu_upper"])

    if isinstance(map_obj, MonomialMap):
        n = map_obj.n
        indices = ctx.params["indices"] if ctx.params["indices"] is not None else list(range(n + 1))
        for i in indices:
            if not 0 <= i <= n:
                raise IndexRangeError(f"dynamical degree index {i} outside 0..{n}")
        mus = lyapunov_exponents(map_obj.A, tol)
        for i in indices:
            r = monomial_dyndeg(map_obj.A, i, tol)
            mu = mus[i - 1] if i else None
            table.add(i, r.lower, r.upper, r.estimate, r.method,
                      mu.lower if mu else None, mu.upper if mu else None)
        return CommandResult(table=table, summary={"n": n, "mu_after_top": 0})

    indices = ctx.params["indices"] if ctx.params["indices"] is not None else [0, 1]
    unsupported = [i for i in indices if i >= 2]
    if unsupported:
        raise UnsupportedFeatureError(
            f"lambda_i for i >= 2 is only computed for monomial maps (requested {unsupported})"
        )
    lam1 = None
    for i in indices:
        if i < 0:
            raise IndexRangeError(f"dynamical degree index {i} is negative")
        if i == 0:
            table.add(0, 1.0, 1.0, 1.0, "exact", None, None)
            continue
        lam1 = lam1 or _lambda1(ctx)
        table.add(1, lam1.lower, lam1.upper, lam1.estimate, lam1.method, lam1.lower, lam1.upper)
    return CommandResult(table=table, summary={"n": map_obj.n})


def cmd_orbit(ctx: RunContext) -> CommandResult:
    map_obj = ctx.map
    N = ctx.params["horizon"]
    w_text = ctx.params["w"]
    w = parse_polynomial(w_text, map_obj.n + 1) if w_text else None
    seeds = _seeds(ctx, 1, projective_only=w is not None)
    run = partial(_run_orbit, map_id=ctx.map_id, bit_cap=bit_cap_from_env())
    records = ctx.fan_out(run, [(map_obj, s, N) for s in seeds])

    columns = ["seed_index", "n", "h", "log_h", "status"] + (["in_return_set"] if w else [])
    table = Table(columns)
    result = CommandResult(table=table, summary={"statuses": [], "return_sets": []})
    for index, rec in enumerate(records):
        members = set()
        if w is not None:
            analysis = return_set(rec, w)
            members = set(analysis.members)
            result.summary["return_sets"].append(analysis.to_dict())
        result.summary["statuses"].append(str(rec.status))
        for n, hv in enumerate(rec.unrolled_heights()):
            log_h = math.log(hv.h) if hv.h > 0 else float("-inf")
            row = [index, n, hv.h, log_h, str(rec.status)]
            if w is not None:
                row.append(n in members)
            table.add(*row)
        if rec.status.kind == TRUNCATED:
            result.exit_code = EXIT_CAP
            result.message = f"coordinate bit cap exceeded for seed {index} at step {rec.status.step}"
    return result


def cmd_alpha(ctx: RunContext) -> CommandResult:
    map_obj = ctx.map
    N = ctx.params["horizon"]
    seeds = _seeds(ctx, 1)
    run = partial(_run_orbit, map_id=ctx.map_id, bit_cap=bit_cap_from_env())
    records = ctx.fan_out(run, [(map_obj, s, N) for s in seeds])
    monomial = isinstance(map_obj, MonomialMap)
    mus = lyapunov_exponents(map_obj.A, ctx.params["tol"]) if monomial else None
    gap = ctx.params["gap"]

    columns = ["seed_index", "seed", "status", "slope", "cesaro", "window_start", "window_end"]
    if monomial:
        columns += ["alpha_class", "class_distance"]
    if gap:
        columns += ["gap_first_positive", "gap_fraction_above_beta"]
    table = Table(columns)
    result = CommandResult(table=table)
    for index, rec in enumerate(records):
        try:
            est = alpha_estimate(rec)
        except TooShortRecordError as e:
            logger.warning(f"seed {index}: {e}")
            row = [index, _seed_label(seeds[index]), str(rec.status), None, None, None, None]
            row += [None, None] * monomial + [None, None] * bool(gap)
            table.add(*row)
            continue
        row = [index, _seed_label(seeds[index]), str(rec.status), est.slope_estimate,
               est.cesaro_estimate, est.window[0], est.window[1]]
        if monomial:
            cls = classify_alpha(est.slope_estimate, mus)
            row += [cls.label, cls.distance]
        if gap:
            report = recursive_gap_tracker(rec, float(gap["c"]), int(gap["m"]), float(gap["beta"]))
            row += [report.first_positive, report.fraction_above_beta]
        table.add(*row)
        if rec.status.kind == TRUNCATED:
            result.exit_code = EXIT_CAP
            result.message = f"coordinate bit cap exceeded for seed {index}"
    return result


def cmd_zdo(ctx: RunContext) -> CommandResult:
    map_obj = ctx.map
    if not isinstance(map_obj, MonomialMap):
        raise UnsupportedFeatureError("the dense-orbit criterion is decided for monomial maps only")
    tol = ctx.params["tol"]
    verdict = zdo_criterion(map_obj.A, tol)
    report = verdict.to_dict()
    report["matrix"] = map_obj.A.to_list()
    report["mu"] = [[float(m.lower), float(m.upper)] for m in lyapunov_exponents(map_obj.A, tol)]
    return CommandResult(report=report, summary={"verdict": verdict.verdict})


def _verify_job(
    A: IntMatrix, seed: Tuple[int, ...], m_max: int, tol: float, horizon: int, slack: float
) -> Tuple[int, int, float, float, bool, List[str]]:
    laws = verify_degree_laws(A, m_max, tol)
    rec = iterate_torus_orbit(A, seed, horizon, str(A))
    bound = check_alpha_bound(rec, monomial_dyndeg(A, 1, tol), slack)
    failures = [f"{v.name}(i={v.i}, m={v.m})" for v in laws.violations] + bound.failures
    return len(laws.checks), len(laws.violations), bound.estimate.slope_estimate, bound.lambda1_upper, bound.passed, failures


def cmd_verify(ctx: RunContext) -> CommandResult:
    params = ctx.params
    opts = params["verify"]
    rng = ctx.rng()
    matrices: List[IntMatrix] = []
    if ctx.config.get("map") is not None and isinstance(ctx.map, MonomialMap):
        matrices.append(ctx.map.A)
    skipped = 0
    for _ in range(params["samples"]):
        A = random_matrix(rng, opts["dim"], -opts["entry_bound"], opts["entry_bound"])
        if A.det() == 0:
            skipped += 1
            continue
        matrices.append(A)
    seeds = [next(torus_seed_sampler(rng, A.n, 1, params["sampler"]["bound"])) for A in matrices]
    jobs = [(A, s, params["m_max"], params["tol"], opts["horizon"], params["slack"]) for A, s in zip(matrices, seeds)]
    outcomes = ctx.fan_out(_verify_job, jobs)

    table = Table(["index", "matrix", "det", "law_checks", "law_violations", "alpha_slope", "lambda1_upper", "alpha_bound_ok"])
    failures: List[str] = []
    for index, (A, outcome) in enumerate(zip(matrices, outcomes)):
        checks, violations, slope, upper, passed, msgs = outcome
        table.add(index, str(A.to_list()).replace(" ", ""), A.det(), checks, violations, slope, upper, passed)
        failures.extend(f"matrix {index}: {m}" for m in msgs)

    result = CommandResult(table=table, summary={"matrices": len(matrices), "skipped_singular": skipped,
                                                 "failures": failures})
    if failures:
        result.exit_code = EXIT_PROPERTY
        result.message = f"{len(failures)} property violations; first: {failures[0]}"
    return result


def cmd_interpolate(ctx: RunContext) -> CommandResult:
    map_obj = ctx.map
    seed = _seeds(ctx, 1)[0]
    rec = _run_orbit(map_obj, seed, ctx.params["horizon"], ctx.map_id, bit_cap_from_env())
    points = rec.points if rec.points is not None else rec.torus_points
    table = Table(["d", "n_points", "n_monomials", "kernel_dim", "underdetermined", "method"])
    dims = []
    for d in range(1, ctx.params["d_max"] + 1):
        report = orbit_zariski_test(points, d)
        dims.append(report.kernel_dim)
        table.add(d, report.n_points, report.n_monomials, report.kernel_dim, report.underdetermined, report.method)
    summary = {"seed": _seed_label(seed), "status": str(rec.status), "kernel_dims": dims}
    if not any(dims):
        summary["conclusion"] = f"no obstruction to density up to degree {ctx.params['d_max']}"
    result = CommandResult(table=table, summary=summary)
    if rec.status.kind == TRUNCATED:
        result.exit_code = EXIT_CAP
        result.message = "coordinate bit cap exceeded while building the orbit"
    return result


def cmd_search(ctx: RunContext) -> CommandResult:
    map_obj = ctx.map
    seeds = _seeds(ctx, ctx.params["samples"])
    lam1 = _lambda1(ctx)
    orbit_fn = partial(_run_orbit, map_obj, map_id=ctx.map_id, bit_cap=bit_cap_from_env())
    found = high_alpha_search(orbit_fn, seeds, ctx.params["horizon"], ctx.params["eps"], lam1)

    table = Table(["rank", "seed", "status", "slope", "cesaro", "hit"])
    for rank, (rec, est) in enumerate(found.ranked, start=1):
        table.add(rank, _seed_label(rec.seed if isinstance(rec.seed, ProjPointQ) else rec.seed.values()),
                  str(rec.status), est.slope_estimate, est.cesaro_estimate,
                  est.slope_estimate >= found.threshold)
    summary = {"threshold": found.threshold, "hits": len(found.hits), "rejected": found.rejected,
               "lambda1_upper": lam1.upper}
    if not found.hits:
        logger.info("search finished with an empty hit set")
    return CommandResult(table=table, summary=summary, exit_code=EXIT_OK)
