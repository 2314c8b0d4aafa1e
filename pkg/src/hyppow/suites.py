"""Named verification suites and their default parameter grids.

A suite is a list of zero-argument tasks, each producing one or more
:class:`VerificationReport`.  The CLI fans tasks out over a thread pool and
keeps the results in task order, so output never depends on scheduling.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction as Q
from typing import Callable, Iterable

from hyppow.corollaries import CATALOG, check_corollary
from hyppow.families import Family, catalog_lookup, family_coeffs, polynomial_truncation_check
from hyppow.identities import (
    Status,
    VerificationReport,
    contiguous_product_check,
    gamma_bounds_check,
    gamma_limit_check,
    k_log_ratio,
    k_log_ratio_check,
    ratio_monotonicity,
    verify_clausen,
    verify_ramanujan_preece,
)
from hyppow.numerics import ParameterTriple
from hyppow.recurrence import beta_gate, cube_start_convention_holds

Task = Callable[[], "list[VerificationReport]"]

CLAUSEN_VALUES = (Q(1, 4), Q(1, 3), Q(1, 2), Q(2, 3), Q(1), Q(3, 2))
CLAUSEN_PAIRS = tuple(itertools.combinations(CLAUSEN_VALUES, 2))[:10]
PREECE_PAIRS = ((Q(1), Q(2)), (Q(1, 2), Q(3, 2)), (Q(1, 3), Q(7, 4)), (Q(1), Q(1)))
MONOTONE_GRID = tuple(
    (a, b, c)
    for a, b in itertools.combinations_with_replacement((Q(1, 4), Q(1, 2), Q(1), Q(3, 2)), 2)
    for c in (Q(1, 2), Q(1), Q(2), Q(3))
    if (c - a) * (c - b) >= 0
)[:20]
CONTIGUOUS_GRID = (
    ((Q(1, 2), Q(1, 2), Q(1)), 2, 30),
    ((Q(1, 3), Q(1, 2), Q(5, 4)), 3, 20),
    ((Q(-1), Q(1, 2), Q(5, 4)), 2, 20),
    ((Q(1, 3), Q(2, 5), Q(7, 4)), 2, 30),
    ((Q(1, 3), Q(2, 5), Q(7, 4)), 3, 30),
    ((Q(-1, 2), Q(1, 2), Q(1)), 3, 30),
)
GAMMA_TRIPLES = ((0.25, 0.25, 1.0), (0.5, 0.5, 2.0))
K_LOG_SAMPLES = tuple(k / 10 for k in range(1, 10))
K_LOG_ENDPOINT = 1e-4
BETA_GATE_TRIPLES = (
    (Q(1, 2), Q(1, 2), Q(1)),
    (Q(-1, 2), Q(1, 2), Q(1)),
    (Q(1, 3), Q(2, 5), Q(7, 4)),
    (Q(5, 2), Q(-1, 3), Q(7, 3)),
    (Q(2, 7), Q(9, 4), Q(7, 3)),
    (Q(-3, 5), Q(4, 3), Q(1, 2)),
)


def truncation_grid() -> list[tuple[Family, dict]]:
    out = []
    for m in range(6):
        for fam in (Family.CHEBYSHEV2, Family.CHEBYSHEV3, Family.LEGENDRE2, Family.LEGENDRE3):
            out.append((fam, {"m": m}))
        for fam in (Family.GEGENBAUER2, Family.GEGENBAUER3):
            for al in (Q(1, 2), Q(1), Q(3, 2)):
                out.append((fam, {"m": m, "alpha": al}))
        for fam in (Family.JACOBI2, Family.JACOBI3):
            for al, be in itertools.product((Q(1, 2), Q(1)), repeat=2):
                out.append((fam, {"m": m, "alpha": al, "beta": be}))
    return out


# ---------------------------------------------------------------- polynomial oracles


def _poly_mul(p: list, q: list) -> list:
    out = [Q(0)] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        for j, y in enumerate(q):
            out[i + j] += x * y
    return out


def _poly_add(p: list, q: list) -> list:
    n = max(len(p), len(q))
    return [(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)]


def _scale(p: list, s) -> list:
    return [s * x for x in p]


def chebyshev_in_z(m: int) -> list:
    """Coefficients in z of ``T_m(1-2z)`` from ``T_{k+1} = 2x T_k - T_{k-1}``."""
    x = [Q(1), Q(-2)]
    prev, cur = [Q(1)], x
    if m == 0:
        return prev
    for _ in range(m - 1):
        prev, cur = cur, _poly_add(_scale(_poly_mul(x, cur), 2), _scale(prev, -1))
    return cur


def legendre_in_z(m: int) -> list:
    """Coefficients in z of ``P_m(1-2z)`` from ``(k+1)P_{k+1} = (2k+1)x P_k - k P_{k-1}``."""
    x = [Q(1), Q(-2)]
    prev, cur = [Q(1)], x
    if m == 0:
        return prev
    for k in range(1, m):
        nxt = _poly_add(_scale(_poly_mul(x, cur), Q(2 * k + 1, k + 1)), _scale(prev, Q(-k, k + 1)))
        prev, cur = cur, nxt
    return cur


def power_of(poly: list, k: int) -> list:
    out = [Q(1)]
    for _ in range(k):
        out = _poly_mul(out, poly)
    return out


def expansion_check(family: Family, m: int) -> VerificationReport:
    """Recurrence coefficients against a direct expansion of the polynomial power."""
    base = chebyshev_in_z(m) if family in (Family.CHEBYSHEV2, Family.CHEBYSHEV3) else legendre_in_z(m)
    power = 3 if family.value.endswith("3") else 2
    target = power_of(base, power)
    N = len(target) + 2
    target = target + [Q(0)] * (N + 1 - len(target))
    seq = family_coeffs(catalog_lookup(family, {"m": m}), N)
    residuals = [(n, seq[n] - target[n]) for n in range(N + 1) if seq[n] != target[n]]
    status = Status.FAIL if residuals else Status.PASS
    return VerificationReport(
        f"{family.value}-expansion",
        {"m": m},
        N,
        status,
        residuals[0][0] if residuals else None,
        residuals,
        "recurrence == direct expansion of the polynomial power",
    )


# ---------------------------------------------------------------- suites


def _real(x) -> float:
    return x.real if isinstance(x, complex) else float(x)


def k_log_endpoint_check(x: float = K_LOG_ENDPOINT, tol: float = 1e-6) -> VerificationReport:
    value = k_log_ratio(x)
    err = abs(value + math.pi**2 / 4)
    residuals = [] if err <= tol else [(0, err)]
    status = Status.FAIL if residuals else Status.PASS
    return VerificationReport(
        "k-log-endpoint", {"x": x, "tol": tol}, 0, status, 0 if residuals else None, residuals,
        f"value {value!r}, distance to -pi^2/4 {err:.3e}", {"value": value, "error": err},
    )


def corollary_reports(n_max: int = 50) -> list[Task]:
    tasks = []
    for entry in CATALOG:
        def task(entry=entry):
            seen, failures, grid_size = set(), [], 0
            for params in entry.grid:
                grid_size += 1
                res = check_corollary(entry, params, n_max)
                seen.update(res.errata_confirmed)
                for key, idx in res.mismatches + res.corrected_failures:
                    failures.append((idx if isinstance(idx, int) else 0, f"{key} at {params}"))
            missing = sorted(set(entry.errata) - seen)
            failures.extend((0, f"erratum {k} never observed") for k in missing)
            notes = "; ".join(f"{k}: {entry.errata[k].what}" for k in sorted(entry.errata))
            if entry.notes:
                notes = "; ".join(filter(None, [notes, entry.notes]))
            report = VerificationReport(
                f"corollary:{entry.family.value}",
                {"grid_points": grid_size, "n_max": n_max},
                n_max,
                Status.FAIL if failures else Status.PASS,
                failures[0][0] if failures else None,
                failures,
                notes,
                {"errata": sorted(entry.errata)},
            )
            return [report]

        tasks.append(task)
    return tasks


def beta_gate_report(triples=BETA_GATE_TRIPLES) -> VerificationReport:
    rows = beta_gate([ParameterTriple(*t) for t in triples])
    residuals = [
        (i, "fit not unique" if not r["unique"] else "shipped beta differs from fit")
        for i, r in enumerate(rows)
        if not (r["unique"] and r["consistent"] and r["beta0"] and r["beta1"] and r["beta2"])
    ]
    starts = [cube_start_convention_holds(ParameterTriple(*t)) for t in triples]
    notes = "cube recurrence numerators refit from oracle values at each triple"
    notes += "; running from n=1 with v_-1 = 0 reproduces v_2" if all(starts) else "; n=1 start does not reproduce v_2"
    return VerificationReport(
        "beta-gate",
        {"triples": [ParameterTriple(*t).describe() for t in triples]},
        29,
        Status.FAIL if residuals else Status.PASS,
        residuals[0][0] if residuals else None,
        residuals,
        notes,
        {"fits": rows, "n1_start": starts},
    )


def build_suite(name: str, overrides: dict | None = None) -> list[Task]:
    """Tasks for one suite.  ``overrides`` replaces the default grid with one point."""
    o = overrides or {}
    N = o.get("N")

    def single(fn, *args):
        return [lambda: [fn(*args)]]

    if name == "clausen":
        if "a" in o:
            return single(verify_clausen, o["a"], o["b"], N or 100)
        return [lambda a=a, b=b: [verify_clausen(a, b, N or 100)] for a, b in CLAUSEN_PAIRS]
    if name == "ramanujan-preece":
        if "a" in o:
            return single(verify_ramanujan_preece, o["a"], o["c"], N or 40)
        return [lambda a=a, c=c: [verify_ramanujan_preece(a, c, N or 40)] for a, c in PREECE_PAIRS]
    if name == "monotonicity":
        if "a" in o:
            return single(ratio_monotonicity, o["a"], o["b"], o["c"], N or 100)
        return [lambda t=t: [ratio_monotonicity(*t, N or 100)] for t in MONOTONE_GRID]
    if name == "contiguous":
        if "a" in o:
            p = ParameterTriple(o["a"], o["b"], o["c"])
            return single(contiguous_product_check, p, N or 30, o.get("power") or 2)
        return [
            lambda t=t, pw=pw, n=n: [contiguous_product_check(ParameterTriple(*t), N or n, pw)]
            for t, pw, n in CONTIGUOUS_GRID
        ]
    if name == "corollary-specializations":
        return corollary_reports()
    if name == "gamma-limit":
        triples = [tuple(_real(o[k]) for k in "abc")] if "a" in o else GAMMA_TRIPLES
        return [lambda t=t: [gamma_limit_check(*t, N=N or 2000), gamma_bounds_check(*t)] for t in triples]
    if name == "k-log":
        samples = o.get("samples") or K_LOG_SAMPLES
        return [lambda: [k_log_ratio_check(samples)], lambda: [k_log_endpoint_check()]]
    if name == "truncation":
        tasks = [
            lambda f=f, p=p: [polynomial_truncation_check(catalog_lookup(f, p))] for f, p in truncation_grid()
        ]
        for fam in (Family.CHEBYSHEV2, Family.LEGENDRE3):
            tasks.extend(lambda f=fam, m=m: [expansion_check(f, m)] for m in range(6))
        return tasks
    if name == "beta-gate":
        return [lambda: [beta_gate_report()]]
    if name == "all":
        if o:
            raise ValueError("suite 'all' runs the default grids and takes no parameters")
        return [t for s in SUITES if s != "all" for t in build_suite(s)]
    raise KeyError(f"unknown suite {name!r}")


SUITES = (
    "clausen",
    "ramanujan-preece",
    "monotonicity",
    "contiguous",
    "corollary-specializations",
    "gamma-limit",
    "k-log",
    "truncation",
    "beta-gate",
    "all",
)


def run_tasks(tasks: Iterable[Task], jobs: int = 1) -> list[VerificationReport]:
    """Run tasks on a bounded pool; results come back in task order."""
    tasks = list(tasks)
    if jobs <= 1 or len(tasks) <= 1:
        results = [t() for t in tasks]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(lambda t: t(), tasks))
    return [r for batch in results for r in batch]


def bundle(suite: str, reports: list[VerificationReport]) -> dict:
    counts = {s.value: 0 for s in Status}
    for r in reports:
        counts[r.status.value] += 1
    return {
        "suite": suite,
        "summary": {"total": len(reports), **counts},
        "reports": [r.to_json() for r in reports],
    }
