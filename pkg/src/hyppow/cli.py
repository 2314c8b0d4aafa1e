"""Command-line interface: ``hyppow coeffs | eval | verify | bench``.

Exit codes
    0  success
    1  a verification did not pass
    2  invalid parameters, or an argument outside the domain
    3  zero recurrence denominator under ``--policy error``
    4  benchmark cross-check failed; no timings were reported

Environment
    HYPPOW_OUT_DIR  directory that relative ``--out`` paths are resolved against
    HYPPOW_JOBS     worker threads for ``verify`` (default: CPU count)
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from decimal import Context, Decimal
from fractions import Fraction
from pathlib import Path

from hyppow.bench import BenchMismatch, Method, run_bench, speedups
from hyppow.families import (
    Family,
    MissingParameterError,
    UnknownFamilyError,
    catalog_lookup,
    evaluate_adaptive,
    family_coeffs,
)
from hyppow.numerics import Backend, DomainError, format_scalar, parse_scalar
from hyppow.recurrence import FallbackMode, FallbackPolicy, ZeroDenominatorError
from hyppow.series import CoeffSeq
from hyppow.suites import SUITES, build_suite, bundle, run_tasks

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INVALID = 2
EXIT_ZERO_DENOMINATOR = 3
EXIT_BENCH_MISMATCH = 4

FLOAT_DIGITS = 20
_DECIMAL = Context(prec=FLOAT_DIGITS)


class UsageError(ValueError):
    """Bad combination of flags; reported with exit code 2."""


# ---------------------------------------------------------------- formatting


def float_string(x) -> str:
    """Value to 20 significant digits; complex values as ``re+imi``."""
    if isinstance(x, Fraction):
        d = _DECIMAL.divide(Decimal(x.numerator), Decimal(x.denominator))
        return format(d, f".{FLOAT_DIGITS}g")
    x = complex(x)
    re = format(Decimal(x.real), f".{FLOAT_DIGITS}g")
    if x.imag == 0:
        return re
    im = format(Decimal(x.imag), f".{FLOAT_DIGITS}g")
    sign = "" if im.startswith("-") else "+"
    return f"{re}{sign}{im}i"


def output_records(seq: CoeffSeq, scale: int = 1, shift: int = 0) -> list[dict]:
    out = []
    for n, t in enumerate(seq.terms):
        out.append(
            {
                "n": n,
                "exponent": scale * n + shift,
                "value_exact": str(t) if isinstance(t, Fraction) else "",
                "value_float": float_string(t),
            }
        )
    return out


FIELDS = ("n", "exponent", "value_exact", "value_float")


def render_csv(records: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=FIELDS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(records)
    return buf.getvalue()


def resolve_out(path: str | None) -> Path | None:
    if path is None:
        return None
    p = Path(path)
    base = os.environ.get("HYPPOW_OUT_DIR")
    if base and not p.is_absolute():
        p = Path(base) / p
    p.parent.mkdir(parents=True, exist_ok=True)
    return p


def emit(text: str, out: str | None) -> None:
    target = resolve_out(out)
    if target is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        target.write_text(text if text.endswith("\n") else text + "\n")


def default_jobs() -> int:
    env = os.environ.get("HYPPOW_JOBS")
    if env:
        try:
            jobs = int(env)
        except ValueError:
            raise UsageError(f"HYPPOW_JOBS must be an integer, got {env!r}") from None
        if jobs < 1:
            raise UsageError("HYPPOW_JOBS must be at least 1")
        return jobs
    return os.cpu_count() or 1


# ---------------------------------------------------------------- parameters


def _scalar(text: str):
    try:
        return parse_scalar(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _add_param_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--a", type=_scalar, help="first upper parameter (p/q, decimal or re+imi)")
    p.add_argument("--b", type=_scalar, help="second upper parameter")
    p.add_argument("--c", type=_scalar, help="lower parameter")
    p.add_argument("--m", type=_scalar, help="polynomial degree for orthogonal-polynomial families")
    p.add_argument("--alpha", type=_scalar, help="weight alpha (Gegenbauer, Jacobi, trigonometric)")
    p.add_argument("--beta", type=_scalar, help="weight beta (Jacobi)")


def _family_params(args) -> dict:
    return {k: getattr(args, k) for k in ("a", "b", "c", "m", "alpha", "beta") if getattr(args, k, None) is not None}


def _backend(name: str | None) -> Backend | None:
    if name in (None, "auto"):
        return None
    return Backend(name)


def spec_from_args(args, default_family: str | None = None):
    """A family name wins; otherwise ``--a --b --c --power`` select F^2 or F^3."""
    family = args.family or default_family
    params = _family_params(args)
    if family is None:
        if not all(k in params for k in "abc"):
            raise UsageError("give --family, or all of --a --b --c")
        family = Family.F_CUBED if getattr(args, "power", 2) == 3 else Family.F_SQUARED
    return catalog_lookup(family, params, _backend(getattr(args, "backend", None)))


# ---------------------------------------------------------------- commands


def cmd_coeffs(args) -> int:
    spec = spec_from_args(args)
    policy = None
    if args.policy == "error":
        policy = FallbackPolicy(FallbackMode.ERROR)
    seq = family_coeffs(spec, args.n, policy)
    records = output_records(seq, spec.exponent_scale, spec.power_shift)
    if args.format == "csv":
        text = render_csv(records)
    else:
        text = json.dumps(
            {
                "family": spec.family.value,
                "params": spec.describe(),
                "prefactor": str(spec.prefactor),
                "substituted": seq.metadata.get("substituted", []),
                "records": records,
            },
            indent=2,
        )
    emit(text, args.out)
    return EXIT_OK


def cmd_eval(args) -> int:
    spec = spec_from_args(args)
    z = args.z
    value, tail, N = evaluate_adaptive(spec, z, args.target)
    result = {
        "family": spec.family.value,
        "z": format_scalar(z),
        "value": float_string(value),
        "tail_bound": tail,
        "terms": N + 1,
    }
    if args.format == "json":
        emit(json.dumps(result, indent=2), args.out)
    else:
        tail_txt = "none" if tail is None else f"{tail:.3e}"
        emit(f"{result['value']}\ttail_bound={tail_txt}\tterms={N + 1}", args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    overrides = _family_params(args)
    overrides.pop("m", None)
    if args.n is not None:
        overrides["N"] = args.n
    if args.power is not None:
        overrides["power"] = args.power
    if args.samples:
        overrides["samples"] = [float(s) for s in args.samples.split(",")]
    _check_verify_params(args.suite, overrides)
    jobs = args.jobs if args.jobs is not None else default_jobs()
    reports = run_tasks(build_suite(args.suite, overrides), jobs)
    doc = bundle(args.suite, reports)
    emit(json.dumps(doc, indent=2, default=str), args.out)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_VERIFY_FAILED


_SUITE_PARAMS = {
    "clausen": "ab",
    "ramanujan-preece": "ac",
    "monotonicity": "abc",
    "contiguous": "abc",
    "gamma-limit": "abc",
}


def _check_verify_params(suite: str, overrides: dict) -> None:
    given = {k for k in ("a", "b", "c") if k in overrides}
    if not given:
        return
    need = set(_SUITE_PARAMS.get(suite, ""))
    if not need:
        raise UsageError(f"suite {suite!r} does not take --a/--b/--c")
    if given != need:
        raise UsageError(f"suite {suite!r} needs exactly {', '.join('--' + k for k in sorted(need))}")


def _int_list(text: str) -> list[int]:
    try:
        values = [int(x) for x in text.split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not values or any(v < 0 for v in values):
        raise argparse.ArgumentTypeError("sizes must be nonnegative")
    return values


def cmd_bench(args) -> int:
    spec = spec_from_args(args, default_family=None if args.a is not None else "k3")
    Ns = [n for group in args.N for n in group] if args.N else [1000]
    methods = [Method(m) for m in args.methods.split(",")]
    try:
        results = run_bench(spec, Ns, methods, inject_fault=args.inject_fault)
    except BenchMismatch as exc:
        print(f"hyppow: {exc}; refusing to report timings", file=sys.stderr)
        return EXIT_BENCH_MISMATCH
    rows = [r.as_row() for r in results]
    ratios = speedups(results)
    if args.format == "json":
        doc = {
            "family": spec.family.value,
            "results": rows,
            "speedup": [{"method": m, "N": n, "ratio": v} for (m, n), v in ratios.items()],
        }
        emit(json.dumps(doc, indent=2), args.out)
    else:
        lines = [f"{'method':<20}{'N':>8}{'backend':>10}{'wall_time_s':>14}{'speedup':>10}"]
        for r in results:
            ratio = ratios.get((r.method.value, r.N))
            ratio_txt = f"{ratio:.1f}x" if ratio is not None else "-"
            lines.append(f"{r.method.value:<20}{r.N:>8}{r.backend.value:>10}{r.wall_time:>14.6f}{ratio_txt:>10}")
        emit("\n".join(lines), args.out)
    return EXIT_OK


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyppow",
        description="Maclaurin coefficients of squares and cubes of Gauss hypergeometric functions.",
        epilog="Exit codes: 0 ok, 1 verification not passed, 2 invalid input, 3 zero denominator, 4 bench mismatch.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    families = [f.value for f in Family]

    p = sub.add_parser("coeffs", help="coefficient table for a family or a raw triple")
    p.add_argument("--family", choices=families)
    _add_param_flags(p)
    p.add_argument("--power", type=int, choices=(2, 3), default=2, help="power of F for a raw triple")
    p.add_argument("-n", type=int, default=10, help="highest index (default 10)")
    p.add_argument("--backend", choices=("auto", "rational", "complex"), default="auto")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--policy", choices=("oracle", "error"), default="oracle",
                   help="on a zero recurrence denominator: substitute the oracle value, or stop")
    p.add_argument("--out", help="write here instead of stdout")
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("eval", help="evaluate a family's series at a point")
    p.add_argument("--family", choices=families, required=True)
    _add_param_flags(p)
    p.add_argument("--z", type=_scalar, required=True)
    p.add_argument("--target", type=float, default=1e-12, help="tail bound to reach (default 1e-12)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_eval, backend="complex")

    p = sub.add_parser("verify", help="run identity checks and print a JSON report bundle")
    p.add_argument("suite", choices=SUITES)
    _add_param_flags(p)
    p.add_argument("-n", type=int, help="highest index checked")
    p.add_argument("--power", type=int, choices=(2, 3), help="contiguous suite: 2 or 3")
    p.add_argument("--samples", help="k-log suite: comma-separated points in (0, 1)")
    p.add_argument("--jobs", type=int, help="worker threads (default HYPPOW_JOBS or CPU count)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="time recurrences against the convolution oracles")
    p.add_argument("--family", choices=families)
    _add_param_flags(p)
    p.add_argument("--power", type=int, choices=(2, 3), default=3)
    p.add_argument("-N", type=_int_list, action="append", help="sizes, repeatable or comma-separated")
    p.add_argument("--methods", default="recurrence,cauchy-binary",
                   help="comma-separated: recurrence, cauchy-binary, cauchy-triple-loop")
    p.add_argument("--backend", choices=("auto", "rational", "complex"), default="auto")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    p.add_argument("--out")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "n", None) is not None and args.n < 0:
        print("hyppow: -n must be nonnegative", file=sys.stderr)
        return EXIT_INVALID
    try:
        return args.func(args)
    except ZeroDenominatorError as exc:
        print(f"hyppow: {exc}", file=sys.stderr)
        return EXIT_ZERO_DENOMINATOR
    except (DomainError, UsageError, UnknownFamilyError, MissingParameterError, ValueError, KeyError) as exc:
        print(f"hyppow: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
