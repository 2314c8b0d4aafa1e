"""Timing the recurrences against the convolution oracles.

A benchmark never reports timings for wrong answers: every method's output is
compared with the recurrence first, and a disagreement raises
:class:`BenchMismatch` instead of returning results.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from hyppow.families import TransformSpec, family_coeffs
from hyppow.numerics import Backend
from hyppow.series import cauchy_cube_oracle, cauchy_square_oracle

# Float recurrences drift slowly with n (about 2e-9 relative by n = 2000 for
# the elliptic triples), so the complex cross-check is looser than the
# identity checks' 1e-9.
COMPLEX_RTOL = 1e-8


class Method(str, Enum):
    RECURRENCE = "recurrence"
    CAUCHY_BINARY = "cauchy-binary"
    CAUCHY_TRIPLE_LOOP = "cauchy-triple-loop"


class BenchMismatch(RuntimeError):
    def __init__(self, method: Method, N: int, index: int, detail: str):
        super().__init__(f"{method.value} disagrees with the recurrence at N={N}, index {index}: {detail}")
        self.method = method
        self.N = N
        self.index = index


@dataclass(frozen=True)
class BenchResult:
    method: Method
    N: int
    wall_time: float
    backend: Backend

    def as_row(self) -> dict:
        return {"method": self.method.value, "N": self.N, "wall_time": self.wall_time, "backend": self.backend.value}


def _run(spec: TransformSpec, method: Method, N: int) -> list:
    if method is Method.RECURRENCE:
        return family_coeffs(spec, N).terms
    if spec.power == 2:
        if method is Method.CAUCHY_TRIPLE_LOOP:
            raise ValueError("the triple-loop oracle only exists for cubes")
        return cauchy_square_oracle(spec.triple, N).terms
    return cauchy_cube_oracle(spec.triple, N, triple_loop=method is Method.CAUCHY_TRIPLE_LOOP).terms


def _first_disagreement(reference: Sequence, other: Sequence, backend: Backend):
    if len(reference) != len(other):
        return 0, f"length {len(other)} != {len(reference)}"
    for n, (x, y) in enumerate(zip(reference, other)):
        if backend is Backend.RATIONAL:
            if x != y:
                return n, f"{y} != {x}"
        else:
            scale = max(abs(x), abs(y))
            if scale and abs(x - y) > COMPLEX_RTOL * scale:
                return n, f"relative error {abs(x - y) / scale:.3e}"
    return None


def _timed(fn):
    start = time.perf_counter()
    out = fn()
    elapsed = time.perf_counter() - start
    # perf_counter can tick coarsely on some platforms; keep the invariant wall_time > 0
    return out, max(elapsed, 1e-9)


def run_bench(
    spec: TransformSpec,
    Ns: Iterable[int],
    methods: Sequence[Method] = (Method.RECURRENCE, Method.CAUCHY_BINARY),
    inject_fault: bool = False,
) -> list[BenchResult]:
    """Time each method at each N after checking they agree.

    Only families whose series is a plain square or cube of one Gauss
    function can be benchmarked against the oracles.  ``inject_fault``
    perturbs the recurrence output so the refusal path can be exercised.
    """
    methods = [Method(m) for m in methods]
    if spec.family.value.startswith(("contiguous", "kummer")):
        raise ValueError(f"{spec.family.value} has no direct Cauchy-power oracle to benchmark against")
    backend = spec.triple.backend
    results: list[BenchResult] = []
    for N in Ns:
        outputs, times = {}, {}
        wanted = list(dict.fromkeys([Method.RECURRENCE, *methods]))
        for method in wanted:
            outputs[method], times[method] = _timed(lambda m=method: _run(spec, m, N))
        if inject_fault:
            rec = list(outputs[Method.RECURRENCE])
            rec[-1] = rec[-1] + 1
            outputs[Method.RECURRENCE] = rec
        reference = outputs[Method.RECURRENCE]
        for method in wanted[1:]:
            bad = _first_disagreement(reference, outputs[method], backend)
            if bad is not None:
                raise BenchMismatch(method, N, *bad)
        results.extend(BenchResult(m, N, times[m], backend) for m in methods)
    return results


def speedups(results: Sequence[BenchResult]) -> dict:
    """``{(method, N): oracle_time / recurrence_time}`` for every oracle row."""
    rec = {r.N: r.wall_time for r in results if r.method is Method.RECURRENCE}
    return {
        (r.method.value, r.N): r.wall_time / rec[r.N]
        for r in results
        if r.method is not Method.RECURRENCE and r.N in rec
    }
