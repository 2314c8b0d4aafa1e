"""Definition-level series coefficients and Cauchy-product oracles.

Everything here works straight from the hypergeometric term
``(a)_n (b)_n / ((c)_n n!)`` and plain convolution, with no recurrence
involved.  These are the reference values the recurrence engine is tested
against.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from hyppow.numerics import (
    Backend,
    DomainError,
    ParameterTriple,
    Scalar,
    backend_of,
    common_backend,
    format_scalar,
    is_nonpositive_integer,
    one,
    pochhammer,
    to_backend,
    zero,
)

# Exact convolutions grow quadratically in integer size; keep requests desk-scale.
RATIONAL_N_CAP = 10_000


class Provenance(str, Enum):
    ORACLE = "oracle"
    RECURRENCE = "recurrence"
    CLOSED_FORM = "closed-form"


@dataclass
class CoeffSeq:
    """Prefix ``t_0 .. t_N`` of a Maclaurin coefficient sequence.

    ``metadata`` carries anything a producer wants to record, such as indices
    filled by the fallback oracle (``"substituted"``), the first index whose
    float value overflowed (``"overflow_index"``) or a family's exponent law.
    """

    terms: list
    provenance: Provenance
    params: dict = field(default_factory=dict)
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.terms:
            raise ValueError("CoeffSeq needs at least one term")

    def __len__(self):
        return len(self.terms)

    def __getitem__(self, i):
        return self.terms[i]

    def __iter__(self):
        return iter(self.terms)

    @property
    def N(self) -> int:
        return len(self.terms) - 1

    @property
    def backend(self) -> Backend:
        return backend_of(self.terms[0])

    @property
    def overflowed(self) -> bool:
        return self.metadata.get("overflow_index") is not None

    def formatted(self) -> list[str]:
        return [format_scalar(t) for t in self.terms]


def check_length(N: int, backend: Backend) -> None:
    if N < 0:
        raise ValueError("N must be nonnegative")
    if backend is Backend.RATIONAL and N > RATIONAL_N_CAP:
        raise ValueError(f"N={N} exceeds the exact-arithmetic cap of {RATIONAL_N_CAP}")


def f_coeff(p: ParameterTriple, n: int) -> Scalar:
    """``(a)_n (b)_n / ((c)_n n!)``, the n-th coefficient of F(a,b;c;z)."""
    return pochhammer(p.a, n) * pochhammer(p.b, n) / (pochhammer(p.c, n) * math.factorial(n))


def f_coeffs(p: ParameterTriple, N: int) -> list:
    """``[f_coeff(p, 0), ..., f_coeff(p, N)]`` by term ratios."""
    out = [one(p.backend)]
    a, b, c = p
    for k in range(N):
        out.append(out[-1] * (a + k) * (b + k) / ((c + k) * (k + 1)))
    return out


def pfq_coeff(upper: Sequence[Scalar], lower: Sequence[Scalar], n: int) -> Scalar:
    """Generic hypergeometric term ``prod (u_i)_n / (prod (l_j)_n n!)``."""
    for l in lower:
        if is_nonpositive_integer(l):
            raise DomainError(f"lower parameter {format_scalar(l)} is zero or a negative integer")
    backend = common_backend(*upper, *lower)
    num = one(backend)
    for u in upper:
        num *= pochhammer(to_backend(u, backend), n)
    den = to_backend(math.factorial(n), backend)
    for l in lower:
        den *= pochhammer(to_backend(l, backend), n)
    return num / den


def kummer_coeff(a: Scalar, c: Scalar, n: int) -> Scalar:
    """n-th Maclaurin coefficient of Kummer's M(a, c; x)."""
    return pfq_coeff([a], [c], n)


def kummer_coeffs(a: Scalar, c: Scalar, N: int) -> list:
    if is_nonpositive_integer(c):
        raise DomainError(f"c = {format_scalar(c)} is zero or a negative integer")
    backend = common_backend(a, c)
    a, c = to_backend(a, backend), to_backend(c, backend)
    out = [one(backend)]
    for k in range(N):
        out.append(out[-1] * (a + k) / ((c + k) * (k + 1)))
    return out


def convolve(s: Sequence, t: Sequence, N: int) -> list:
    """First N+1 coefficients of the product of two series."""
    if len(s) < N + 1 or len(t) < N + 1:
        raise ValueError(f"need at least {N + 1} terms, got {len(s)} and {len(t)}")
    out = []
    for n in range(N + 1):
        acc = s[0] * t[n]
        for k in range(1, n + 1):
            acc += s[k] * t[n - k]
        out.append(acc)
    return out


def convolve_at(s: Sequence, t: Sequence, n: int) -> Scalar:
    acc = s[0] * t[n]
    for k in range(1, n + 1):
        acc += s[k] * t[n - k]
    return acc


def cauchy_product_oracle(s, t, N: int) -> CoeffSeq:
    """Cauchy product of two coefficient sequences, truncated at index N."""
    s_terms = s.terms if isinstance(s, CoeffSeq) else list(s)
    t_terms = t.terms if isinstance(t, CoeffSeq) else list(t)
    if s_terms and t_terms and backend_of(s_terms[0]) is not backend_of(t_terms[0]):
        raise ValueError("factors use different backends")
    check_length(N, backend_of(s_terms[0]))
    params = {}
    if isinstance(s, CoeffSeq) and isinstance(t, CoeffSeq):
        params = {"left": s.params, "right": t.params}
    return CoeffSeq(convolve(s_terms, t_terms, N), Provenance.ORACLE, params)


def cauchy_square_oracle(p: ParameterTriple, N: int) -> CoeffSeq:
    check_length(N, p.backend)
    f = f_coeffs(p, N)
    return CoeffSeq(convolve(f, f, N), Provenance.ORACLE, {"family": "F^2", **p.describe()})


def cauchy_cube_oracle(p: ParameterTriple, N: int, triple_loop: bool = False) -> CoeffSeq:
    """Cube coefficients by two binary convolutions.

    ``triple_loop=True`` evaluates the literal double sum over (i, j) instead;
    same values, O(N^3) work.  It exists for benchmarking.
    """
    check_length(N, p.backend)
    f = f_coeffs(p, N)
    if triple_loop:
        terms = _triple_loop(f, N)
    else:
        terms = convolve(convolve(f, f, N), f, N)
    meta = {"method": "triple-loop" if triple_loop else "binary"}
    return CoeffSeq(terms, Provenance.ORACLE, {"family": "F^3", **p.describe()}, meta)


def _triple_loop(f: list, N: int) -> list:
    """``sum_i sum_j f_i f_j f_{n-i-j}`` evaluated term by term.

    The inner sum over j runs through ``map`` so the O(N^3) loop stays in C,
    but every one of the ~N^3/6 products is still formed.
    """
    out = []
    for n in range(N + 1):
        acc = zero(backend_of(f[0]))
        for i in range(n + 1):
            m = n - i
            acc += f[i] * sum(map(operator.mul, f[: m + 1], f[m::-1]))
        out.append(acc)
    return out


def hypergeometric_sum(terms: Sequence, x) -> Scalar:
    """Horner evaluation of ``sum terms[k] x^k``."""
    acc = 0
    for t in reversed(terms):
        acc = acc * x + t
    return acc


__all__ = [
    "CoeffSeq",
    "Provenance",
    "RATIONAL_N_CAP",
    "cauchy_cube_oracle",
    "cauchy_product_oracle",
    "cauchy_square_oracle",
    "convolve",
    "convolve_at",
    "f_coeff",
    "f_coeffs",
    "hypergeometric_sum",
    "kummer_coeff",
    "kummer_coeffs",
    "pfq_coeff",
]
