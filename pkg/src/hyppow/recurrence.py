"""Linear recurrences for the coefficients of F^2, F^3 and related products.

``square_coeffs`` runs the order-2 recurrence

    u_{n+1} = alpha0(n) u_n + alpha1(n) u_{n-1},   n >= 1,

and ``cube_coeffs`` the order-3 recurrence

    v_{n+1} = beta0(n) v_n + beta1(n) v_{n-1} + beta2(n) v_{n-2},   n >= 2.

Both are instances of :func:`run_recurrence`, which treats each coefficient
as a ``(numerator, denominator)`` pair so a vanishing denominator can be
detected and handled by a :class:`FallbackPolicy` instead of dividing by zero.
"""

from __future__ import annotations

from fractions import Fraction
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Sequence

import numpy as np

from hyppow.numerics import (
    POLE_TOL,
    Backend,
    DomainError,
    ParameterTriple,
    Scalar,
    backend_of,
    common_backend,
    format_scalar,
    is_finite,
    is_nonpositive_integer,
    is_zero,
    one,
    to_backend,
    zero,
)
from hyppow.series import (
    CoeffSeq,
    Provenance,
    check_length,
    convolve,
    convolve_at,
    f_coeffs,
    kummer_coeffs,
)

CoeffFn = Callable[[int], "tuple[Scalar, Scalar]"]


class ZeroDenominatorError(ArithmeticError):
    def __init__(self, factor: str, n: int):
        super().__init__(f"denominator factor {factor} vanishes at n={n}")
        self.factor = factor
        self.n = n


class FallbackMode(str, Enum):
    ERROR = "error"
    ORACLE_SUBSTITUTE = "oracle"


@dataclass(frozen=True)
class FallbackPolicy:
    """What to do when a recurrence coefficient has a zero denominator.

    ``oracle(i)`` must return the exact i-th term of the target sequence.
    """

    mode: FallbackMode = FallbackMode.ERROR
    oracle: Callable[[int], Scalar] | None = None

    def __post_init__(self):
        if self.mode is FallbackMode.ORACLE_SUBSTITUTE and self.oracle is None:
            raise ValueError("oracle substitution needs an oracle")


@dataclass(frozen=True)
class RecurrenceSpec:
    """``t_{n+1} = sum_j coeff_fns[j](n) * t_{n-j}`` for ``n >= start_index``.

    Back-references to negative indices read as zero.
    """

    coeff_fns: tuple
    initial: tuple
    start_index: int = 1
    name: str = ""
    params: dict = field(default_factory=dict)
    # optional n -> label of the vanishing denominator factor, for error messages
    diagnose: Callable[[int], "str | None"] | None = None

    @property
    def order(self) -> int:
        return len(self.coeff_fns)

    def __post_init__(self):
        if not self.coeff_fns:
            raise ValueError("a recurrence needs at least one coefficient")
        if len(self.initial) < self.start_index + 1:
            raise ValueError(
                f"start_index={self.start_index} needs {self.start_index + 1} initial values, "
                f"got {len(self.initial)}"
            )


# ---------------------------------------------------------------- coefficients


def _first_zero(factors) -> str | None:
    for label, value in factors:
        if is_zero(value):
            return label
    return None


def _product(factors):
    out = 1
    for _, value in factors:
        out = out * value
    return out


def alpha_parts(p: ParameterTriple, n: int):
    """Numerators of alpha0(n), alpha1(n) and the labelled denominator factors."""
    a, b, c = p
    num0 = (
        2 * n**3
        + 3 * (a + b + c - 1) * n**2
        + ((a + b) * (4 * c - 3) + 4 * a * b - c + 1) * n
        + 2 * a * b * (2 * c - 1)
    )
    num1 = -(2 * a + n - 1) * (2 * b + n - 1) * (a + b + n - 1)
    factors = (("n+1", n + 1), ("c+n", c + n), ("2c+n-1", 2 * c + n - 1))
    return num0, num1, factors


def alpha_coeffs(p: ParameterTriple, n: int) -> tuple[Scalar, Scalar]:
    """``(alpha0(n), alpha1(n))`` of the square recurrence."""
    if n < 1:
        raise ValueError("alpha coefficients are defined for n >= 1")
    num0, num1, factors = alpha_parts(p, n)
    bad = _first_zero(factors)
    if bad:
        raise ZeroDenominatorError(bad, n)
    den = _product(factors)
    return num0 / den, num1 / den


def beta_parts(p: ParameterTriple, n: int):
    a, b, c = p
    num0 = (
        3 * n**4
        + 6 * (a + b + 2 * c - 2) * n**3
        + (2 * a * (5 * b + 11 * c - 9) + 11 * c * (2 * b + c) - 18 * b - 26 * c + 15) * n**2
        + (
            c**2 * (18 * a + 18 * b - 7)
            + c * (a * (30 * b - 29) - 29 * b + 13)
            + 4 * a * (3 - 5 * b)
            + 12 * b
            - 6
        )
        * n
        + 3 * a * b * (c * (6 * c - 7) + 2)
    )
    num1 = -(
        3 * n**4
        + 6 * (2 * a + 2 * b + c - 3) * n**3
        + (
            11 * a**2 + 42 * a * b + 22 * a * c - 54 * a
            + 11 * b**2 + 22 * b * c - 54 * b - 22 * c + 40
        )
        * n**2
        + 3 * (
            10 * a**2 * b + 6 * a**2 * c - 11 * a**2 + 10 * a * b**2
            + 22 * a * b * c - 42 * a * b - 17 * a * c + 26 * a
        )
        * n
        + 3 * (6 * b**2 * c - 11 * b**2 - 17 * b * c + 26 * b + 9 * c - 13) * n
        + 9 * a**2 * b**2 + 36 * a**2 * b * c - 45 * a**2 * b - 18 * a**2 * c + 22 * a**2
        + 36 * a * b**2 * c - 45 * a * b**2 - 72 * a * b * c + 87 * a * b + 29 * a * c
        - 36 * a - 18 * b**2 * c + 22 * b**2 + 29 * b * c - 36 * b - 11 * c + 14
    )
    num2 = (3 * a + n - 2) * (3 * b + n - 2) * (2 * a + b + n - 2) * (a + 2 * b + n - 2)
    factors = (
        ("n+1", n + 1),
        ("c+n", c + n),
        ("2c+n-1", 2 * c + n - 1),
        ("3c+n-2", 3 * c + n - 2),
    )
    return num0, num1, num2, factors


def beta_coeffs(p: ParameterTriple, n: int) -> tuple[Scalar, Scalar, Scalar]:
    """``(beta0(n), beta1(n), beta2(n))`` of the cube recurrence."""
    if n < 1:
        raise ValueError("beta coefficients are defined for n >= 1")
    num0, num1, num2, factors = beta_parts(p, n)
    bad = _first_zero(factors)
    if bad:
        raise ZeroDenominatorError(bad, n)
    den = _product(factors)
    return num0 / den, num1 / den, num2 / den


def _unit(x):
    # 1 in the same arithmetic as x (Fraction, complex or np.clongdouble)
    return x * 0 + 1


def square_initial(p) -> tuple:
    a, b, c = p
    return (_unit(a), 2 * a * b / c)


def cube_initial(p) -> tuple:
    a, b, c = p
    v2 = 3 * a**2 * b**2 / c**2 + 3 * a * (a + 1) * (b + 1) * b / (2 * c * (c + 1))
    return (_unit(a), 3 * a * b / c, v2)


# ---------------------------------------------------------------- runner


def run_recurrence(spec: RecurrenceSpec, policy: FallbackPolicy, N: int) -> CoeffSeq:
    """Generate ``t_0 .. t_N`` from ``spec``.

    Each coefficient function returns ``(numerator, denominator)``.  When a
    denominator is zero the step is either refused (``ZeroDenominatorError``)
    or filled from ``policy.oracle``; substituted indices are listed in
    ``metadata["substituted"]``.  Under the complex backend the first
    non-finite term is recorded as ``metadata["overflow_index"]``.
    """
    backend = backend_of(spec.initial[0])
    check_length(N, backend)
    terms = list(spec.initial[: N + 1])
    substituted: list[int] = []
    zero_ = zero(backend)
    # chosen once: the generic is_zero pays for an ABC isinstance check per call
    if backend is Backend.RATIONAL:
        vanishes = lambda d: d == 0  # noqa: E731
    else:
        vanishes = lambda d: abs(d) <= POLE_TOL  # noqa: E731
    # Initial values beyond start_index+1 are kept as given.
    for n in range(max(spec.start_index, len(terms) - 1), N):
        acc = zero_
        shared = None
        vanished = None
        for j, fn in enumerate(spec.coeff_fns):
            num, den = fn(n)
            if vanishes(den):
                vanished = j
                break
            k = n - j
            if k < 0:
                continue
            if j == 0:
                shared = den
            if den is shared or den == shared:
                acc += num * terms[k]
            else:
                acc += num * terms[k] * shared / den
        if vanished is None:
            acc = acc / shared
        if vanished is not None:
            if policy.mode is FallbackMode.ERROR:
                label = spec.diagnose(n) if spec.diagnose else None
                raise ZeroDenominatorError(label or f"of coefficient {vanished}", n)
            acc = to_backend(policy.oracle(n + 1), backend)
            substituted.append(n + 1)
        terms.append(acc)
    if backend is Backend.COMPLEX:
        # extended-precision steps are rounded back to complex; terms beyond
        # the double range become inf here
        with np.errstate(over="ignore", invalid="ignore"):
            terms = [complex(t) for t in terms]
    overflow_index = next((i for i, t in enumerate(terms) if not is_finite(t)), None)
    meta = {"substituted": substituted, "overflow_index": overflow_index, "order": spec.order}
    return CoeffSeq(terms, Provenance.RECURRENCE, dict(spec.params), meta)


def _horner(coeffs, n):
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * n + c
    return acc


def _linear_product(shifts, n):
    out = 1
    for s in shifts:
        out = out * (s + n)
    return out


class _StepCache:
    """Evaluates all numerators and the shared denominator once per n.

    The numerators are stored as ascending polynomial coefficients in n so a
    step costs a few Horner evaluations.
    """

    def __init__(self, numerators, den_shifts):
        self.numerators = numerators
        self.den_shifts = den_shifts
        self._n = None
        self._vals = None

    def at(self, n):
        if n != self._n:
            den = _linear_product(self.den_shifts, n)
            self._vals = [
                _horner(num, n) if kind == "poly" else -_linear_product(num, n) if kind == "-prod"
                else _linear_product(num, n)
                for kind, num in self.numerators
            ]
            self._vals.append(den)
            self._n = n
        return self._vals

    def fn(self, j):
        def coeff(n):
            vals = self.at(n)
            return vals[j], vals[-1]

        return coeff


def alpha_kernel(p: ParameterTriple) -> _StepCache:
    a, b, c = p
    num0 = [2 * a * b * (2 * c - 1), (a + b) * (4 * c - 3) + 4 * a * b - c + 1, 3 * (a + b + c - 1), 2]
    num1 = [2 * a - 1, 2 * b - 1, a + b - 1]
    return _StepCache([("poly", num0), ("-prod", num1)], [1, c, 2 * c - 1])


def beta_kernel(p: ParameterTriple) -> _StepCache:
    a, b, c = p
    num0 = [
        3 * a * b * (c * (6 * c - 7) + 2),
        c**2 * (18 * a + 18 * b - 7) + c * (a * (30 * b - 29) - 29 * b + 13) + 4 * a * (3 - 5 * b) + 12 * b - 6,
        2 * a * (5 * b + 11 * c - 9) + 11 * c * (2 * b + c) - 18 * b - 26 * c + 15,
        6 * (a + b + 2 * c - 2),
        3,
    ]
    num1 = [
        -(
            9 * a**2 * b**2 + 36 * a**2 * b * c - 45 * a**2 * b - 18 * a**2 * c + 22 * a**2
            + 36 * a * b**2 * c - 45 * a * b**2 - 72 * a * b * c + 87 * a * b + 29 * a * c
            - 36 * a - 18 * b**2 * c + 22 * b**2 + 29 * b * c - 36 * b - 11 * c + 14
        ),
        -3 * (
            10 * a**2 * b + 6 * a**2 * c - 11 * a**2 + 10 * a * b**2
            + 22 * a * b * c - 42 * a * b - 17 * a * c + 26 * a
            + 6 * b**2 * c - 11 * b**2 - 17 * b * c + 26 * b + 9 * c - 13
        ),
        -(11 * a**2 + 42 * a * b + 22 * a * c - 54 * a + 11 * b**2 + 22 * b * c - 54 * b - 22 * c + 40),
        -6 * (2 * a + 2 * b + c - 3),
        -3,
    ]
    num2 = [3 * a - 2, 3 * b - 2, 2 * a + b - 2, a + 2 * b - 2]
    return _StepCache([("poly", num0), ("poly", num1), ("prod", num2)], [1, c, 2 * c - 1, 3 * c - 2])


def working_params(p: ParameterTriple):
    """The parameters in the arithmetic the recurrence steps run in.

    Float recurrences are stepped in extended precision (``np.clongdouble``)
    and rounded back to ``complex`` at the end.  A step combines several terms
    of larger magnitude than the result wherever the coefficients dip, and in
    plain double precision that cancellation costs up to about 5e-9 in
    relative accuracy for moderate complex parameters.  Where ``long double``
    is no wider than ``double`` this degrades gracefully to ordinary floats.
    """
    if p.backend is Backend.RATIONAL:
        return tuple(p)
    return tuple(np.clongdouble(x) for x in p)


def square_spec(p: ParameterTriple) -> RecurrenceSpec:
    w = working_params(p)
    kernel = alpha_kernel(w)
    fns = tuple(kernel.fn(j) for j in range(2))
    return RecurrenceSpec(
        fns, square_initial(w), 1, "F^2", {"family": "F^2", **p.describe()},
        lambda n: _first_zero(alpha_parts(p, n)[-1]),
    )


def cube_spec(p: ParameterTriple, start_index: int = 2) -> RecurrenceSpec:
    """Cube recurrence; ``start_index=1`` runs from n=1 with v_{-1} = 0."""
    w = working_params(p)
    kernel = beta_kernel(w)
    fns = tuple(kernel.fn(j) for j in range(3))
    initial = cube_initial(w)[: start_index + 1]
    return RecurrenceSpec(
        fns, initial, start_index, "F^3", {"family": "F^3", **p.describe()},
        lambda n: _first_zero(beta_parts(p, n)[-1]),
    )


class _LazyOracle:
    """Per-index Cauchy oracle that builds its F prefix once, on first use."""

    def __init__(self, p: ParameterTriple, power: int):
        self.p = p
        self.power = power
        self._f: list = []
        self._sq: list = []

    def _grow(self, n: int):
        if len(self._f) <= n:
            self._f = f_coeffs(self.p, max(n, 2 * len(self._f)))
            self._sq = []

    def __call__(self, n: int) -> Scalar:
        self._grow(n)
        if self.power == 2:
            return convolve_at(self._f, self._f, n)
        if len(self._sq) <= n:
            self._sq = convolve(self._f, self._f, len(self._f) - 1)
        return convolve_at(self._sq, self._f, n)


def default_policy(p: ParameterTriple, power: int) -> FallbackPolicy:
    return FallbackPolicy(FallbackMode.ORACLE_SUBSTITUTE, _LazyOracle(p, power))


def square_coeffs(p: ParameterTriple, N: int, policy: FallbackPolicy | None = None) -> CoeffSeq:
    """Coefficients ``u_0 .. u_N`` of ``F(a,b;c;z)^2``."""
    if policy is None:
        policy = default_policy(p, 2)
    return run_recurrence(square_spec(p), policy, N)


def cube_coeffs(p: ParameterTriple, N: int, policy: FallbackPolicy | None = None) -> CoeffSeq:
    """Coefficients ``v_0 .. v_N`` of ``F(a,b;c;z)^3``."""
    if policy is None:
        policy = default_policy(p, 3)
    return run_recurrence(cube_spec(p), policy, N)


def cube_start_convention_holds(p: ParameterTriple) -> bool:
    """Whether the cube recurrence at n=1 with v_{-1}=0 reproduces the stated v_2."""
    printed = cube_initial(p)
    num0, num1, _num2, factors = beta_parts(p, 1)
    den = _product(factors)
    if is_zero(den):
        return False
    v2 = (num0 * printed[1] + num1 * printed[0]) / den
    if p.backend is Backend.RATIONAL:
        return v2 == printed[2]
    return abs(v2 - printed[2]) <= 1e-12 * max(1.0, abs(printed[2]))


# ---------------------------------------------------------------- products


def contiguous_square_coeffs(p: ParameterTriple, N: int, policy: FallbackPolicy | None = None) -> CoeffSeq:
    """Coefficients of ``F(a,b;c;z) F(a+1,b+1;c+1;z)``.

    Since ``(F^2)' = (2ab/c) F F(a+1,b+1;c+1)`` these are
    ``(n+1) u_{n+1} c / (2ab)``.  When ``ab = 0`` the first factor is 1 and
    the shifted series is returned directly.
    """
    return _contiguous(p, N, 2, policy)


def contiguous_cube_coeffs(p: ParameterTriple, N: int, policy: FallbackPolicy | None = None) -> CoeffSeq:
    """Coefficients of ``F(a,b;c;z)^2 F(a+1,b+1;c+1;z)``."""
    return _contiguous(p, N, 3, policy)


def _contiguous(p, N, power, policy):
    a, b, c = p
    label = "F*F+" if power == 2 else "F^2*F+"
    params = {"family": label, **p.describe()}
    if is_zero(a * b):
        shifted = p.shifted()
        return CoeffSeq(f_coeffs(shifted, N), Provenance.CLOSED_FORM, params)
    base = (square_coeffs if power == 2 else cube_coeffs)(p, N + 1, policy)
    scale = c / (power * a * b)
    terms = [(n + 1) * base[n + 1] * scale for n in range(N + 1)]
    return CoeffSeq(terms, Provenance.RECURRENCE, params, dict(base.metadata))


def kummer_product_parts(a: Scalar, c: Scalar, n: int):
    num = -(2 * a + n - 1) * (2 * a - 2 * c - n + 1)
    factors = (("n+1", n + 1), ("c+n-1", c + n - 1), ("c+n", c + n), ("2c+n-1", 2 * c + n - 1))
    return num, factors


def kummer_product_spec(a: Scalar, c: Scalar) -> RecurrenceSpec:
    """``u_{n+1} = r(n) u_{n-1}`` for ``M(a,c;x) M(a,c;-x)``, ``u_0=1, u_1=0``."""
    if is_nonpositive_integer(c):
        raise DomainError(f"c = {format_scalar(c)} is zero or a negative integer")
    backend = common_backend(a, c)
    a, c = to_backend(a, backend), to_backend(c, backend)
    wa, wc = working_params(ParameterTriple(a, a, c))[1:]

    def lag0(n):
        return zero(backend), one(backend)

    def lag1(n):
        num, factors = kummer_product_parts(wa, wc, n)
        return num, _product(factors)

    params = {"family": "M*M-", "a": format_scalar(a), "c": format_scalar(c)}
    return RecurrenceSpec(
        (lag0, lag1), (one(backend), zero(backend)), 1, "M*M-", params,
        lambda n: _first_zero(kummer_product_parts(a, c, n)[-1]),
    )


def kummer_product_oracle_terms(a: Scalar, c: Scalar, N: int) -> list:
    m = kummer_coeffs(a, c, N)
    alternating = [t if k % 2 == 0 else -t for k, t in enumerate(m)]
    return convolve(m, alternating, N)


def kummer_product_coeffs(a: Scalar, c: Scalar, N: int, policy: FallbackPolicy | None = None) -> CoeffSeq:
    spec = kummer_product_spec(a, c)
    if policy is None:
        cache: dict = {}

        def oracle(i):
            if "t" not in cache or len(cache["t"]) <= i:
                cache["t"] = kummer_product_oracle_terms(a, c, max(i, N))
            return cache["t"][i]

        policy = FallbackPolicy(FallbackMode.ORACLE_SUBSTITUTE, oracle)
    return run_recurrence(spec, policy, N)


# ---------------------------------------------------------------- fitting gate


@dataclass
class CubeFit:
    """Fitted numerators of ``D(n) v_{n+1} = P0(n) v_n + P1(n) v_{n-1} + P2(n) v_{n-2}``.

    ``D`` is the known denominator ``(n+1)(c+n)(2c+n-1)(3c+n-2)``; each ``P_j``
    is a polynomial in n of degree at most ``degree`` with ascending
    coefficients in ``polys[j]``.
    """

    triple: ParameterTriple
    polys: list
    unique: bool
    consistent: bool
    equations: int

    def evaluate(self, j: int, n) -> Scalar:
        return sum(coef * n**k for k, coef in enumerate(self.polys[j]))


def fit_cube_recurrence(p: ParameterTriple, indices: Sequence[int] = range(2, 30), degree: int = 4) -> CubeFit:
    """Recover the three cube-recurrence numerators from oracle coefficients.

    Solves the exact linear system in the ``3 (degree+1)`` unknown polynomial
    coefficients using only Cauchy-product values, so the result does not
    depend on any transcription of the closed forms.
    """
    if p.backend is not Backend.RATIONAL:
        raise ValueError("the fit is exact and needs rational parameters")
    indices = list(indices)
    N = max(indices) + 1
    f = f_coeffs(p, N)
    v = convolve(convolve(f, f, N), f, N)
    width = degree + 1
    rows, rhs = [], []
    for n in indices:
        if n < 2:
            raise ValueError("fit indices must be >= 2")
        _, _, _, factors = beta_parts(p, n)
        rhs.append(_product(factors) * v[n + 1])
        row = []
        for lag in range(3):
            row.extend(v[n - lag] * n**k for k in range(width))
        rows.append(row)
    from sympy import QQ
    from sympy.polys.matrices import DomainMatrix

    unknowns = 3 * width
    aug = [[QQ(x.numerator, x.denominator) for x in r] + [QQ(y.numerator, y.denominator)] for r, y in zip(rows, rhs)]
    M = DomainMatrix(aug, (len(rows), unknowns + 1), QQ)
    reduced, pivots = M.rref()
    consistent = unknowns not in pivots
    if not consistent:
        return CubeFit(p, [], False, False, len(indices))
    unique = len(pivots) == unknowns
    # free unknowns (if any) are set to zero
    dense = reduced.to_list()
    coeffs = [Fraction(0)] * unknowns
    for r, col in enumerate(pivots):
        val = dense[r][unknowns]
        coeffs[col] = Fraction(int(val.numerator), int(val.denominator))
    polys = [coeffs[j * width:(j + 1) * width] for j in range(3)]
    return CubeFit(p, polys, unique, consistent, len(indices))


def beta_gate(triples: Sequence[ParameterTriple], indices: Sequence[int] = range(2, 30)) -> list[dict]:
    """Compare the shipped beta numerators with the oracle fit at each triple.

    Two polynomials of degree <= 4 agree iff they agree at 5 points; the
    comparison uses 8.
    """
    out = []
    for p in triples:
        fit = fit_cube_recurrence(p, indices)
        matches = []
        if fit.unique and fit.consistent:
            for j in range(3):
                ok = all(beta_parts(p, n)[j] == fit.evaluate(j, n) for n in range(8))
                matches.append(ok)
        out.append(
            {
                "triple": p.describe(),
                "unique": fit.unique,
                "consistent": fit.consistent,
                "beta0": bool(matches and matches[0]),
                "beta1": bool(matches and matches[1]),
                "beta2": bool(matches and matches[2]),
                "beta1_poly": [str(x) for x in fit.polys[1]] if fit.polys else [],
            }
        )
    return out
