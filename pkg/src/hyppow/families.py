"""Catalog of named special functions expressed through F^2 and F^3.

Each :class:`TransformSpec` records which hypergeometric triple a family uses,
how the user's variable maps onto the series variable, a constant prefactor
(kept as ``rational * pi**k`` so the coefficient layer stays exact) and the
exponent law ``z**(scale*n + shift)`` of the displayed series.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from numbers import Rational

from hyppow.numerics import (
    Backend,
    DomainError,
    ParameterTriple,
    Scalar,
    common_backend,
    format_scalar,
    is_zero,
    pochhammer,
    to_backend,
)
from hyppow.recurrence import (
    FallbackPolicy,
    contiguous_cube_coeffs,
    contiguous_square_coeffs,
    cube_coeffs,
    kummer_product_coeffs,
    square_coeffs,
)
from hyppow.series import CoeffSeq


class Family(str, Enum):
    F_SQUARED = "f2"
    F_CUBED = "f3"
    ZERO_BALANCED_SQUARED = "zero-balanced2"
    K2 = "k2"
    E2 = "e2"
    K3 = "k3"
    E3 = "e3"
    CHEBYSHEV2 = "chebyshev2"
    CHEBYSHEV3 = "chebyshev3"
    LEGENDRE2 = "legendre2"
    LEGENDRE3 = "legendre3"
    GEGENBAUER2 = "gegenbauer2"
    GEGENBAUER3 = "gegenbauer3"
    JACOBI2 = "jacobi2"
    JACOBI3 = "jacobi3"
    SIN2 = "sin2"
    SIN3 = "sin3"
    COS2 = "cos2"
    COS3 = "cos3"
    CONTIGUOUS2 = "contiguous2"
    CONTIGUOUS3 = "contiguous3"
    KUMMER_PRODUCT = "kummer-product"


class ArgMap(str, Enum):
    IDENTITY = "z"
    SQUARE = "z^2"
    # T_m(1-2z) and friends: the series is already in z, the polynomial argument is 1-2z.
    ONE_MINUS_TWO_Z = "1-2z"


POLYNOMIAL_FAMILIES = {
    Family.CHEBYSHEV2, Family.CHEBYSHEV3,
    Family.LEGENDRE2, Family.LEGENDRE3,
    Family.GEGENBAUER2, Family.GEGENBAUER3,
    Family.JACOBI2, Family.JACOBI3,
}

_REQUIRED = {
    Family.F_SQUARED: ("a", "b", "c"),
    Family.F_CUBED: ("a", "b", "c"),
    Family.ZERO_BALANCED_SQUARED: ("a", "b"),
    Family.CHEBYSHEV2: ("m",),
    Family.CHEBYSHEV3: ("m",),
    Family.LEGENDRE2: ("m",),
    Family.LEGENDRE3: ("m",),
    Family.GEGENBAUER2: ("m", "alpha"),
    Family.GEGENBAUER3: ("m", "alpha"),
    Family.JACOBI2: ("m", "alpha", "beta"),
    Family.JACOBI3: ("m", "alpha", "beta"),
    Family.SIN2: ("alpha",),
    Family.SIN3: ("alpha",),
    Family.COS2: ("alpha",),
    Family.COS3: ("alpha",),
    Family.CONTIGUOUS2: ("a", "b", "c"),
    Family.CONTIGUOUS3: ("a", "b", "c"),
    Family.KUMMER_PRODUCT: ("a", "c"),
}


class UnknownFamilyError(KeyError):
    pass


class MissingParameterError(ValueError):
    pass


@dataclass(frozen=True)
class Prefactor:
    """``coeff * pi**pi_power``."""

    coeff: Scalar = Fraction(1)
    pi_power: int = 0

    def value(self) -> complex:
        return complex(self.coeff) * math.pi**self.pi_power

    def __str__(self):
        base = format_scalar(self.coeff)
        if self.pi_power == 0:
            return base
        return f"{base}*pi^{self.pi_power}"


@dataclass(frozen=True)
class TransformSpec:
    family: Family
    triple: ParameterTriple
    arg_map: ArgMap
    prefactor: Prefactor
    power: int
    exponent_scale: int = 1
    power_shift: int = 0
    extra_params: dict = field(default_factory=dict)

    def exponent(self, n: int) -> int:
        return self.exponent_scale * n + self.power_shift

    @property
    def is_polynomial(self) -> bool:
        return self.family in POLYNOMIAL_FAMILIES

    @property
    def is_entire(self) -> bool:
        """Polynomials and the Kummer product converge for every argument."""
        return self.is_polynomial or self.family is Family.KUMMER_PRODUCT

    @property
    def degree(self) -> int | None:
        """Degree in the series variable of a polynomial family."""
        if not self.is_polynomial:
            return None
        return self.power * int(self.extra_params["m"])

    def describe(self) -> dict:
        return {
            "family": self.family.value,
            "triple": self.triple.describe(),
            "arg_map": self.arg_map.value,
            "prefactor": str(self.prefactor),
            "exponent": f"{self.exponent_scale}n+{self.power_shift}",
            **{k: format_scalar(v) if not isinstance(v, int) else v for k, v in self.extra_params.items()},
        }


def _as_scalar(x) -> Scalar:
    if isinstance(x, str):
        from hyppow.numerics import parse_scalar

        return parse_scalar(x)
    if isinstance(x, Rational):
        return Fraction(x)
    if isinstance(x, complex):
        return x
    if isinstance(x, float):
        return complex(x)
    raise TypeError(f"unsupported parameter value {x!r}")


def _degree(m) -> int:
    m = _as_scalar(m)
    if not isinstance(m, Rational) or m.denominator != 1 or m < 0:
        raise DomainError(f"degree m must be a nonnegative integer, got {m}")
    return int(m)


def catalog_lookup(family, extra_params: dict | None = None, backend: Backend | None = None) -> TransformSpec:
    """Build the :class:`TransformSpec` for a named family.

    ``extra_params`` holds whatever the family needs: ``a, b, c`` for the
    generic ones, ``m`` (degree) and the weights ``alpha``, ``beta`` for the
    orthogonal polynomials, ``alpha`` for the trigonometric families.
    """
    try:
        family = Family(family)
    except ValueError:
        raise UnknownFamilyError(f"unknown family {family!r}") from None
    params = dict(extra_params or {})
    missing = [k for k in _REQUIRED.get(family, ()) if k not in params]
    if missing:
        raise MissingParameterError(f"family {family.value} needs {', '.join(missing)}")
    vals = {k: _as_scalar(v) for k, v in params.items() if k != "m"}
    half = Fraction(1, 2)
    one = Fraction(1)
    power = 3 if family.value.endswith("3") else 2
    extra: dict = {}
    prefactor = Prefactor()
    arg = ArgMap.IDENTITY
    scale, shift = 1, 0

    if family in (Family.F_SQUARED, Family.F_CUBED, Family.CONTIGUOUS2, Family.CONTIGUOUS3):
        triple = (vals["a"], vals["b"], vals["c"])
    elif family is Family.ZERO_BALANCED_SQUARED:
        triple = (vals["a"], vals["b"], vals["a"] + vals["b"])
    elif family in (Family.K2, Family.K3, Family.E2, Family.E3):
        a = half if family in (Family.K2, Family.K3) else -half
        triple = (a, half, one)
        prefactor = Prefactor(Fraction(1, 2**power), power)
        arg, scale = ArgMap.SQUARE, 2
    elif family in (Family.CHEBYSHEV2, Family.CHEBYSHEV3):
        m = _degree(params["m"])
        triple = (Fraction(-m), Fraction(m), half)
        extra = {"m": m}
        arg = ArgMap.ONE_MINUS_TWO_Z
    elif family in (Family.LEGENDRE2, Family.LEGENDRE3):
        m = _degree(params["m"])
        triple = (Fraction(-m), Fraction(m + 1), one)
        extra = {"m": m}
        arg = ArgMap.ONE_MINUS_TWO_Z
    elif family in (Family.GEGENBAUER2, Family.GEGENBAUER3):
        m = _degree(params["m"])
        al = vals["alpha"]
        triple = (Fraction(-m), m + 2 * al, al + half)
        lead = pochhammer(2 * al, m) / math.factorial(m)
        prefactor = Prefactor(lead**power, 0)
        extra = {"m": m, "alpha": al}
        arg = ArgMap.ONE_MINUS_TWO_Z
    elif family in (Family.JACOBI2, Family.JACOBI3):
        m = _degree(params["m"])
        al, be = vals["alpha"], vals["beta"]
        triple = (Fraction(-m), m + al + be + 1, al + 1)
        lead = pochhammer(al + 1, m) / math.factorial(m)
        prefactor = Prefactor(lead**power, 0)
        extra = {"m": m, "alpha": al, "beta": be}
        arg = ArgMap.ONE_MINUS_TWO_Z
    elif family in (Family.SIN2, Family.SIN3):
        al = vals["alpha"]
        triple = ((1 + al) / 2, (1 - al) / 2, Fraction(3, 2))
        prefactor = Prefactor(al**power, 0)
        extra = {"alpha": al}
        arg, scale, shift = ArgMap.SQUARE, 2, power
    elif family in (Family.COS2, Family.COS3):
        al = vals["alpha"]
        triple = (al / 2, -al / 2, half)
        extra = {"alpha": al}
        arg, scale = ArgMap.SQUARE, 2
    elif family is Family.KUMMER_PRODUCT:
        a, c = vals["a"], vals["c"]
        # Upper parameters of the 2F3 on the right-hand side, and c.
        triple = (a, c - a, c)
        extra = {"a": a, "c": c}
        power = 2
    else:  # pragma: no cover - every enum member is handled above
        raise UnknownFamilyError(family.value)

    if backend is None:
        backend = common_backend(*triple)
    return TransformSpec(
        family,
        ParameterTriple.make(*triple, backend=backend),
        arg,
        prefactor,
        power,
        scale,
        shift,
        {k: v if k == "m" else to_backend(v, backend) for k, v in extra.items()},
    )


def family_coeffs(spec: TransformSpec, N: int, policy: FallbackPolicy | None = None) -> CoeffSeq:
    """Coefficients of the underlying series, before prefactor and argument map."""
    fam = spec.family
    p = spec.triple
    if fam is Family.KUMMER_PRODUCT:
        seq = kummer_product_coeffs(spec.extra_params["a"], spec.extra_params["c"], N, policy)
    elif fam is Family.CONTIGUOUS2:
        seq = contiguous_square_coeffs(p, N, policy)
    elif fam is Family.CONTIGUOUS3:
        seq = contiguous_cube_coeffs(p, N, policy)
    elif spec.power == 2:
        seq = square_coeffs(p, N, policy)
    else:
        seq = cube_coeffs(p, N, policy)
    seq.params = spec.describe()
    seq.metadata.update(
        {
            "prefactor": str(spec.prefactor),
            "exponent_scale": spec.exponent_scale,
            "exponent_shift": spec.power_shift,
        }
    )
    return seq


def mapped_argument(spec: TransformSpec, z) -> complex:
    z = complex(z)
    if spec.arg_map is ArgMap.SQUARE:
        return z * z
    return z


def evaluate_family(spec: TransformSpec, z, N: int) -> tuple[complex, float | None]:
    """Truncated value ``prefactor * sum_{n<=N} t_n z^exponent(n)``.

    Returns ``(value, tail_bound)``.  ``tail_bound`` is a geometric estimate
    from the last two nonzero terms, ``0.0`` when a polynomial family has
    been summed past its degree, and ``None`` when the terms are not
    visibly decreasing.
    """
    w = mapped_argument(spec, z)
    if not spec.is_entire and abs(w) >= 1:
        raise DomainError(f"|mapped argument| = {abs(w)} is not below 1")
    coeffs = family_coeffs(spec, N, None)
    coeffs_c = [complex(t) for t in coeffs]
    # series in the mapped variable: sum t_n w^n, then the monomial shift
    acc = 0j
    for t in reversed(coeffs_c):
        acc = acc * w + t
    zc = complex(z)
    value = spec.prefactor.value() * acc * zc**spec.power_shift
    if spec.is_polynomial and N >= spec.degree:
        return value, 0.0
    tail = geometric_tail_bound(coeffs_c, w)
    if tail is not None:
        tail *= abs(spec.prefactor.value()) * abs(zc) ** spec.power_shift
    return value, tail


def geometric_tail_bound(coeffs: list, w: complex) -> float | None:
    nonzero = [(n, abs(t) * abs(w) ** n) for n, t in enumerate(coeffs) if t != 0]
    if not nonzero:
        return 0.0
    if len(nonzero) < 2:
        return None
    (n1, t1), (n2, t2) = nonzero[-2], nonzero[-1]
    if t2 == 0:
        return 0.0
    if t1 == 0:
        return None
    ratio = (t2 / t1) ** (1.0 / (n2 - n1))
    if ratio >= 1:
        return None
    return t2 * ratio / (1 - ratio)


def evaluate_adaptive(spec: TransformSpec, z, target: float = 1e-12, start: int = 32, max_n: int = 200_000):
    """Double N until the tail bound drops below ``target``.

    Returns ``(value, tail_bound, N)``.  Runs in the complex backend.
    """
    if spec.triple.backend is not Backend.COMPLEX:
        spec = catalog_lookup(spec.family, _lookup_params(spec), Backend.COMPLEX)
    N = start
    if spec.is_polynomial:
        N = max(N, spec.degree)
    while True:
        value, tail = evaluate_family(spec, z, N)
        if tail is not None and tail < target:
            return value, tail, N
        if N >= max_n:
            return value, tail, N
        N = min(2 * N, max_n)


def _lookup_params(spec: TransformSpec) -> dict:
    if spec.family in (Family.F_SQUARED, Family.F_CUBED, Family.CONTIGUOUS2, Family.CONTIGUOUS3):
        return {"a": spec.triple.a, "b": spec.triple.b, "c": spec.triple.c}
    if spec.family is Family.ZERO_BALANCED_SQUARED:
        return {"a": spec.triple.a, "b": spec.triple.b}
    return dict(spec.extra_params)


def polynomial_truncation_check(spec: TransformSpec, extra: int = 5):
    """Check that a polynomial family's coefficients vanish past its degree."""
    from hyppow.identities import Status, VerificationReport

    if not spec.is_polynomial:
        raise ValueError(f"{spec.family.value} is not a polynomial family")
    deg = spec.degree
    N = deg + extra
    seq = family_coeffs(spec, N)
    residuals = [(n, seq[n]) for n in range(deg + 1, N + 1) if not is_zero(seq[n])]
    status = Status.PASS if not residuals else Status.FAIL
    return VerificationReport(
        identity=f"{spec.family.value}-truncation",
        param_set=spec.describe(),
        max_index=N,
        status=status,
        first_fail_index=residuals[0][0] if residuals else None,
        residuals=residuals,
        notes=f"coefficients beyond degree {deg} must vanish",
    )
