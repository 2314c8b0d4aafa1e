"""Scalar arithmetic shared by every module.

Two backends are supported.  ``Backend.RATIONAL`` values are
:class:`fractions.Fraction` (always reduced, positive denominator, unbounded
integers).  ``Backend.COMPLEX`` values are builtin ``complex`` numbers in double
precision.  Both support ``+ - * /`` with each other and with ``int``, so the
series and recurrence code is written once and works for either.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from numbers import Rational
from typing import Union

Scalar = Union[Fraction, complex]

# Distance below which a float parameter counts as a nonpositive integer.
POLE_TOL = 1e-12


class Backend(str, Enum):
    RATIONAL = "rational"
    COMPLEX = "complex"


class DomainError(ValueError):
    """A parameter falls outside the domain an operation accepts."""


class PoleError(DomainError):
    """Argument sits on a pole (zero or a negative integer)."""


def backend_of(x) -> Backend:
    if isinstance(x, Rational):
        return Backend.RATIONAL
    return Backend.COMPLEX


def to_backend(x, backend: Backend) -> Scalar:
    if backend is Backend.RATIONAL:
        if isinstance(x, Rational):
            return Fraction(x)
        if isinstance(x, complex):
            if x.imag != 0:
                raise DomainError(f"complex value {x} has no rational representation")
            x = x.real
        return Fraction(x)
    if isinstance(x, Rational):
        return complex(x.numerator / x.denominator)
    return complex(x)


def common_backend(*values) -> Backend:
    """Rational when every value is rational, complex otherwise."""
    if all(isinstance(v, Rational) for v in values):
        return Backend.RATIONAL
    return Backend.COMPLEX


def parse_scalar(text: str) -> Scalar:
    """Parse ``"p/q"``, an integer, a decimal, or a complex ``"re+imi"``.

    Anything that can be read exactly as a rational (including decimals such
    as ``"0.25"``) comes back as a Fraction.
    """
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty scalar")
    if s[-1] in "ij":
        body = s[:-1]
        # bare "i", "+i", "-i", "2+i"
        if body == "" or body[-1] in "+-":
            body += "1"
        try:
            return complex(body + "j")
        except ValueError as exc:
            raise ValueError(f"cannot parse complex scalar {text!r}") from exc
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"cannot parse scalar {text!r}") from exc


def format_scalar(x: Scalar) -> str:
    if isinstance(x, Rational):
        return str(Fraction(x))
    x = complex(x)
    if x.imag == 0:
        return repr(x.real)
    return f"{x.real!r}{x.imag:+}i"


def is_zero(x: Scalar, tol: float = POLE_TOL) -> bool:
    if isinstance(x, Rational):
        return x == 0
    return abs(x) <= tol


def is_finite(x: Scalar) -> bool:
    if isinstance(x, Rational):
        return True
    return cmath.isfinite(x)


def is_nonpositive_integer(x: Scalar, tol: float = POLE_TOL) -> bool:
    """True when ``x`` is 0, -1, -2, ... (within ``tol`` for floats)."""
    if isinstance(x, Rational):
        return x.denominator == 1 and x <= 0
    x = complex(x)
    if abs(x.imag) > tol or x.real > tol:
        return False
    return abs(x.real - round(x.real)) <= tol


def pochhammer(x: Scalar, k: int) -> Scalar:
    """Rising factorial ``x (x+1) ... (x+k-1)``; ``(x)_0 = 1``."""
    if k < 0:
        raise ValueError("pochhammer index must be nonnegative")
    out = Fraction(1) if isinstance(x, Rational) else complex(1)
    for i in range(k):
        out *= x + i
    return out


def gamma_real(x: float) -> float:
    """Real Gamma function.

    Raises PoleError at 0, -1, -2, ...; the value itself comes from
    :func:`math.gamma`.
    """
    x = float(x)
    if x <= 0 and x == math.floor(x):
        raise PoleError(f"Gamma has a pole at {x}")
    return math.gamma(x)


@dataclass(frozen=True)
class ParameterTriple:
    """The ``(a, b, c)`` of ``F(a, b; c; z)``.

    All three entries share one backend; ``c`` may not be 0 or a negative
    integer.
    """

    a: Scalar
    b: Scalar
    c: Scalar

    def __post_init__(self):
        backend = common_backend(self.a, self.b, self.c)
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, to_backend(getattr(self, name), backend))
        if is_nonpositive_integer(self.c):
            raise DomainError(f"c = {format_scalar(self.c)} is zero or a negative integer")

    @classmethod
    def make(cls, a, b, c, backend: Backend | None = None) -> ParameterTriple:
        if backend is None:
            return cls(a, b, c)
        return cls(to_backend(a, backend), to_backend(b, backend), to_backend(c, backend))

    @property
    def backend(self) -> Backend:
        return backend_of(self.a)

    def swapped(self) -> ParameterTriple:
        return ParameterTriple(self.b, self.a, self.c)

    def shifted(self, da: int = 1, db: int = 1, dc: int = 1) -> ParameterTriple:
        return ParameterTriple(self.a + da, self.b + db, self.c + dc)

    def as_backend(self, backend: Backend) -> ParameterTriple:
        return ParameterTriple.make(self.a, self.b, self.c, backend)

    def describe(self) -> dict:
        return {"a": format_scalar(self.a), "b": format_scalar(self.b), "c": format_scalar(self.c)}

    def __iter__(self):
        return iter((self.a, self.b, self.c))


def one(backend: Backend) -> Scalar:
    return Fraction(1) if backend is Backend.RATIONAL else complex(1)


def zero(backend: Backend) -> Scalar:
    return Fraction(0) if backend is Backend.RATIONAL else complex(0)
