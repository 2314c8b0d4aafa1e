"""Specialized recurrences as they are printed for each named family.

The general coefficient formulas in :mod:`hyppow.recurrence` specialize to
closed forms in n for every family in the catalog.  This table transcribes
those closed forms and their initial values so the specializations can be
checked term by term against the general formulas.

A handful of printed forms are wrong.  Each such entry carries an
``Erratum`` with the corrected expression; the checker confirms both that
the printed form really disagrees and that the corrected one agrees.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction as Q
from typing import Callable

from hyppow.families import Family
from hyppow.numerics import ParameterTriple
from hyppow.recurrence import alpha_parts, beta_parts, cube_initial, square_initial

H = Q(1, 2)


@dataclass(frozen=True)
class Erratum:
    what: str
    corrected: Callable


@dataclass(frozen=True)
class PrintedCorollary:
    name: str
    family: Family
    power: int
    triple: Callable[[dict], tuple]
    coeffs: tuple
    initial: tuple
    grid: tuple
    errata: dict = field(default_factory=dict)
    notes: str = ""


def _m_grid(**extra):
    out = []
    for m in range(6):
        if not extra:
            out.append({"m": m})
        for al in extra.get("alpha", ()):
            for be in extra.get("beta", (None,)):
                d = {"m": m, "alpha": al}
                if be is not None:
                    d["beta"] = be
                out.append(d)
    return tuple(out)


ALPHAS = (H, Q(1), Q(3, 2), Q(1, 3))
JACOBI_WEIGHTS = {"alpha": (H, Q(1)), "beta": (H, Q(1))}
TRIG_ALPHAS = tuple({"alpha": al} for al in (Q(1, 3), Q(2), Q(5, 2), Q(-3, 4)))


def _legendre3_fixed(j):
    """Closed forms of the Legendre cube coefficients at c = 1, each over (n+1)^4."""

    def fn(n, p):
        m = p["m"]
        if j == 0:
            num = -(10 * m**2 * n**2 + 10 * m**2 * n + 3 * m**2 + 10 * m * n**2 + 10 * m * n + 3 * m
                    - 3 * n**4 - 6 * n**3 - 4 * n**2 - n)
        elif j == 1:
            num = -(9 * m**4 + 18 * m**3 - 20 * m**2 * n**2 + 11 * m**2 - 20 * m * n**2 + 2 * m
                    + 3 * n**4 - 3 * n**2)
        else:
            num = (m + n) * (m - n + 1) * (3 * m - n + 2) * (3 * m + n + 1)
        return Q(num, (n + 1) ** 4)

    return fn


CATALOG: tuple[PrintedCorollary, ...] = (
    PrintedCorollary(
        "zero-balanced squared",
        Family.ZERO_BALANCED_SQUARED,
        2,
        lambda p: (p["a"], p["b"], p["a"] + p["b"]),
        (
            lambda n, p: (2 * p["a"] + 2 * p["b"] + 2 * n - 1) * (n**2 + (2 * p["a"] + 2 * p["b"] - 1) * n + 2 * p["a"] * p["b"])
            / ((n + 1) * (p["a"] + p["b"] + n) * (2 * (p["a"] + p["b"]) + n - 1)),
            lambda n, p: -(2 * p["a"] + n - 1) * (2 * p["b"] + n - 1) * (p["a"] + p["b"] + n - 1)
            / ((n + 1) * (p["a"] + p["b"] + n) * (2 * (p["a"] + p["b"]) + n - 1)),
        ),
        (lambda p: Q(1), lambda p: 2 * p["a"] * p["b"] / (p["a"] + p["b"])),
        ({"a": Q(1, 3), "b": H}, {"a": Q(1), "b": Q(2, 3)}, {"a": Q(5, 2), "b": Q(-1, 3)}),
    ),
    PrintedCorollary(
        "K squared",
        Family.K2,
        2,
        lambda p: (H, H, Q(1)),
        (
            lambda n, p: (n * (n * (2 * n + 3) + 2) + H) / Q((n + 1) ** 3),
            lambda n, p: -Q(n**3, (n + 1) ** 3),
        ),
        (lambda p: Q(1), lambda p: H),
        ({},),
    ),
    PrintedCorollary(
        "E squared",
        Family.E2,
        2,
        lambda p: (-H, H, Q(1)),
        (
            lambda n, p: Q(4 * n**3 - 2 * n - 1, 2 * (n + 1) ** 3),
            lambda n, p: -Q((n - 2) * (n - 1) * n, (n + 1) ** 3),
        ),
        (lambda p: Q(1), lambda p: -H),
        ({},),
    ),
    PrintedCorollary(
        "Chebyshev squared",
        Family.CHEBYSHEV2,
        2,
        lambda p: (Q(-p["m"]), Q(p["m"]), H),
        (
            lambda n, p: Q(-8 * p["m"] ** 2 + 4 * n**2 - 3 * n + 1, (2 * n + 1) * (n + 1)),
            lambda n, p: -Q(2 * (n - 1) * (-2 * p["m"] + n - 1) * (2 * p["m"] + n - 1), n * (n + 1) * (2 * n + 1)),
        ),
        (lambda p: Q(1), lambda p: Q(-4 * p["m"] ** 2)),
        _m_grid(),
    ),
    PrintedCorollary(
        "Legendre squared",
        Family.LEGENDRE2,
        2,
        lambda p: (Q(-p["m"]), Q(p["m"] + 1), Q(1)),
        (
            lambda n, p: Q((2 * n + 1) * (-2 * p["m"] * (p["m"] + 1) + n**2 + n), (n + 1) ** 3),
            lambda n, p: -Q((2 * p["m"] + 1) ** 2 * n - n**3, (n + 1) ** 3),
        ),
        (lambda p: Q(1), lambda p: Q(-2 * p["m"] * (p["m"] + 1))),
        _m_grid(),
        {
            "c1": Erratum(
                "sign of the u_{n-1} coefficient is flipped",
                lambda n, p: Q((2 * p["m"] + 1) ** 2 * n - n**3, (n + 1) ** 3),
            )
        },
    ),
    PrintedCorollary(
        "Gegenbauer squared",
        Family.GEGENBAUER2,
        2,
        lambda p: (Q(-p["m"]), p["m"] + 2 * p["alpha"], p["alpha"] + H),
        (
            lambda n, p: (
                n * (2 * p["alpha"] * (8 * p["alpha"] - 3) - 8 * p["m"] ** 2 - 16 * p["alpha"] * p["m"] + 1)
                - 8 * p["alpha"] * p["m"] * (2 * p["alpha"] + p["m"])
                + 4 * n**3
                + 3 * (6 * p["alpha"] - 1) * n**2
            )
            / ((n + 1) * (2 * p["alpha"] + n) * (2 * p["alpha"] + 2 * n + 1)),
            lambda n, p: -2 * (-2 * p["m"] + n - 1) * (2 * p["alpha"] + n - 1) * (4 * p["alpha"] + 2 * p["m"] + n - 1)
            / ((n + 1) * (2 * p["alpha"] + n) * (2 * p["alpha"] + 2 * n + 1)),
        ),
        (lambda p: Q(1), lambda p: -4 * p["m"] * (2 * p["alpha"] + p["m"]) / (2 * p["alpha"] + 1)),
        _m_grid(alpha=ALPHAS),
    ),
    PrintedCorollary(
        "Jacobi squared",
        Family.JACOBI2,
        2,
        lambda p: (Q(-p["m"]), p["m"] + p["alpha"] + p["beta"] + 1, p["alpha"] + 1),
        (
            lambda n, p: _jacobi2_c0(n, p["m"], p["alpha"], p["beta"]),
            lambda n, p: (2 * p["m"] - n + 1) * (p["alpha"] + p["beta"] + n) * (2 * p["alpha"] + 2 * p["beta"] + 2 * p["m"] + n + 1)
            / ((n + 1) * (p["alpha"] + n + 1) * (2 * p["alpha"] + n + 1)),
        ),
        (lambda p: Q(1), lambda p: -2 * p["m"] * (p["m"] + p["alpha"] + p["beta"] + 1) / (p["alpha"] + 1)),
        _m_grid(**JACOBI_WEIGHTS),
    ),
    PrintedCorollary(
        "sin squared",
        Family.SIN2,
        2,
        lambda p: ((1 + p["alpha"]) / 2, (1 - p["alpha"]) / 2, Q(3, 2)),
        (
            lambda n, p: (-2 * p["alpha"] ** 2 + 4 * n**2 + 5 * n + 2) / (2 * n**2 + 7 * n + 6),
            lambda n, p: -2 * n * (n - p["alpha"]) * (p["alpha"] + n) / ((n + 1) * (n + 2) * (2 * n + 3)),
        ),
        (lambda p: Q(1), lambda p: (1 - p["alpha"] ** 2) / 3),
        TRIG_ALPHAS,
    ),
    PrintedCorollary(
        "cos squared",
        Family.COS2,
        2,
        lambda p: (p["alpha"] / 2, -p["alpha"] / 2, H),
        (
            lambda n, p: (-2 * p["alpha"] ** 2 + 4 * n**2 - 3 * n + 1) / (2 * n**2 + 3 * n + 1),
            lambda n, p: -2 * (n - 1) * (-p["alpha"] + n - 1) * (p["alpha"] + n - 1) / (n * (n + 1) * (2 * n + 1)),
        ),
        (lambda p: Q(1), lambda p: -p["alpha"] ** 2),
        TRIG_ALPHAS,
    ),
    PrintedCorollary(
        "K cubed",
        Family.K3,
        3,
        lambda p: (H, H, Q(1)),
        (
            lambda n, p: Q(2 * n * (n + 1) * (6 * n * (n + 1) + 7) + 3, 4 * (n + 1) ** 4),
            lambda n, p: -Q(48 * n**4 + 32 * n**2 + 1, 16 * (n + 1) ** 4),
            lambda n, p: Q((1 - 2 * n) ** 4, 16 * (n + 1) ** 4),
        ),
        (lambda p: Q(1), lambda p: Q(3, 4), lambda p: Q(39, 64)),
        ({},),
        notes="series printed with z^(3n); the coefficients multiply z^(2n)",
    ),
    PrintedCorollary(
        "E cubed",
        Family.E3,
        3,
        lambda p: (-H, H, Q(1)),
        (
            lambda n, p: Q(2 * n * (6 * n**3 - 5 * n - 5) - 3, 4 * (n + 1) ** 4),
            lambda n, p: -Q(8 * n * (2 * n * (3 * (n - 4) * n + 13) - 9) + 29, 16 * (n + 1) ** 4),
            lambda n, p: Q((2 * n - 7) * (2 * n - 5) * (2 * n - 3) * (2 * n - 1), 16 * (n + 1) ** 4),
        ),
        (lambda p: Q(1), lambda p: Q(-3, 4), lambda p: Q(3, 64)),
        ({},),
        notes="series printed with z^(3n); the coefficients multiply z^(2n)",
    ),
    PrintedCorollary(
        "Chebyshev cubed",
        Family.CHEBYSHEV3,
        3,
        lambda p: (Q(-p["m"]), Q(p["m"]), H),
        (
            lambda n, p: Q(-20 * p["m"] ** 2 + 6 * n**2 - 9 * n + 5, 2 * n**2 + 3 * n + 1),
            lambda n, p: Q(
                -36 * p["m"] ** 4 + 20 * p["m"] ** 2 * (n - 1) * (4 * n - 5) - 2 * (n - 1) * (2 * n * (3 * (n - 4) * n + 17) - 17),
                n * (n + 1) * (2 * n - 1) * (2 * n + 1),
            ),
            lambda n, p: Q(
                4 * (9 * p["m"] ** 4 - 10 * p["m"] ** 2 * (n - 2) ** 2 + (n - 2) ** 4),
                n * (n + 1) * (2 * n - 1) * (2 * n + 1),
            ),
        ),
        (lambda p: Q(1), lambda p: Q(-6 * p["m"] ** 2), lambda p: Q(2 * (7 * p["m"] ** 4 - p["m"] ** 2))),
        _m_grid(),
    ),
    PrintedCorollary(
        "Legendre cubed",
        Family.LEGENDRE3,
        3,
        lambda p: (Q(-p["m"]), Q(p["m"] + 1), Q(1)),
        (
            lambda n, p: Q(3 * (n + 1) * (2 * n - 1) - 20 * p["m"] * (p["m"] + 1), (n + 1) * (2 * n + 1)),
            lambda n, p: Q(
                4 * (
                    (20 * p["m"] * (p["m"] + 1) + 3) * n**2
                    - 3 * (5 * p["m"] * (p["m"] + 1) + 1) * n
                    - p["m"] * (p["m"] + 1) * (3 * p["m"] + 1) * (3 * p["m"] + 2)
                    - 3 * n**4
                    + 3 * n**3
                ),
                n * (n + 1) * (2 * n - 1) * (2 * n + 1),
            ),
            lambda n, p: Q(
                4 * (p["m"] - n + 1) * (3 * p["m"] - n + 2) * (p["m"] + n) * (3 * p["m"] + n + 1),
                n * (n + 1) * (2 * n - 1) * (2 * n + 1),
            ),
        ),
        (
            lambda p: Q(1),
            lambda p: Q(-3 * p["m"] * (p["m"] + 1)),
            lambda p: Q(3, 4) * (5 * p["m"] ** 4 + 10 * p["m"] ** 3 + 3 * p["m"] ** 2 - 2 * p["m"]),
        ),
        _m_grid(),
        {
            "c0": Erratum("printed form is the c=1/2 specialization, not c=1", _legendre3_fixed(0)),
            "c1": Erratum("printed form is the c=1/2 specialization, not c=1", _legendre3_fixed(1)),
            "c2": Erratum("printed form is the c=1/2 specialization, not c=1", _legendre3_fixed(2)),
        },
    ),
    PrintedCorollary(
        "Gegenbauer cubed",
        Family.GEGENBAUER3,
        3,
        lambda p: (Q(-p["m"]), p["m"] + 2 * p["alpha"], p["alpha"] + H),
        (
            lambda n, p: _gegenbauer3_c0(n, p["m"], p["alpha"]),
            lambda n, p: _gegenbauer3_c1(n, p["m"], p["alpha"]),
            lambda n, p: 4 * (3 * p["m"] - n + 2) * (-2 * p["alpha"] + p["m"] - n + 2) * (4 * p["alpha"] + p["m"] + n - 2)
            * (6 * p["alpha"] + 3 * p["m"] + n - 2) / _gegenbauer3_den(n, p["alpha"]),
        ),
        (
            lambda p: Q(1),
            lambda p: -5 * p["m"] * (2 * p["alpha"] + p["m"]) / (2 * p["alpha"] + 1),
            lambda p: 3 * p["m"] ** 2 * (2 * p["alpha"] + p["m"]) ** 2 / (p["alpha"] + H) ** 2
            + 6 * (p["m"] - 1) * p["m"] * (2 * p["alpha"] + p["m"] + 1) * (2 * p["alpha"] + p["m"])
            / ((2 * p["alpha"] + 1) * (2 * p["alpha"] + 3)),
        ),
        _m_grid(alpha=ALPHAS),
        {
            "t1": Erratum(
                "v_1 printed with factor -5; 3ab/c gives -6",
                lambda p: -6 * p["m"] * (2 * p["alpha"] + p["m"]) / (2 * p["alpha"] + 1),
            )
        },
    ),
    PrintedCorollary(
        "Jacobi cubed",
        Family.JACOBI3,
        3,
        lambda p: (Q(-p["m"]), p["m"] + p["alpha"] + p["beta"] + 1, p["alpha"] + 1),
        (
            lambda n, p: _jacobi3_c0(n, p["m"], p["alpha"], p["beta"]),
            lambda n, p: _jacobi3_c1(n, p["m"], p["alpha"], p["beta"]),
            lambda n, p: (-3 * p["m"] + n - 2) * (p["alpha"] + p["beta"] - p["m"] + n - 2)
            * (3 * p["alpha"] + 3 * p["beta"] + 3 * p["m"] + n - 2) * (2 * (p["alpha"] + p["beta"] - 1) + p["m"] + n)
            / _jacobi3_den(n, p["alpha"]),
        ),
        (
            lambda p: Q(1),
            lambda p: -3 * p["m"] * (p["m"] + p["alpha"] + p["beta"] + 1) / (p["alpha"] + 1),
            lambda p: 3 * p["m"] ** 2 * (p["alpha"] + p["beta"] + p["m"] + 1) ** 2 / (p["alpha"] + 1) ** 2
            + 3 * (p["m"] - 1) * p["m"] * (p["alpha"] + p["beta"] + p["m"] + 2) * (p["alpha"] + p["beta"] + p["m"] + 1)
            / (2 * (p["alpha"] + 1) * (p["alpha"] + 2)),
        ),
        _m_grid(**JACOBI_WEIGHTS),
        {
            "c2": Erratum(
                "three of the four linear factors of the v_{n-2} coefficient are shifted",
                lambda n, p: (3 * p["m"] - n + 2) * (2 * p["alpha"] + 2 * p["beta"] + p["m"] + n)
                * (-p["alpha"] - p["beta"] + p["m"] - n + 1) * (3 * p["alpha"] + 3 * p["beta"] + 3 * p["m"] + n + 1)
                / _jacobi3_den(n, p["alpha"]),
            )
        },
    ),
    PrintedCorollary(
        "sin cubed",
        Family.SIN3,
        3,
        lambda p: ((1 + p["alpha"]) / 2, (1 - p["alpha"]) / 2, Q(3, 2)),
        (
            lambda n, p: (-5 * p["alpha"] ** 2 + 6 * n**2 + 9 * n + 5) / (2 * n**2 + 9 * n + 10),
            lambda n, p: (
                -9 * p["alpha"] ** 4 + 10 * p["alpha"] ** 2 + 20 * p["alpha"] ** 2 * n * (4 * n + 3)
                - 4 * n * (4 * n * (3 * n * (n + 1) + 2) + 3) - 1
            )
            / (4 * (n + 1) * (n + 2) * (2 * n + 3) * (2 * n + 5)),
            lambda n, p: (9 * p["alpha"] ** 4 - 10 * p["alpha"] ** 2 * (1 - 2 * n) ** 2 + (1 - 2 * n) ** 4)
            / (4 * (n + 1) * (n + 2) * (2 * n + 3) * (2 * n + 5)),
        ),
        (lambda p: Q(0), lambda p: (1 - p["alpha"] ** 2) / 2, lambda p: (13 * p["alpha"] ** 4 - 50 * p["alpha"] ** 2 + 37) / 120),
        TRIG_ALPHAS,
        {"t0": Erratum("v_0 printed as 0; the leading coefficient of F^3 is 1", lambda p: Q(1))},
    ),
    PrintedCorollary(
        "cos cubed",
        Family.COS3,
        3,
        lambda p: (p["alpha"] / 2, -p["alpha"] / 2, H),
        (
            lambda n, p: (-5 * p["alpha"] ** 2 + 6 * n**2 - 9 * n + 5) / (2 * n**2 + 3 * n + 1),
            lambda n, p: (
                -9 * p["alpha"] ** 4 + 20 * p["alpha"] ** 2 * (n - 1) * (4 * n - 5)
                - 8 * (n - 1) * (2 * n * (3 * (n - 4) * n + 17) - 17)
            )
            / (4 * n * (n + 1) * (2 * n - 1) * (2 * n + 1)),
            lambda n, p: (9 * p["alpha"] ** 4 - 40 * p["alpha"] ** 2 * (n - 2) ** 2 + 16 * (n - 2) ** 4)
            / (4 * n * (n + 1) * (2 * n - 1) * (2 * n + 1)),
        ),
        (lambda p: Q(0), lambda p: -3 * p["alpha"] ** 2 / 2, lambda p: (7 * p["alpha"] ** 4 - 4 * p["alpha"] ** 2) / 8),
        TRIG_ALPHAS,
        {"t0": Erratum("v_0 printed as 0; the leading coefficient of F^3 is 1", lambda p: Q(1))},
    ),
)


def _jacobi2_c0(n, m, al, be):
    num = (
        -2 * m**2 * (2 * al + 2 * n + 1)
        - 2 * m * (al + be + 1) * (2 * al + 2 * n + 1)
        + n * (4 * al * (al + be + 1) + be + 2 * n**2 + 3 * n * (2 * al + be + 1) + 1)
    )
    return num / ((n + 1) * (al + n + 1) * (2 * al + n + 1))


def _gegenbauer3_den(n, al):
    return (n + 1) * (2 * al + n) * (2 * al + 2 * n + 1) * (6 * al + 2 * n - 1)


def _gegenbauer3_c0(n, m, al):
    num = (
        12 * n**4
        + 24 * (4 * al - 1) * n**3
        + (4 * al * (55 * al - 29) - 40 * m**2 - 80 * al * m + 19) * n**2
        + ((4 * al - 1) * (4 * al * (9 * al - 5) + 5) + 20 * (1 - 6 * al) * m**2 + 40 * al * (1 - 6 * al) * m) * n
        - 12 * al * (6 * al - 1) * m * (2 * al + m)
    )
    return num / _gegenbauer3_den(n, al)


def _gegenbauer3_c1(n, m, al):
    # The printed fourth line has lost its leading "+"; it is read as a sum.
    num = (
        -12 * n**4
        + (60 - 120 * al) * n**3
        + 4 * (-88 * al**2 + 108 * al + 20 * m**2 + 40 * al * m - 29) * n**2
        + 6 * (2 * al - 1) * (-24 * al**2 + 54 * al + 30 * m**2 + 60 * al * m - 17) * n
        + 288 * al**3 - 440 * al**2 + 216 * al - 36 * m**4 - 144 * al * m**3 + 144 * al**2 * m**2
        - 360 * al * m**2 + 100 * m**2 + 576 * al**3 * m - 720 * al**2 * m + 200 * al * m - 34
    )
    return num / _gegenbauer3_den(n, al)


def _jacobi3_den(n, al):
    return (n + 1) * (al + n + 1) * (2 * al + n + 1) * (3 * al + n + 1)


def _jacobi3_c0(n, m, al, be):
    num = (
        3 * n**4
        + 6 * (3 * al + be + 1) * n**3
        + (11 * al * (3 * al + 2 * be + 2) + 4 * (be + 1) - 10 * m**2 - 10 * m * (al + be + 1)) * n**2
        + (18 * al**3 + 18 * al**2 * (be + 1) + 7 * al * (be + 1) + be) * n
        - (10 * (3 * al + 1) * m**2 + 10 * (3 * al + 1) * m * (al + be + 1) - 1) * n
        - 3 * (6 * al**2 + 5 * al + 1) * m * (al + be + m + 1)
    )
    return num / _jacobi3_den(n, al)


def _jacobi3_c1(n, m, al, be):
    # As with Gegenbauer, a line break has swallowed a "+".
    num = (
        -3 * n**4
        - 6 * (3 * al + 2 * be) * n**3
        + (-33 * al**2 + al * (10 - 44 * be) - 11 * be**2 + 10 * be + 20 * m**2 + 20 * m * (al + be + 1) + 3) * n**2
        + 3 * (-6 * al**3 + al * (-6 * be**2 + 15 * be + 20 * m**2 + 10 * (3 * be + 2) * m + 3)) * n
        + 3 * (be * (5 * be + 10 * m**2 + 10 * (be + 1) * m + 1) + 2 * al**2 * (-6 * be + 10 * m + 5)) * n
        + (al + be) * (3 * al * (6 * al + 6 * be + 1) - 4 * be - 1)
        - 9 * m**4
        - 18 * m**3 * (al + be + 1)
        + m**2 * (27 * al**2 + 9 * al * (2 * be - 3) - 9 * be * (be + 3) - 11)
        + m * (al + be + 1) * (9 * al * (4 * al + 4 * be - 1) - 9 * be - 2)
    )
    return num / _jacobi3_den(n, al)


def general_coeff(p: ParameterTriple, power: int, j: int, n: int):
    """Coefficient j of the general recurrence at (p, n), or None on a zero denominator."""
    parts = alpha_parts(p, n) if power == 2 else beta_parts(p, n)
    *nums, factors = parts
    den = 1
    for _, v in factors:
        if v == 0:
            return None
        den *= v
    return nums[j] / den


def general_initial(p: ParameterTriple, power: int):
    return square_initial(p) if power == 2 else cube_initial(p)


@dataclass
class CorollaryCheck:
    name: str
    params: dict
    mismatches: list
    errata_confirmed: list
    errata_unconfirmed: list
    corrected_failures: list

    @property
    def ok(self) -> bool:
        # An erratum may be invisible at a degenerate point (m = 0, say); that is
        # not a failure here, check_catalog makes sure each one shows up somewhere.
        return not self.mismatches and not self.corrected_failures


def check_corollary(entry: PrintedCorollary, params: dict, n_max: int = 50) -> CorollaryCheck:
    """Compare printed forms with the general formula at one parameter point.

    A printed form listed in ``entry.errata`` is expected to disagree at some
    index, and its corrected form must agree everywhere.
    """
    p = ParameterTriple(*entry.triple(params))
    mismatches, confirmed, unconfirmed, corrected_bad = [], [], [], []

    def compare(key, printed, general_at, indices):
        erratum = entry.errata.get(key)
        printed_diff = []
        for idx in indices:
            g = general_at(idx)
            if g is None:
                continue
            try:
                val = printed(idx)
            except ZeroDivisionError:
                continue
            if val != g:
                printed_diff.append(idx)
            if erratum is not None:
                try:
                    fixed = erratum.corrected(idx, params)
                except ZeroDivisionError:
                    continue
                if fixed != g:
                    corrected_bad.append((key, idx))
        if erratum is None:
            mismatches.extend((key, i) for i in printed_diff)
        elif printed_diff:
            confirmed.append(key)
        else:
            # printed form agrees everywhere on this grid point, e.g. m=0
            unconfirmed.append(key)

    for j, fn in enumerate(entry.coeffs):
        compare(
            f"c{j}",
            lambda n, fn=fn: fn(n, params),
            lambda n, j=j: general_coeff(p, entry.power, j, n),
            range(1, n_max + 1),
        )
    gen_init = general_initial(p, entry.power)
    for j, fn in enumerate(entry.initial):
        key = f"t{j}"
        erratum = entry.errata.get(key)
        printed = fn(params)
        if erratum is None:
            if printed != gen_init[j]:
                mismatches.append((key, j))
            continue
        if printed != gen_init[j]:
            confirmed.append(key)
        else:
            unconfirmed.append(key)
        if erratum.corrected(params) != gen_init[j]:
            corrected_bad.append((key, j))
    return CorollaryCheck(entry.name, params, mismatches, confirmed, unconfirmed, corrected_bad)


def check_catalog(n_max: int = 50) -> dict:
    """Run every entry over its parameter grid.

    Returns ``{name: {"ok": bool, "errata": [...], "failures": [...]}}`` where
    ``ok`` also requires each listed erratum to be observed on the grid.
    """
    out = {}
    for entry in CATALOG:
        failures, seen = [], set()
        for params in entry.grid:
            res = check_corollary(entry, params, n_max)
            seen.update(res.errata_confirmed)
            if not res.ok:
                failures.append({"params": params, "mismatches": res.mismatches, "corrected": res.corrected_failures})
        missing = sorted(set(entry.errata) - seen)
        out[entry.name] = {
            "ok": not failures and not missing,
            "errata": [f"{k}: {entry.errata[k].what}" for k in sorted(entry.errata)],
            "failures": failures,
            "unobserved_errata": missing,
        }
    return out
