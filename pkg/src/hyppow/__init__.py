"""Maclaurin coefficients of squared and cubed Gauss hypergeometric functions.

The core entry points are :func:`square_coeffs` and :func:`cube_coeffs`, which
run linear recurrences in O(N), and the Cauchy-product oracles in
:mod:`hyppow.series` that they are checked against.
"""

from hyppow.numerics import Backend, ParameterTriple, parse_scalar, pochhammer
from hyppow.recurrence import (
    FallbackMode,
    FallbackPolicy,
    ZeroDenominatorError,
    alpha_coeffs,
    beta_coeffs,
    cube_coeffs,
    square_coeffs,
)
from hyppow.series import (
    CoeffSeq,
    Provenance,
    cauchy_cube_oracle,
    cauchy_product_oracle,
    cauchy_square_oracle,
    f_coeff,
)

__version__ = "0.1.0"

__all__ = [
    "Backend",
    "CoeffSeq",
    "FallbackMode",
    "FallbackPolicy",
    "ParameterTriple",
    "Provenance",
    "ZeroDenominatorError",
    "alpha_coeffs",
    "beta_coeffs",
    "cauchy_cube_oracle",
    "cauchy_product_oracle",
    "cauchy_square_oracle",
    "cube_coeffs",
    "f_coeff",
    "parse_scalar",
    "pochhammer",
    "square_coeffs",
]
