import cmath
import math
from fractions import Fraction as Q

import mpmath
import pytest

import oracles
from hyppow.families import (
    ArgMap,
    Family,
    MissingParameterError,
    UnknownFamilyError,
    catalog_lookup,
    evaluate_adaptive,
    evaluate_family,
    family_coeffs,
    geometric_tail_bound,
    polynomial_truncation_check,
)
from hyppow.identities import Status
from hyppow.numerics import Backend, DomainError


class TestLookup:
    def test_k2(self):
        spec = catalog_lookup(Family.K2)
        assert tuple(spec.triple) == (Q(1, 2), Q(1, 2), Q(1))
        assert spec.arg_map is ArgMap.SQUARE
        assert (spec.prefactor.coeff, spec.prefactor.pi_power) == (Q(1, 4), 2)
        assert spec.prefactor.value() == pytest.approx(math.pi**2 / 4)
        assert str(spec.prefactor) == "1/4*pi^2"

    def test_legendre(self):
        spec = catalog_lookup("legendre2", {"m": 3})
        assert tuple(spec.triple) == (-3, 4, 1)
        assert spec.arg_map is ArgMap.ONE_MINUS_TWO_Z
        assert family_coeffs(spec, 1)[1] == -24

    def test_gegenbauer_prefactor_uses_degree(self):
        spec = catalog_lookup(Family.GEGENBAUER3, {"m": 2, "alpha": 1})
        assert tuple(spec.triple) == (-2, 4, Q(3, 2))
        # ((2 alpha)_m / m!)^3 with m = 2: ((2)_2 / 2)^3 = 3^3
        assert spec.prefactor.coeff == 27

    def test_errors(self):
        with pytest.raises(UnknownFamilyError):
            catalog_lookup("bessel2")
        with pytest.raises(MissingParameterError):
            catalog_lookup(Family.JACOBI2, {"m": 1, "alpha": 1})
        with pytest.raises(DomainError):
            catalog_lookup(Family.CHEBYSHEV2, {"m": Q(3, 2)})
        with pytest.raises(DomainError):
            catalog_lookup(Family.CHEBYSHEV2, {"m": -1})

    def test_chebyshev_guard(self):
        # c = 1/2 is admissible
        assert catalog_lookup(Family.CHEBYSHEV3, {"m": 4}).triple.c == Q(1, 2)

    def test_backend_choice(self):
        assert catalog_lookup(Family.K2).triple.backend is Backend.RATIONAL
        assert catalog_lookup(Family.K2, backend=Backend.COMPLEX).triple.backend is Backend.COMPLEX
        assert catalog_lookup(Family.F_SQUARED, {"a": 1j, "b": 1, "c": 2}).triple.backend is Backend.COMPLEX
        assert catalog_lookup(Family.SIN2, {"alpha": 1}).triple.backend is Backend.RATIONAL

    def test_describe(self):
        d = catalog_lookup(Family.SIN3, {"alpha": Q(1, 3)}).describe()
        assert d["family"] == "sin3" and d["exponent"] == "2n+3" and d["alpha"] == "1/3"


class TestCoefficients:
    def test_k2(self):
        seq = family_coeffs(catalog_lookup(Family.K2), 4)
        assert seq.terms == [1, Q(1, 2), Q(11, 32), Q(17, 64), Q(1787, 8192)]
        assert seq.metadata["exponent_scale"] == 2
        assert seq.metadata["prefactor"] == "1/4*pi^2"

    def test_sin_alpha_one(self):
        assert family_coeffs(catalog_lookup(Family.SIN2, {"alpha": 1}), 3).terms == [1, 0, 0, 0]

    def test_chebyshev2(self):
        seq = family_coeffs(catalog_lookup(Family.CHEBYSHEV2, {"m": 2}), 4)
        assert seq.terms == [1, -16, 80, -128, 64]

    def test_zero_balanced(self):
        a, b = Q(1, 3), Q(3, 4)
        seq = family_coeffs(catalog_lookup(Family.ZERO_BALANCED_SQUARED, {"a": a, "b": b}), 3)
        want2 = a * b * (a**2 * (2 * b + 1) + a * (b + 1) * (2 * b + 1) + b**2 + b) / ((a + b) ** 2 * (a + b + 1))
        want3 = (
            2 * a * (a + 1) * b * (b + 1) * (a**2 * (2 * b + 1) + a * (b + 2) * (2 * b + 1) + b * (b + 2))
            / (3 * (a + b) ** 2 * (a + b + 1) * (a + b + 2))
        )
        assert seq.terms[1:] == [2 * a * b / (a + b), want2, want3]

    @pytest.mark.parametrize("m", range(6))
    @pytest.mark.parametrize("alpha", [Q(1, 2), Q(1), Q(3, 2)])
    def test_gegenbauer_against_sympy(self, m, alpha):
        for power, fam in ((2, Family.GEGENBAUER2), (3, Family.GEGENBAUER3)):
            spec = catalog_lookup(fam, {"m": m, "alpha": alpha})
            got = [spec.prefactor.coeff * t for t in family_coeffs(spec, power * m).terms]
            assert got == oracles.gegenbauer_power(m, alpha, power) + [0] * (len(got) - power * m - 1)

    @pytest.mark.parametrize("m", range(6))
    def test_jacobi_against_sympy(self, m):
        for alpha in (Q(1, 2), Q(1)):
            for beta in (Q(1, 2), Q(1)):
                for power, fam in ((2, Family.JACOBI2), (3, Family.JACOBI3)):
                    spec = catalog_lookup(fam, {"m": m, "alpha": alpha, "beta": beta})
                    got = [spec.prefactor.coeff * t for t in family_coeffs(spec, power * m).terms]
                    assert got == oracles.jacobi_power(m, alpha, beta, power)

    @pytest.mark.parametrize("m", range(6))
    def test_gegenbauer_half_is_legendre(self, m):
        g = catalog_lookup(Family.GEGENBAUER2, {"m": m, "alpha": Q(1, 2)})
        leg = catalog_lookup(Family.LEGENDRE2, {"m": m})
        assert g.prefactor.coeff == 1
        assert family_coeffs(g, 2 * m + 2).terms == family_coeffs(leg, 2 * m + 2).terms

    def test_kummer_product(self):
        spec = catalog_lookup(Family.KUMMER_PRODUCT, {"a": 1, "c": 2})
        assert family_coeffs(spec, 6).terms == [1, 0, Q(1, 12), 0, Q(1, 360), 0, Q(1, 20160)]


class TestEvaluation:
    def test_at_zero(self):
        for fam in (Family.K2, Family.E2):
            value, _ = evaluate_family(catalog_lookup(fam), 0, 10)
            assert value == pytest.approx(math.pi**2 / 4)

    def test_legendre_point(self):
        value, tail = evaluate_family(catalog_lookup(Family.LEGENDRE2, {"m": 1}), Q(1, 4), 5)
        assert value == pytest.approx(0.25) and tail == 0.0

    @pytest.mark.parametrize("x", [0.1, 0.3, 0.5])
    def test_k2_against_quadrature(self, x):
        value, _ = evaluate_family(catalog_lookup(Family.K2), x, 200)
        assert oracles.rel_err(value.real, oracles.K_quad(x) ** 2) <= 1e-8

    @pytest.mark.parametrize("x", [0.2, 0.6, 0.85])
    def test_cubes_against_quadrature(self, x):
        k3, _, _ = evaluate_adaptive(catalog_lookup(Family.K3), x)
        e3, _, _ = evaluate_adaptive(catalog_lookup(Family.E3), x)
        e2, _, _ = evaluate_adaptive(catalog_lookup(Family.E2), x)
        assert oracles.rel_err(k3.real, oracles.K_quad(x) ** 3) <= 1e-10
        assert oracles.rel_err(e3.real, oracles.E_quad(x) ** 3) <= 1e-10
        assert oracles.rel_err(e2.real, oracles.E_quad(x) ** 2) <= 1e-10

    def test_e2_half(self):
        value, _, _ = evaluate_adaptive(catalog_lookup(Family.E2), 0.5)
        assert oracles.rel_err(value.real, oracles.E_quad(0.5) ** 2) <= 1e-8

    @pytest.mark.parametrize("alpha", [Q(1, 3), Q(2), Q(5, 2)])
    @pytest.mark.parametrize("z", [0.1, 0.4, 0.7])
    def test_trigonometric(self, alpha, z):
        al = float(alpha)
        s2, _, _ = evaluate_adaptive(catalog_lookup(Family.SIN2, {"alpha": alpha}), z)
        c2, _, _ = evaluate_adaptive(catalog_lookup(Family.COS2, {"alpha": alpha}), z)
        s3, _, _ = evaluate_adaptive(catalog_lookup(Family.SIN3, {"alpha": alpha}), z)
        c3, _, _ = evaluate_adaptive(catalog_lookup(Family.COS3, {"alpha": alpha}), z)
        theta = al * math.asin(z)
        assert s2.real == pytest.approx(math.sin(theta) ** 2, abs=1e-10)
        assert c2.real == pytest.approx(math.cos(theta) ** 2, abs=1e-10)
        assert s3.real == pytest.approx(math.sin(theta) ** 3, abs=1e-10)
        assert c3.real == pytest.approx(math.cos(theta) ** 3, abs=1e-10)
        assert abs(s2 + c2 - 1) <= 1e-10

    def test_raw_triples_against_mpmath(self):
        a, b, c, z = 0.3 + 0.2j, -1.1, 2.4 - 0.3j, 0.35 - 0.2j
        for fam, power in ((Family.F_SQUARED, 2), (Family.F_CUBED, 3)):
            spec = catalog_lookup(fam, {"a": a, "b": b, "c": c})
            value, tail, _ = evaluate_adaptive(spec, z)
            ref = complex(mpmath.hyp2f1(a, b, c, z)) ** power
            assert abs(value - ref) <= 1e-11 * abs(ref)
            assert tail is not None and tail < 1e-12

    def test_contiguous_against_mpmath(self):
        a, b, c, z = 0.25, 0.6, 1.3, 0.45
        f = oracles.hyp2f1(a, b, c, z)
        g = oracles.hyp2f1(a + 1, b + 1, c + 1, z)
        v2, _, _ = evaluate_adaptive(catalog_lookup(Family.CONTIGUOUS2, {"a": a, "b": b, "c": c}), z)
        v3, _, _ = evaluate_adaptive(catalog_lookup(Family.CONTIGUOUS3, {"a": a, "b": b, "c": c}), z)
        assert oracles.rel_err(v2, f * g) < 1e-11
        assert oracles.rel_err(v3, f * f * g) < 1e-11

    def test_kummer_product_entire(self):
        a, c, x = 0.5, 1.5, 3.0
        spec = catalog_lookup(Family.KUMMER_PRODUCT, {"a": a, "c": c})
        value, _, _ = evaluate_adaptive(spec, x)
        ref = mpmath.hyp1f1(a, c, x) * mpmath.hyp1f1(a, c, -x)
        assert oracles.rel_err(value, complex(ref)) < 1e-12

    def test_domain_error(self):
        with pytest.raises(DomainError):
            evaluate_family(catalog_lookup(Family.K2), 1.0, 10)
        with pytest.raises(DomainError):
            evaluate_family(catalog_lookup(Family.F_SQUARED, {"a": 1, "b": 1, "c": 2}), 1.5j, 10)
        # polynomial families are entire
        evaluate_family(catalog_lookup(Family.CHEBYSHEV2, {"m": 2}), 3.0, 4)

    def test_tail_bound(self):
        assert geometric_tail_bound([0, 0], 0.5) == 0.0
        # a single nonzero term gives no ratio to extrapolate from
        assert geometric_tail_bound([1, 0, 0], 0.5) is None
        assert geometric_tail_bound([1, 1, 1], 1.0) is None
        # geometric series: tail after two terms of sum w^n
        assert geometric_tail_bound([1, 1], 0.5) == pytest.approx(0.5 * 0.5 / 0.5)

    def test_complex_argument(self):
        z = 0.3 + 0.4j
        value, _, _ = evaluate_adaptive(catalog_lookup(Family.K2), z)
        ref = (math.pi / 2 * complex(mpmath.hyp2f1(0.5, 0.5, 1, z * z))) ** 2
        assert abs(value - ref) < 1e-11 * abs(ref)
        assert cmath.isfinite(value)


class TestTruncation:
    def test_examples(self):
        for fam, params, first_zero in [
            (Family.CHEBYSHEV2, {"m": 1}, 3),
            (Family.LEGENDRE3, {"m": 2}, 7),
            (Family.JACOBI2, {"m": 0, "alpha": 1, "beta": Q(1, 2)}, 1),
        ]:
            spec = catalog_lookup(fam, params)
            report = polynomial_truncation_check(spec)
            assert report.status is Status.PASS
            seq = family_coeffs(spec, first_zero + 3)
            assert seq[first_zero - 1] != 0
            assert all(t == 0 for t in seq[first_zero:])

    def test_rejects_non_polynomial(self):
        with pytest.raises(ValueError):
            polynomial_truncation_check(catalog_lookup(Family.K2))
