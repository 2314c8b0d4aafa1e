import json
import math
from fractions import Fraction as Q

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from hyppow.numerics import DomainError, ParameterTriple
from hyppow.identities import (
    Status,
    clausen_terms,
    contiguous_initial,
    contiguous_oracle,
    contiguous_product_check,
    gamma_bounds_check,
    gamma_ratio_limit,
    hypergeometric_ratio,
    k_log_ratio,
    k_log_ratio_check,
    key_expression,
    preece_even_terms,
    ratio_monotonicity,
    verify_clausen,
    verify_ramanujan_preece,
)

H = Q(1, 2)


class TestClausen:
    def test_terms_example(self):
        assert clausen_terms(H, H, 2) == [1, Q(1, 3), Q(8, 45)]

    def test_half_half_passes(self):
        assert verify_clausen(H, H, 2).passed

    def test_zero_parameter(self):
        assert clausen_terms(Q(0), Q(3), 4) == [1, 0, 0, 0, 0]
        assert verify_clausen(Q(0), Q(3), 10).passed

    def test_long_run(self):
        rep = verify_clausen(Q(1, 3), Q(1, 4), 100)
        assert rep.passed and rep.first_fail_index is None

    def test_against_mpmath_hyp3f2(self):
        a, b, x = 0.3, 0.45, 0.2
        lhs = complex(mpmath.hyp2f1(a, b, a + b + 0.5, x)) ** 2
        w = clausen_terms(Q(3, 10), Q(9, 20), 60)
        assert sum(float(t) * x**k for k, t in enumerate(w)) == pytest.approx(lhs.real, rel=1e-13)

    @given(
        st.fractions(min_value=Q(1, 9), max_value=3, max_denominator=9),
        st.fractions(min_value=Q(1, 9), max_value=3, max_denominator=9),
    )
    @settings(max_examples=25, deadline=None)
    def test_holds_for_positive_rationals(self, a, b):
        assert verify_clausen(a, b, 20).passed

    def test_rejects_invalid_lower(self):
        with pytest.raises(DomainError):
            verify_clausen(Q(-1), Q(-1, 2), 5)


class TestPreece:
    def test_small(self):
        assert verify_ramanujan_preece(Q(1), Q(2), 4).passed
        assert preece_even_terms(Q(1), Q(2), 1)[1] == Q(1, 12)

    def test_a_equals_c(self):
        # M(c,c;x) M(c,c;-x) = e^x e^-x = 1
        rep = verify_ramanujan_preece(Q(3, 2), Q(3, 2), 10)
        assert rep.passed
        assert preece_even_terms(Q(3, 2), Q(3, 2), 5) == [1, 0, 0, 0, 0, 0]

    def test_half_three_halves(self):
        assert verify_ramanujan_preece(H, Q(3, 2), 8).passed

    def test_rejects_bad_c(self):
        with pytest.raises(DomainError):
            verify_ramanujan_preece(Q(1), Q(-1), 4)

    def test_against_mpmath(self):
        a, c, x = 0.7, 2.3, 0.9
        lhs = float(mpmath.hyp1f1(a, c, x) * mpmath.hyp1f1(a, c, -x))
        evens = preece_even_terms(Q(7, 10), Q(23, 10), 30)
        assert sum(float(t) * x ** (2 * k) for k, t in enumerate(evens)) == pytest.approx(lhs, rel=1e-13)


class TestMonotonicity:
    def test_k_ratios(self):
        rep = ratio_monotonicity(H, H, Q(1), 10)
        assert rep.passed
        assert rep.details["ratio_preview"][:3] == ["1", "1", "33/32"]

    def test_c_equals_a_has_vanishing_key(self):
        assert key_expression(Q(2), Q(1, 3), Q(2), 5) == 0
        rep = ratio_monotonicity(Q(2), Q(1, 3), Q(2), 20)
        assert rep.passed and "vanishes" in rep.notes

    def test_long_run(self):
        assert ratio_monotonicity(Q(1, 3), Q(2, 3), Q(2), 50).passed

    def test_violated_hypothesis_is_inconclusive(self):
        rep = ratio_monotonicity(Q(2), H, Q(1), 30)
        assert rep.status is Status.INCONCLUSIVE
        assert rep.details["key_sign"] == -1
        assert all(key_expression(Q(2), H, Q(1), n) < 0 for n in range(1, 31))

    def test_key_expression_independent_identity(self):
        a, b, c = Q(1, 3), Q(3, 4), Q(5, 2)
        v = oracles.gauss_terms_exact(2 * a, 2 * b, 2 * c, 12)
        u = oracles.exact_power(a, b, c, 12, 2)
        for n in range(1, 11):
            # ratio step sign follows the key expression sign
            step = u[n + 1] / v[n + 1] - u[n] / v[n]
            assert (step >= 0) == (key_expression(a, b, c, n) >= 0)

    def test_rejects_nonpositive(self):
        with pytest.raises(DomainError):
            ratio_monotonicity(Q(-1, 2), H, Q(1), 5)


class TestGammaRatio:
    def test_k_limit(self):
        assert gamma_ratio_limit(0.5, 0.5, 2) == pytest.approx(32 / (3 * math.pi**2), rel=1e-14)

    def test_a_zero(self):
        assert gamma_ratio_limit(0, 0.5, 2) == pytest.approx(1.0, rel=1e-14)

    def test_against_mpmath(self):
        a, b, c = 0.3, 0.7, 1.9
        x = 0.5
        ref = float(mpmath.hyp2f1(a, b, c, x) ** 2 / mpmath.hyp2f1(2 * a, 2 * b, 2 * c, x))
        assert hypergeometric_ratio(a, b, c, x, 200) == pytest.approx(ref, rel=1e-12)

    def test_domain(self):
        with pytest.raises(DomainError):
            gamma_ratio_limit(0.5, 0.5, 1)

    def test_bounds(self):
        rep = gamma_bounds_check(0.5, 0.5, 2)
        assert rep.passed
        assert len(rep.details["samples"]) == 3


class TestKLog:
    def test_value_matches_quadrature(self):
        x = 0.3
        K = oracles.K_quad(math.sqrt(x))
        assert k_log_ratio(x) == pytest.approx(x * K**2 / math.log1p(-x), rel=1e-11)

    def test_decreasing_samples(self):
        assert k_log_ratio_check([0.05, 0.2, 0.5, 0.8, 0.95]).passed

    def test_rejects_bad_samples(self):
        with pytest.raises(DomainError):
            k_log_ratio_check([0.5, 0.2])
        with pytest.raises(DomainError):
            k_log_ratio(1.0)


class TestContiguous:
    @pytest.mark.parametrize("power", [2, 3])
    def test_passes(self, power):
        for trip in ((H, H, Q(1)), (Q(1, 3), Q(-2, 5), Q(7, 4))):
            assert contiguous_product_check(ParameterTriple(*trip), 25, power).passed

    def test_initial_values_against_convolution(self):
        a, b, c = Q(1, 3), Q(2, 5), Q(7, 4)
        f = oracles.gauss_terms_exact(a, b, c, 3)
        g = oracles.gauss_terms_exact(a + 1, b + 1, c + 1, 3)
        assert list(contiguous_initial(ParameterTriple(a, b, c), 2)) == oracles.naive_convolve(f, g, 1)
        cube = oracles.naive_convolve(oracles.naive_convolve(f, f, 2), g, 2)
        assert list(contiguous_initial(ParameterTriple(a, b, c), 3)) == cube
        assert contiguous_oracle(ParameterTriple(a, b, c), 3, 3) == oracles.naive_convolve(
            oracles.naive_convolve(f, f, 3), g, 3
        )

    def test_ab_zero_notes(self):
        rep = contiguous_product_check(ParameterTriple(Q(0), Q(1), Q(2)), 10)
        assert rep.passed and "skipped" in rep.notes

    def test_bad_power(self):
        with pytest.raises(ValueError):
            contiguous_product_check(ParameterTriple(H, H, Q(1)), 5, 4)


def test_report_json_schema():
    rep = verify_clausen(H, H, 5)
    out = json.loads(json.dumps(rep.to_json()))
    assert out["identity"] == "clausen"
    assert out["status"] == "pass"
    assert out["first_fail_index"] is None
    assert out["residual_summary"] == {"count": 0, "max_abs": 0.0, "first": []}
    assert out["max_index"] == 5
    inc = ratio_monotonicity(Q(2), H, Q(1), 5).to_json()
    assert inc["status"] == "inconclusive" and "details" in inc
