from fractions import Fraction as Q

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from hyppow.numerics import DomainError, ParameterTriple
from hyppow.series import (
    RATIONAL_N_CAP,
    CoeffSeq,
    Provenance,
    cauchy_cube_oracle,
    cauchy_product_oracle,
    cauchy_square_oracle,
    check_length,
    convolve,
    f_coeff,
    f_coeffs,
    kummer_coeff,
    kummer_coeffs,
    pfq_coeff,
)

K = ParameterTriple(Q(1, 2), Q(1, 2), Q(1))
E = ParameterTriple(Q(-1, 2), Q(1, 2), Q(1))

params = st.fractions(min_value=-4, max_value=4, max_denominator=12)
lower = params.filter(lambda c: not (c.denominator == 1 and c <= 0))


def test_f_coeff_examples():
    assert f_coeff(K, 0) == 1
    assert f_coeff(K, 2) == Q(9, 64)
    assert f_coeff(E, 2) == Q(-3, 64)


@given(params, params, lower)
@settings(max_examples=40)
def test_f_coeffs_match_rising_factorials(a, b, c):
    assert f_coeffs(ParameterTriple(a, b, c), 12) == oracles.gauss_terms_exact(a, b, c, 12)


def test_pfq_examples():
    assert pfq_coeff([7, Q(1, 3)], [Q(5, 2)], 0) == 1
    assert pfq_coeff([1, 1, 1], [Q(3, 2), 2], 2) == Q(8, 45)
    assert pfq_coeff([1, 1], [2, 1, Q(3, 2)], 1) / 4 == Q(1, 12)


def test_pfq_rejects_bad_lower():
    with pytest.raises(DomainError):
        pfq_coeff([1], [Q(-2)], 3)


def test_kummer_examples():
    assert kummer_coeff(Q(1), Q(2), 0) == 1
    assert kummer_coeff(Q(1), Q(2), 1) == Q(1, 2)
    assert kummer_coeff(Q(1), Q(2), 3) == Q(1, 24)
    assert kummer_coeffs(Q(1), Q(2), 3) == [1, Q(1, 2), Q(1, 6), Q(1, 24)]


def test_square_oracle_examples():
    assert cauchy_square_oracle(K, 2).terms == [1, Q(1, 2), Q(11, 32)]
    assert cauchy_square_oracle(E, 2).terms == [1, Q(-1, 2), Q(-1, 32)]
    assert cauchy_square_oracle(ParameterTriple(Q(0), Q(3), Q(2)), 5).terms == [1, 0, 0, 0, 0, 0]
    assert cauchy_square_oracle(K, 3).provenance is Provenance.ORACLE


def test_cube_oracle_examples():
    assert cauchy_cube_oracle(K, 2).terms == [1, Q(3, 4), Q(39, 64)]
    assert cauchy_cube_oracle(E, 2).terms == [1, Q(-3, 4), Q(3, 64)]
    assert cauchy_cube_oracle(K, 3)[3] == Q(133, 256)


def test_oracles_match_independent_convolution():
    for trip in [(Q(1, 3), Q(2, 5), Q(7, 4)), (Q(-3), Q(1, 2), Q(1, 2)), (Q(5, 2), Q(-1, 3), Q(7, 3))]:
        p = ParameterTriple(*trip)
        assert cauchy_square_oracle(p, 25).terms == oracles.exact_power(*trip, 25, 2)
        assert cauchy_cube_oracle(p, 25).terms == oracles.exact_power(*trip, 25, 3)


def test_product_oracle_examples():
    f = CoeffSeq(f_coeffs(K, 2), Provenance.ORACLE)
    identity = CoeffSeq([Q(1), Q(0), Q(0)], Provenance.CLOSED_FORM)
    assert cauchy_product_oracle(identity, f, 2).terms == f.terms
    assert cauchy_product_oracle(f, f, 2).terms == [1, Q(1, 2), Q(11, 32)]
    m = kummer_coeffs(Q(1), Q(2), 4)
    alt = [t if k % 2 == 0 else -t for k, t in enumerate(m)]
    assert cauchy_product_oracle(m, alt, 4).terms == [1, 0, Q(1, 12), 0, Q(1, 360)]


def test_product_oracle_length_mismatch():
    with pytest.raises(ValueError):
        cauchy_product_oracle([Q(1)], [Q(1), Q(2)], 1)


@given(params, params, lower)
@settings(max_examples=30, deadline=None)
def test_oracle_invariants(a, b, c):
    p = ParameterTriple(a, b, c)
    N = 15
    f = f_coeffs(p, N)
    sq = cauchy_square_oracle(p, N).terms
    assert sq == cauchy_product_oracle(f, f, N).terms
    assert cauchy_cube_oracle(p, N).terms == cauchy_product_oracle(sq, f, N).terms
    # a <-> b symmetry
    assert sq == cauchy_square_oracle(p.swapped(), N).terms
    assert cauchy_cube_oracle(p, N).terms == cauchy_cube_oracle(p.swapped(), N).terms


def test_triple_loop_equals_nested_convolution():
    for p in (K, ParameterTriple(Q(1, 3), Q(-2, 5), Q(7, 4))):
        assert cauchy_cube_oracle(p, 30, triple_loop=True).terms == cauchy_cube_oracle(p, 30).terms
    pc = ParameterTriple(0.3 + 1j, -1.2, 2.5 - 0.5j)
    loop = cauchy_cube_oracle(pc, 60, triple_loop=True).terms
    nested = cauchy_cube_oracle(pc, 60).terms
    assert max(oracles.rel_err(x, y) for x, y in zip(loop, nested)) < 1e-12


def test_complex_oracle_against_mpmath():
    a, b, c = 0.7 - 0.4j, -1.3 + 0.2j, 2.1 + 1.5j
    p = ParameterTriple(a, b, c)
    ref = oracles.mp_power(a, b, c, 80, 3)
    got = cauchy_cube_oracle(p, 80).terms
    assert max(oracles.rel_err(complex(x), y) for x, y in zip(ref, got)) < 1e-12


def test_length_cap():
    check_length(RATIONAL_N_CAP, K.backend)
    with pytest.raises(ValueError):
        check_length(RATIONAL_N_CAP + 1, K.backend)
    with pytest.raises(ValueError):
        check_length(-1, K.backend)
    check_length(RATIONAL_N_CAP + 1, ParameterTriple(0.5, 0.5, 1.0).backend)


def test_coeffseq_basics():
    seq = cauchy_square_oracle(K, 4)
    assert seq.N == 4 and len(seq) == 5
    assert seq.formatted()[2] == "11/32"
    assert not seq.overflowed
    with pytest.raises(ValueError):
        CoeffSeq([], Provenance.ORACLE)


def test_convolve_truncates_and_checks_length():
    assert convolve([1, 1, 0, 5], [1, 1, 0, 0], 2) == [1, 2, 1]
    with pytest.raises(ValueError):
        convolve([1, 1], [1, 1], 3)
