from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from rank2scat.poly import (Ring, LaurentSeries2, cp_add, cp_mul, cp_pow, cp_sub, tmax,
                            series_mul, series_inv, series_pow, series_log, series_exp,
                            uni_inv, uni_mul, uni_pow, uni_one, PowerCache, initial_P)
from conftest import P, to_sympy

R = Ring(2, 2)

monomials = st.tuples(st.lists(st.integers(0, 3), min_size=2, max_size=2),
                      st.lists(st.integers(0, 3), min_size=2, max_size=2))
polys = st.dictionaries(monomials.map(lambda m: R.key(*m)), st.integers(-5, 5).filter(bool),
                        max_size=5)


def series(order, terms):
    return LaurentSeries2(R, order, terms)


# -- CoeffPoly ------------------------------------------------------------------

def test_unit_law():
    f = P(R, "3*p11*p22 - p21**2 + 7")
    assert cp_mul({0: 1}, f) == f


def test_difference_of_squares():
    assert cp_mul(P(R, "p11 + p21"), P(R, "p11 - p21")) == P(R, "p11**2 - p21**2")


def test_binomial_cube():
    assert cp_pow(P(R, "1 + p11"), 3) == P(R, "1 + 3*p11 + 3*p11**2 + p11**3")


@given(monomials)
def test_key_roundtrip(m):
    q1, q2 = m
    k = R.key(q1, q2)
    assert R.unpack(k) == (tuple(q1), tuple(q2))
    assert R.bidegree(k) == (q1[0] + 2 * q1[1], q2[0] + 2 * q2[1])


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert cp_mul(a, b) == cp_mul(b, a)
    assert cp_mul(cp_mul(a, b), c) == cp_mul(a, cp_mul(b, c))
    assert cp_mul(a, cp_add(b, c)) == cp_add(cp_mul(a, b), cp_mul(a, c))
    assert cp_sub(a, a) == {}


@given(polys, polys)
def test_mul_matches_sympy(a, b):
    assert to_sympy(R, cp_mul(a, b)) == (to_sympy(R, a) * to_sympy(R, b)).expand()


def test_tmax_examples():
    f = P(R, "2*p11 + p21")
    assert tmax(f, f) == f
    assert tmax(R.var(1, 1), R.var(2, 1)) == P(R, "p11 + p21")
    assert tmax(f, P(R, "p11 + 3*p21")) == P(R, "2*p11 + 3*p21")


def test_json_roundtrip():
    f = P(R, "3*p11*p22 - p21**2 + 7")
    assert R.from_json(R.to_json(f)) == f
    assert R.to_json({R.key((1, 0), (0, 0)): Fraction(1, 2)})[0]["n"] == "1/2"


def test_specialize_and_evaluate():
    f = P(R, "p11*p12 + 2*p12**2*p21")
    assert R.specialize(f, {(1, 2): 3}) == P(R, "3*p11 + 18*p21")
    assert R.evaluate(f, {(1, 1): 1, (1, 2): 2, (2, 1): 5}) == 2 + 40


# -- series ---------------------------------------------------------------------

def test_series_mul_examples():
    one = LaurentSeries2.one(R, 4)
    f = series(4, {(1, 0): R.var(1, 1), (0, 0): {0: 1}})
    g = series(4, {(0, 1): R.var(2, 1), (0, 0): {0: 1}})
    assert series_mul(f, one) == f
    want = series(4, {(0, 0): {0: 1}, (1, 0): R.var(1, 1), (0, 1): R.var(2, 1),
                      (1, 1): P(R, "p11*p21")})
    assert series_mul(f, g) == want


def test_order_mismatch():
    with pytest.raises(ValueError):
        series_mul(LaurentSeries2.one(R, 2), LaurentSeries2.one(R, 3))


def test_series_inv_examples():
    assert series_inv(LaurentSeries2.one(R, 3)).is_one()
    f = series(3, {(0, 0): {0: 1}, (1, 0): R.var(1, 1)})
    want = series(3, {(0, 0): {0: 1}, (1, 0): P(R, "-p11"), (2, 0): P(R, "p11**2"),
                      (3, 0): P(R, "-p11**3")})
    assert series_inv(f) == want
    P1 = LaurentSeries2.from_uni(R, 2, initial_P(R, 1), (1, 0))
    inv = series_inv(P1)
    assert inv.coeff(1, 0) == P(R, "-p11")
    assert inv.coeff(2, 0) == P(R, "p11**2 - p12")
    assert series_mul(P1, inv).is_one()


def test_series_inv_rejects_bad_constant():
    with pytest.raises(ValueError):
        series_inv(series(2, {(0, 0): {0: 2}}))


def test_series_pow_examples():
    f = series(4, {(0, 0): {0: 1}, (1, 1): P(R, "p11*p21")})
    assert series_pow(f, 0).is_one()
    assert series_pow(f, 2) == series(4, {(0, 0): {0: 1}, (1, 1): P(R, "2*p11*p21"),
                                          (2, 2): P(R, "p11**2*p21**2")})
    assert series_mul(series_pow(f, -3), series_pow(f, 3)).is_one()


def test_log_examples():
    assert series_log(LaurentSeries2.one(R, 4)).terms == {}
    R1 = Ring(1, 1)
    f = LaurentSeries2(R1, 4, {(0, 0): {0: 1}, (1, 1): {R1.key((1,), (1,)): 1}})
    L = series_log(f)
    assert L.coeff(1, 1) == {R1.key((1,), (1,)): 1}
    assert L.coeff(2, 2) == {R1.key((2,), (2,)): Fraction(-1, 2)}


small_terms = st.dictionaries(
    st.tuples(st.integers(0, 2), st.integers(0, 2)).filter(lambda e: e != (0, 0)),
    st.integers(-3, 3).filter(bool), min_size=1, max_size=4)


def _homog(terms, order):
    """Series whose (a, b) coefficient is c * p11^a p21^b (diagram-homogeneous)."""
    out = {(0, 0): {0: 1}}
    for (a, b), c in terms.items():
        out[(a, b)] = {R.key((a, 0), (b, 0)): c}
    return LaurentSeries2(R, order, out)


@given(small_terms)
def test_exp_log_roundtrip(terms):
    f = _homog(terms, 5)
    assert series_exp(series_log(f)) == f


@given(small_terms, st.integers(-3, 3))
def test_homogeneity_preserved(terms, n):
    f = _homog(terms, 5)
    assert f.is_homogeneous()
    assert series_inv(f).is_homogeneous()
    assert series_pow(f, n).is_homogeneous()
    assert series_mul(f, series_inv(f)).is_one()


# -- one-variable wall functions -------------------------------------------------

@given(st.integers(-4, 4))
def test_uni_pow_and_cache(n):
    f = initial_P(R, 1)
    cache = PowerCache(f, 8)
    assert cache(n) == uni_pow(f, n, 8)
    assert uni_mul(uni_pow(f, n, 8), uni_pow(f, -n, 8), 8) == uni_one()


def test_uni_inv_requires_unit():
    with pytest.raises(ValueError):
        uni_inv({0: {0: 2}}, 3)
