from fractions import Fraction
from itertools import product

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from rank2scat.poly import Ring
from rank2scat.invariants import (OrderedPartition, expand_side, elementary_expand, expand_poly,
                                  lambda_poly, euler_char, gw_coefficient, gw_invariant, gw_table,
                                  log_wall_function)
from conftest import P


def test_ordered_partition():
    assert OrderedPartition.parse("3,0,0") == (3, 0, 0)
    assert OrderedPartition.parse("1+2") == (1, 2)
    assert OrderedPartition((2, 1)).total == 3
    with pytest.raises(ValueError):
        OrderedPartition((1, -1))


def test_elementary_expand_examples():
    assert expand_side((1,), 2) == {(1, 0): 1, (0, 1): 1}
    assert expand_side((0, 1), 2) == {(1, 1): 1}
    e = expand_side((3, 0, 0), 3)
    assert e[(3, 0, 0)] == 1 and e[(1, 1, 1)] == 6 and e[(2, 1, 0)] == 3
    R = Ring(2, 1)
    key = R.key((1, 1), (2,))
    assert elementary_expand(key, 2, 1, R) == elementary_expand(((1, 1), (2,)), 2, 1)


@given(st.lists(st.integers(0, 2), min_size=3, max_size=3))
def test_elementary_expand_matches_sympy(q):
    s = sp.symbols("s1:4")
    e = [sum(sp.prod(c) for c in __import__("itertools").combinations(s, j)) for j in (1, 2, 3)]
    poly = sp.Poly(sp.expand(sp.prod(ej ** qj for ej, qj in zip(e, q))), *s)
    want = {tuple(m): int(c) for m, c in poly.terms()}
    assert expand_side(tuple(q), 3) == want


def _closed_form_chi(l1, l2, kmax):
    """chi for (a, b) = (1, 1) read off the product formula, in s and t."""
    s = sp.symbols(f"s1:{l1 + 1}")
    t = sp.symbols(f"t1:{l2 + 1}")
    z = sp.Symbol("z")
    num = sp.prod(1 + si * tj * z for si in s for tj in t)
    den = (1 - sp.prod(s) * sp.prod(t) * z ** l1) ** (l1 * l2) if l1 == l2 else None
    f = num / den
    ser = sp.series(f, z, 0, kmax + 1).removeO()
    out = {}
    for k in range(1, kmax + 1):
        ck = sp.expand(ser.coeff(z, k))
        if ck == 0:
            continue
        for m, c in sp.Poly(ck, *s, *t).terms():
            out[(k, tuple(m[:l1]), tuple(m[l1:]))] = int(c)
    return out


def test_euler_char_closed_form_22():
    want = _closed_form_chi(2, 2, 3)
    for (k, P1, P2), c in want.items():
        assert euler_char(1, 1, k, P1, P2) == c
    # and nothing outside the closed form
    for k in (1, 2, 3):
        for P1 in product(range(k + 1), repeat=2):
            for P2 in product(range(k + 1), repeat=2):
                if sum(P1) == k and sum(P2) == k:
                    assert euler_char(1, 1, k, P1, P2) == want.get((k, P1, P2), 0)


def test_euler_char_basic():
    assert euler_char(1, 1, 1, (1, 0), (0, 1)) == 1
    assert euler_char(1, 1, 2, (1, 1), (1, 1)) == 6
    assert euler_char(1, 1, 2, (1, 1), (1, 1), framing="front") == 6
    assert euler_char(1, 1, 0, (0, 0), (0, 0)) == 1
    with pytest.raises(ValueError):
        euler_char(1, 1, 1, (1, 0), (1, 0), framing="sideways")


def test_euler_char_partition_mismatch():
    with pytest.raises(ValueError):
        euler_char(1, 1, 2, (1, 0), (1, 1))
    with pytest.raises(ValueError):
        euler_char(2, 2, 1, (2,), (2,))


@pytest.mark.parametrize("a, b, k, l1, l2", [(1, 1, 2, 2, 2), (2, 1, 1, 2, 1), (1, 2, 2, 1, 2)])
def test_euler_char_nonnegative_integers(a, b, k, l1, l2):
    for P1 in product(range(k * a + 1), repeat=l1):
        if sum(P1) != k * a:
            continue
        for P2 in product(range(k * b + 1), repeat=l2):
            if sum(P2) != k * b:
                continue
            for fr in ("back", "front"):
                v = euler_char(a, b, k, P1, P2, framing=fr)
                assert isinstance(v, int) and v >= 0


def test_symmetric_framing_agree():
    # a = b: both framings use the same power
    for P1, P2 in [((2, 0), (1, 1)), ((1, 1), (2, 0))]:
        assert euler_char(1, 1, 2, P1, P2, "back") == euler_char(1, 1, 2, P1, P2, "front")


def test_gw_coefficient():
    assert gw_coefficient(1, 3) == 3
    assert gw_coefficient(2, 3) == Fraction(-3, 2)
    assert gw_coefficient(3, 3) == Fraction(1, 3)


def test_gw_multiple_cover():
    assert gw_invariant(1, 1, 3, (3, 0, 0), (3, 0)) == Fraction(1, 9)
    assert gw_invariant(1, 1, 3, (3, 0), (3, 0, 0)) == Fraction(1, 9)


def test_lambda_multiple_cover_terms():
    # only the cube of the first-order term reaches p11^3 p21^3
    R = Ring(3, 3)
    key = R.key((3, 0, 0), (3, 0, 0))
    assert [lambda_poly(1, 1, m, 3, 3, 3, R).get(key, 0) for m in (1, 2, 3)] == [0, 0, 1]


def test_gw_k1_is_chi():
    for P1, P2 in [((1, 0), (0, 1)), ((0, 1), (1, 0))]:
        assert gw_invariant(1, 1, 1, P1, P2) == euler_char(1, 1, 1, P1, P2)


def test_gw_length_mismatch():
    with pytest.raises(ValueError):
        gw_invariant(1, 1, 1, (1, 0), (1,), l1=2, l2=2)
    with pytest.raises(ValueError):
        gw_invariant(1, 1, 0, (0,), (0,))


def test_gw_equals_log_coefficients():
    for (a, b), (l1, l2), kmax in [((1, 1), (2, 2), 3), ((2, 1), (2, 1), 2), ((1, 1), (3, 1), 2)]:
        table = gw_table(a, b, kmax, l1, l2)
        logs = log_wall_function(a, b, kmax, l1, l2)
        got = {}
        for k, parts in logs.items():
            for PP, v in parts.items():
                if v:
                    got[(k,) + PP] = Fraction(v) / k
        assert got == table


def test_expand_poly_roundtrip_count():
    R = Ring(2, 1)
    f = P(R, "p11 + 2*p12*p21")
    e = expand_poly(f, R)
    assert e == {((1, 0), (0,)): 1, ((0, 1), (0,)): 1, ((1, 1), (1,)): 2}
