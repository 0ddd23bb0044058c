from math import gcd

import pytest
from hypothesis import given, strategies as st

from rank2scat.poly import (Ring, LaurentSeries2, uni_clean, uni_one, uni_pow, initial_P,
                            is_nonnegative)
from rank2scat.scatter import (primitive, angle_key, standard_diagram, wall_cross, loop_product,
                               is_consistent, ks_complete, complete, lines_diagram, choose_dvec,
                               one_bending_ok, admissible_dvecs, wall_fn_tight, dvector, zeta,
                               cluster_walls, badlands, is_inside, mutate, LatticeContext,
                               scaled_lambda, nonstandard_commutator)
from rank2scat import golden
from conftest import P

R1 = Ring(1, 1)


def nontrivial(rays):
    return {w: uni_clean(f) for w, f in rays.items() if uni_clean(f) != uni_one()}


# -- wall crossing ------------------------------------------------------------

def test_wall_cross_tangent_is_identity():
    f = {0: {0: 1}, 1: P(R1, "p11*p21")}
    assert wall_cross(f, (1, 1), ((2, 2), {0: 1})) == {(2, 2): {0: 1}}


def test_wall_cross_line():
    P2 = initial_P(R1, 2)
    # x across the y-axis: exponent a v - b u = -1 for direction (0, 1)
    up = wall_cross(P2, (0, 1), ((1, 0), {0: 1}), orientation=-1, ring=R1, order=3)
    assert up.terms == {(1, 0): {0: 1}, (1, 1): P(R1, "p21")}
    down = wall_cross(P2, (0, 1), ((1, 0), {0: 1}), orientation=1, ring=R1, order=3)
    assert down.terms == {(1, 0): {0: 1}, (1, 1): P(R1, "-p21"), (1, 2): P(R1, "p21**2"),
                          (1, 3): P(R1, "-p21**3")}


def test_wall_cross_inverse_sign():
    f = {0: {0: 1}, 1: {0: 5}}
    a = wall_cross(f, (1, 1), ((-1, 0), {0: 1}), orientation=1, ring=R1, order=4)
    b = wall_cross(f, (1, 1), ((-1, 0), {0: 1}), orientation=-1, ring=R1, order=4)
    assert a.terms == {(-1, 0): {0: 1}, (0, 1): {0: 5}}
    assert b.terms[(0, 1)] == {0: -5}
    with pytest.raises(ValueError):
        wall_cross(f, (1, 1), ((-1, 0), {0: 1}), orientation=-1)


def test_loop_product_of_initial_lines():
    D = standard_diagram(1, 1, 2)
    L = loop_product(D, (1, 0))
    assert L.terms[(1, 0)] == {0: 1}
    defect = {e: c for e, c in L.terms.items() if e != (1, 0)}
    assert defect == {(2, 1): P(R1, "p11*p21")} or defect == {(2, 1): P(R1, "-p11*p21")}
    assert not is_consistent(D)


def test_loop_product_trivial():
    D = ks_complete(2, 1, 6)
    assert loop_product(D, (3, -2), coeff={0: 4}).terms == {(3, -2): {0: 4}}
    E = standard_diagram(0, 0, 4)
    assert loop_product(E, (1, 1)).terms == {(1, 1): {0: 1}}


def test_angle_order():
    # counterclockwise, starting just above the positive x-axis, which comes last
    dirs = [(1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1), (1, 0)]
    assert sorted(reversed(dirs), key=angle_key) == dirs
    assert primitive((4, 6)) == ((2, 3), 2)


# -- completion -----------------------------------------------------------------

def test_g2_diagram():
    for order in (9, 10, 12):
        D = ks_complete(3, 1, order)
        assert golden.compare(D, golden.load("g2")) == []
        assert D.nontrivial_rays() == [(3, 1), (2, 1), (3, 2), (1, 1)]


def test_g2_at_orders_7_and_8():
    # the weighted-degree cut keeps everything but p13^2 p21^3 x^6 y^3 (degree 9)
    for order in (7, 8):
        D = ks_complete(3, 1, order)
        assert golden.compare(D, golden.load("g2")) == []
        assert 3 not in D.ray(2, 1)
        B = ks_complete(3, 1, 2 * order, box=(order, order))
        assert golden.compare(B, golden.load("g2")) == []
        assert B.ray(2, 1)[3] == P(Ring(3, 1), "p13**2*p21**3")


def test_pentagon():
    D = ks_complete(1, 1, 8)
    assert nontrivial(D.rays) == {(1, 1): {0: {0: 1}, 1: P(R1, "p11*p21")}}


def test_affine_22_ray():
    D = ks_complete(2, 2, 16)
    assert golden.compare(D, golden.load("affine22")) == []


@pytest.mark.parametrize("l1, l2, order", [(1, 1, 8), (2, 1, 10), (2, 2, 10), (3, 2, 8), (3, 3, 8)])
def test_peel_and_order_agree(l1, l2, order):
    a = ks_complete(l1, l2, order, method="peel")
    b = ks_complete(l1, l2, order, method="order")
    assert a.rays == b.rays
    assert is_consistent(a)


@pytest.mark.parametrize("l1, l2", [(2, 2), (3, 3), (4, 1)])
def test_positivity_and_homogeneity(l1, l2):
    D = ks_complete(l1, l2, 10)
    for (a, b), f in D.rays.items():
        assert f[0] == {0: 1}
        for j, c in f.items():
            assert is_nonnegative(c)
            assert all(D.ring.bidegree(k) == (j * a, j * b) for k in c)


def test_specialized_completion_is_functorial():
    R = Ring(2, 2)
    spec = {(1, 1): 2, (2, 2): 0}
    D = ks_complete(2, 2, 8, spec=spec)
    S = ks_complete(2, 2, 8)
    for w, f in S.rays.items():
        g = uni_clean({j: R.specialize(c, spec) for j, c in f.items()})
        assert uni_clean(D.ray(*w)) == g


def test_binomial_specializations():
    D = ks_complete(2, 2, 16, spec=Ring(2, 2).binomial_spec())
    assert D.ray(1, 1) == {2 * k: {0: k + 1} for k in range(5)}
    D = ks_complete(4, 1, 27, spec=Ring(4, 1).binomial_spec())
    f = D.ray(2, 1)
    assert {j: c for j, c in f.items() if j <= 8} == {2 * k: {0: 2 * k + 1} for k in range(5)}


def test_lines_diagram_swaps_orientation():
    R = Ring(1, 1)
    D = lines_diagram(R, initial_P(R, 1), initial_P(R, 2), (0, 1), (1, 0), 6)
    assert D.m1 == (1, 0) and D.m2 == (0, 1)
    assert D.f1 == initial_P(R, 2)


# -- tight-grading formula ---------------------------------------------------------

def test_choose_dvec_examples():
    assert choose_dvec(1, 1, 1, 1) == (2, 1)
    assert choose_dvec(1, 1, 3, 3) == (12, 9)
    for a, b, k in [(2, 1, 1), (3, 2, 2), (1, 3, 1)]:
        d1, d2 = k * a * b + 1, k * b * b
        assert one_bending_ok(d1, d2, a, b, k)
    with pytest.raises(ValueError):
        choose_dvec(2, 4, 1, 1)


@given(st.integers(1, 5), st.integers(1, 5), st.integers(1, 3), st.integers(1, 3))
def test_choose_dvec_contract(a, b, k, m):
    if gcd(a, b) != 1:
        return
    d1, d2 = choose_dvec(a, b, k, m)
    assert abs(a * d2 - b * d1) == m
    assert d1 >= k * a and d2 >= k * b
    assert one_bending_ok(d1, d2, a, b, k)


def test_vanishing_coefficient_wall():
    R = Ring(3, 2)
    f = wall_fn_tight(1, 1, 1, 3, 2, 3, ring=R, allowed1=[3])
    assert f[3] == P(R, "6*p13*p21*p22 + p13*p21**3")


@pytest.mark.parametrize("l1, l2", [(1, 1), (2, 1), (2, 2), (3, 1)])
def test_tight_matches_ks(l1, l2):
    D = ks_complete(l1, l2, 8)
    for a in range(1, 8):
        for b in range(1, 8):
            if gcd(a, b) != 1 or a + b > 8:
                continue
            kmax = 8 // (a + b)
            assert uni_clean(wall_fn_tight(a, b, 1, l1, l2, kmax, ring=D.ring)) == uni_clean(D.ray(a, b))


@pytest.mark.parametrize("a, b, l1, l2", [(1, 1, 2, 2), (2, 1, 2, 1), (1, 1, 3, 3), (1, 2, 2, 3)])
def test_power_consistency(a, b, l1, l2):
    R = Ring(l1, l2)
    kmax = 3
    f1 = wall_fn_tight(a, b, 1, l1, l2, kmax, ring=R)
    order = kmax * (a + b)
    for m in (2, 3):
        fm = wall_fn_tight(a, b, m, l1, l2, kmax, ring=R)
        want = {j: c for j, c in uni_pow(f1, m, order).items() if j <= kmax}
        assert uni_clean(fm) == uni_clean(want)


@pytest.mark.parametrize("a, b, l1, l2", [(1, 1, 2, 2), (2, 1, 3, 1), (1, 1, 3, 3), (3, 2, 2, 2)])
def test_dvec_independence(a, b, l1, l2):
    R = Ring(l1, l2)
    for k in (1, 2):
        for m in (1, 2):
            choices = admissible_dvecs(a, b, k, m)
            assert len(choices) >= 2
            vals = {str(sorted(wall_fn_tight(a, b, m, l1, l2, k, ring=R, dvec=lambda kk, d=d: d)
                               .get(k, {}).items())) for d in choices}
            assert len(vals) == 1


# -- cluster complex ----------------------------------------------------------------

def test_dvector_recursion():
    for l1, l2 in [(2, 3), (3, 3), (4, 1)]:
        # d_0..d_3 are seeds; the recursion links everything else
        for n in [n for n in range(-6, 10) if n not in (1, 2)]:
            l = l1 if n % 2 else l2
            d_prev, d, d_next = dvector(n - 1, l1, l2), dvector(n, l1, l2), dvector(n + 1, l1, l2)
            assert (d_next[0] + d_prev[0], d_next[1] + d_prev[1]) == (l * d[0], l * d[1])
        for n in range(4, 9):
            d = dvector(n, l1, l2)
            assert d[0] > 0 and d[1] > 0
            e = dvector(n + 1, l1, l2)
            assert abs(d[0] * e[1] - d[1] * e[0]) == 1


def test_first_cluster_wall_formula():
    for l1, l2 in [(3, 2), (2, 3), (3, 3)]:
        R = Ring(l1, l2)
        walls = {d: z for _, d, z in cluster_walls(l1, l2, range(4, 8), R)}
        f = walls[(l1, 1)]
        want = {0: {0: 1}}
        for k in range(1, l2 + 1):
            q1 = [0] * l1
            q1[-1] = k
            q2 = [0] * l2
            q2[k - 1] = 1
            want[k] = {R.key(q1, q2): 1}
        assert f == want


def test_cluster_walls_g2():
    R = Ring(3, 1)
    walls = {d: z for _, d, z in cluster_walls(3, 1, range(-8, 12), R)}
    D = ks_complete(3, 1, 10)
    assert walls == nontrivial(D.rays)


@pytest.mark.parametrize("l1, l2", [(2, 2), (3, 3), (2, 3)])
def test_cluster_walls_agree_with_ks(l1, l2):
    R = Ring(l1, l2)
    D = ks_complete(l1, l2, 12)
    for n, d, z in cluster_walls(l1, l2, range(-6, 10), R):
        jmax = D.trunc.jmax(d)
        if jmax < 1 or is_inside(d[0], d[1], l1, l2):
            continue
        want = {j: c for j, c in z.items() if j <= jmax}
        assert uni_clean(D.ray(*d)) == uni_clean(want), (n, d)


def test_badlands():
    assert badlands(2, 2)["degenerate"] and is_inside(1, 1, 2, 2) and not is_inside(2, 1, 2, 2)
    assert badlands(4, 1)["degenerate"] and is_inside(2, 1, 4, 1) and not is_inside(1, 1, 4, 1)
    assert badlands(1, 1)["empty"] and not is_inside(1, 1, 1, 1)
    b = badlands(3, 3)
    assert not b["degenerate"] and not b["rational"] and b["generators"][0] == ((6, 0), (9, 1))
    assert is_inside(1, 1, 3, 3) and not is_inside(3, 1, 3, 3)


# -- mutation --------------------------------------------------------------------------

@pytest.mark.parametrize("l1, l2", [(1, 1), (3, 1), (2, 2), (2, 3), (3, 3)])
def test_mutation_matches_completion(l1, l2):
    D = ks_complete(l1, l2, 6 * (l1 + 1))
    M = mutate(D)
    K = ks_complete(l1, l2, M.order)
    assert nontrivial(M.rays) == nontrivial(K.rays)
    assert is_consistent(M)


def test_mutation_is_involutive():
    D = ks_complete(1, 1, 8)
    M2 = mutate(mutate(D))
    assert nontrivial(M2.rays) == nontrivial(ks_complete(1, 1, M2.order).rays)


# -- change of lattice --------------------------------------------------------------------

def test_scaled_lambda_example():
    assert scaled_lambda(1, 1, 1, 2, 1, 1, R1) == P(R1, "2*p11*p21")


def test_identity_lattice_is_standard():
    R = Ring(2, 2)
    ctx = LatticeContext((1, 0), (0, 1))
    assert ctx.ell == 1
    assert nonstandard_commutator(ctx, 2, 2, 6, R) == nontrivial(ks_complete(2, 2, 6, ring=R).rays)


@pytest.mark.parametrize("m2", [(1, 2), (1, 3), (-1, 2)])
@pytest.mark.parametrize("l1, l2", [(1, 1), (2, 1), (2, 2)])
def test_nonstandard_matches_generic_lines(m2, l1, l2):
    R = Ring(l1, l2)
    ctx = LatticeContext((1, 0), m2)
    ns = nonstandard_commutator(ctx, l1, l2, 6, R)
    D = complete(lines_diagram(R, initial_P(R, 1), initial_P(R, 2), (1, 0), m2, 6))
    assert ns == nontrivial(D.rays)


def test_index():
    ctx = LatticeContext((1, 0), (1, 2))
    assert ctx.ell == 2
    assert ctx.ind((2, 2)) == 1
    assert ctx.ind((3, 4)) == 2
    with pytest.raises(ValueError):
        LatticeContext((1, 0), (2, 0))
