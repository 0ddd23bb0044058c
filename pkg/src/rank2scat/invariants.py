# Euler characteristics of framed quiver moduli and relative Gromov-Witten
# invariants read off from shadowed-grading counts.
#
# The coefficient variables are specialized to elementary symmetric
# polynomials: p_{1,j} = e_j(s_1..s_l1), p_{2,j} = e_j(t_1..t_l2).  A monomial
# p_1^Q1 p_2^Q2 then expands as sum mu^Q1_P1 mu^Q2_P2 s^P1 t^P2 over ordered
# partitions P1, P2.

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb, gcd

from .poly import Ring, LaurentSeries2, series_log
from .scatter import choose_dvec, wall_fn_tight
from .dyck import enumerate_weighted


class OrderedPartition(tuple):
    """Fixed-length tuple of nonnegative integers."""

    def __new__(cls, parts):
        parts = tuple(int(p) for p in parts)
        if any(p < 0 for p in parts):
            raise ValueError("ordered partition parts must be nonnegative")
        return super().__new__(cls, parts)

    @property
    def total(self):
        return sum(self)

    @classmethod
    def parse(cls, text):
        """'3,0,0' or '3+0+0' -> (3, 0, 0)."""
        return cls(int(p) for p in str(text).replace("+", ",").split(",") if p.strip())


def _padd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _smul(f, g):
    out = {}
    for ea, ca in f.items():
        for eb, cb in g.items():
            e = _padd(ea, eb)
            out[e] = out.get(e, 0) + ca * cb
    return out


@lru_cache(maxsize=None)
def _elem(l, j):
    """e_j in l variables as {exponent tuple: 1}."""
    out = {}
    for idx in combinations(range(l), j):
        e = [0] * l
        for i in idx:
            e[i] = 1
        out[tuple(e)] = 1
    return out


@lru_cache(maxsize=None)
def _elem_pow(l, j, n):
    if n == 0:
        return {(0,) * l: 1}
    half = _elem_pow(l, j, n // 2)
    sq = _smul(half, half)
    return _smul(sq, _elem(l, j)) if n % 2 else sq


@lru_cache(maxsize=None)
def _expand_side(l, q):
    """prod_j e_j^{q_j} in l variables."""
    out = {(0,) * l: 1}
    for j, n in enumerate(q, start=1):
        if n:
            out = _smul(out, _elem_pow(l, j, n))
    return out


def expand_side(q, l):
    """{P: mu^Q_P} for a single side with exponent vector q = (q_1..q_l)."""
    return dict(_expand_side(l, tuple(q)))


def elementary_expand(q, l1, l2, ring=None):
    """{(P1, P2): mu^Q1_P1 mu^Q2_P2} for a coefficient monomial.

    q is a packed monomial key of Ring(l1, l2) or a pair (q1, q2) of exponent
    vectors.
    """
    if isinstance(q, int):
        q1, q2 = (ring or Ring(l1, l2)).unpack(q)
    else:
        q1, q2 = q
    A = _expand_side(l1, tuple(q1) + (0,) * (l1 - len(q1)))
    B = _expand_side(l2, tuple(q2) + (0,) * (l2 - len(q2)))
    return {(P1, P2): c1 * c2 for P1, c1 in A.items() for P2, c2 in B.items()}


def expand_poly(f, ring):
    """A CoeffPoly rewritten in s, t: {(P1, P2): coefficient}."""
    out = {}
    for key, c in f.items():
        for PP, mu in elementary_expand(key, ring.l1, ring.l2, ring).items():
            out[PP] = out.get(PP, 0) + c * mu
    return {k: v for k, v in out.items() if v}


def _check(a, b, k, P1, P2):
    if a < 0 or b < 0 or gcd(a, b) != 1:
        raise ValueError("(a, b) must be nonnegative and coprime")
    if k < 0:
        raise ValueError("k must be nonnegative")
    if sum(P1) != k * a or sum(P2) != k * b:
        raise ValueError(f"partition totals ({sum(P1)}, {sum(P2)}) differ from (ka, kb) = ({k * a}, {k * b})")


def lambda_poly(a, b, m, k, l1, l2, ring=None):
    """[z^k] (f_{R<=0(a,b)})^m as a CoeffPoly, from shadowed gradings."""
    ring = ring or Ring(l1, l2)
    if k == 0:
        return {0: 1}
    if m == 0:
        return {}
    if a == 0 or b == 0:
        # the initial walls: f = P_i, whose powers have no shadowed-grading form
        from .greedy import pi_poly
        side = 1 if b == 0 else 2
        return dict(pi_poly(m, k, side, ring))
    d1, d2 = choose_dvec(a, b, k, m)
    pred = "tight" if m == 1 else "shadowed"
    return enumerate_weighted(d1, d2, k * a, k * b, l1, l2, predicate=pred, ring=ring)


def _pair_sum(lam, ring, P1, P2):
    total = 0
    for key, c in lam.items():
        q1, q2 = ring.unpack(key)
        mu1 = _expand_side(ring.l1, q1).get(P1, 0)
        if mu1:
            total += c * mu1 * _expand_side(ring.l2, q2).get(P2, 0)
    return total


def euler_char(a, b, k, P1, P2, framing="back"):
    """chi of the back- (m = b) or front- (m = a) framed stable moduli space.

    The lengths of P1 and P2 fix l1 and l2.
    """
    P1, P2 = OrderedPartition(P1), OrderedPartition(P2)
    _check(a, b, k, P1, P2)
    if framing not in ("back", "front"):
        raise ValueError("framing must be 'back' or 'front'")
    ring = Ring(len(P1), len(P2))
    m = b if framing == "back" else a
    lam = lambda_poly(a, b, m, k, ring.l1, ring.l2, ring)
    return _pair_sum(lam, ring, P1, P2)


def gw_coefficient(i, k):
    """c_{i,k} = (-1)^{i-1} / i * C(k, i)."""
    return Fraction((-1) ** (i - 1) * comb(k, i), i)


def gw_invariant(a, b, k, P1, P2, l1=None, l2=None):
    """N_{a,b}[(P1, P2)] as an exact Fraction.

    l1, l2 default to the partition lengths; when given they must agree.
    """
    P1, P2 = OrderedPartition(P1), OrderedPartition(P2)
    l1 = len(P1) if l1 is None else l1
    l2 = len(P2) if l2 is None else l2
    if (len(P1), len(P2)) != (l1, l2):
        raise ValueError(f"partition lengths ({len(P1)}, {len(P2)}) differ from (l1, l2) = ({l1}, {l2})")
    _check(a, b, k, P1, P2)
    if k == 0:
        raise ValueError("k must be positive")
    ring = Ring(l1, l2)
    total = Fraction(0)
    for i in range(1, k + 1):
        s = _pair_sum(lambda_poly(a, b, i, k, l1, l2, ring), ring, P1, P2)
        if s:
            total += gw_coefficient(i, k) * s
    return total / k


def gw_table(a, b, kmax, l1, l2):
    """{(k, P1, P2): N} for every pair of ordered partitions with nonzero N up to kmax."""
    ring = Ring(l1, l2)
    out = {}
    for k in range(1, kmax + 1):
        acc = {}
        for i in range(1, k + 1):
            c = gw_coefficient(i, k)
            for PP, v in expand_poly(lambda_poly(a, b, i, k, l1, l2, ring), ring).items():
                acc[PP] = acc.get(PP, 0) + c * v
        for (P1, P2), v in acc.items():
            if v:
                out[(k, P1, P2)] = Fraction(v) / k
    return out


def log_wall_function(a, b, kmax, l1, l2):
    """{k: {(P1, P2): Fraction}} for log f_{R<=0(a,b)} through z^kmax, in s and t.

    Independent of the i-sum: takes the tight wall function and applies the
    series logarithm.
    """
    ring = Ring(l1, l2)
    f = wall_fn_tight(a, b, 1, l1, l2, kmax, ring=ring)
    order = kmax * (a + b)
    S = LaurentSeries2.from_uni(ring, order, f, (a, b))
    L = series_log(S)
    out = {}
    for (x, y), c in L.terms.items():
        k = x // a if a else y // b
        out[k] = expand_poly(c, ring)
    return out


__all__ = ["OrderedPartition", "expand_side", "elementary_expand", "expand_poly", "lambda_poly",
           "euler_char", "gw_coefficient", "gw_invariant", "gw_table", "log_wall_function"]
