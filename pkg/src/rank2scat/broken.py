# Broken lines, theta functions and rank-2 structure constants.
#
# Broken lines are searched backwards from the endpoint Q.  Walking back in
# time along a segment with exponent m means moving along +m.  A bend at a
# wall with function f(x^w) turns the exponent m into m - j w, provided the
# earlier exponent m' = m - j w satisfies n.m' > 0 for the chosen normal; the
# weight picks up [z^j] f^(n.m').

from fractions import Fraction

from .poly import LaurentSeries2, cp_mul, cp_iadd, uni_clean
from .scatter import _Powers, cross, crossing_normal, primitive, dvector, zeta


_PRIMES = (10007, 10009, 10037, 10039, 10061, 10067, 10069, 10079)


def generic_point(u, v=None, seed=0):
    """A rational point strictly inside the cone spanned by u and v (or near u).

    Coordinates use large prime denominators so that the point avoids every
    rational line through the origin of small slope.
    """
    p, q = _PRIMES[seed % len(_PRIMES)], _PRIMES[(seed + 3) % len(_PRIMES)]
    s = Fraction(p + 17 + seed, p)
    t = Fraction(q - 29 - seed, q) / 3
    if v is None:
        # nudge off the line through u
        return (u[0] * s - u[1] * Fraction(1, p * 7), u[1] * s + u[0] * Fraction(1, q * 7))
    return (u[0] * s + v[0] * t, u[1] * s + v[1] * t)


def on_wall(D, Q):
    for h in D.half_walls():
        u = h.u
        if cross(u, Q) == 0 and u[0] * Q[0] + u[1] * Q[1] >= 0:
            return True
    return False


class BrokenLine:
    """m0, the bends (in forward order) and the final monomial."""

    __slots__ = ("m0", "Q", "bends", "m", "coeff")

    def __init__(self, m0, Q, bends, m, coeff):
        self.m0 = m0
        self.Q = Q
        self.bends = bends
        self.m = m
        self.coeff = coeff

    def signature(self):
        return tuple((b["u"], b["j"]) for b in self.bends)

    def __repr__(self):
        return f"BrokenLine(m0={self.m0}, m={self.m}, bends={len(self.bends)})"


class _Walls:
    def __init__(self, D):
        self.D = D
        self.items = []
        for h in D.half_walls():
            jmax = D.trunc.jmax(h.w)
            self.items.append((h.u, h.w, crossing_normal(h.u), _Powers(h.f, jmax), jmax))


def _hits(walls, X, m):
    """Walls met by X + t m, t > 0, sorted by t."""
    out = []
    for idx, (u, w, n, pw, jmax) in enumerate(walls.items):
        den = cross(m, u)
        if den == 0:
            continue
        t = cross(u, X) / den
        if t <= 0:
            continue
        s = cross(X, m) / cross(u, m)
        if s < 0:
            continue
        if s == 0:
            raise ValueError("broken line passes through the origin; choose another endpoint")
        P = (X[0] + t * m[0], X[1] + t * m[1])
        out.append((t, idx, P))
    out.sort(key=lambda r: r[0])
    return out


def _search(walls, trunc, X, m, m0, bends, weight, out, forbid):
    if m == m0:
        out.append((list(reversed(bends)), weight))
    for _, idx, P in _hits(walls, X, m):
        u, w, n, pw, jmax = walls.items[idx]
        if forbid and idx in forbid:
            continue
        e = abs(n[0] * m[0] + n[1] * m[1])
        if e == 0:
            continue
        fe = pw(e)
        for j in sorted(fe):
            if j == 0:
                continue
            mp = (m[0] - j * w[0], m[1] - j * w[1])
            r = trunc.coords((mp[0] - m0[0], mp[1] - m0[1]))
            if r[0] < 0 or r[1] < 0:
                break
            if n[0] * mp[0] + n[1] * mp[1] == 0:
                continue
            c = cp_mul(weight, fe[j])
            if not c:
                continue
            bends.append({"u": u, "w": w, "j": j, "point": P, "m_after": m, "m_before": mp})
            _search(walls, trunc, P, mp, m0, bends, c, out, forbid)
            bends.pop()


def enumerate_broken(D, m0, Q, finals=None, forbid_positive_axes=False):
    """All broken lines for m0 ending at Q whose weight survives truncation.

    finals optionally restricts the final exponents searched.
    """
    m0 = tuple(m0)
    Q = (Fraction(Q[0]), Fraction(Q[1]))
    if on_wall(D, Q):
        raise ValueError("endpoint lies on a wall")
    if m0 == (0, 0):
        return [BrokenLine(m0, Q, [], m0, {0: 1})]
    walls = _Walls(D)
    trunc = D.trunc
    forbid = None
    if forbid_positive_axes:
        forbid = {i for i, it in enumerate(walls.items) if it[0] in (D.m1, D.m2)}
    if finals is None:
        finals = []
        span = trunc.order
        for a in range(span + 1):
            for b in range(span + 1):
                d = (a * D.m1[0] + b * D.m2[0], a * D.m1[1] + b * D.m2[1])
                if trunc.keep(d):
                    finals.append((m0[0] + d[0], m0[1] + d[1]))
    lines = []
    for mf in finals:
        found = []
        _search(walls, trunc, Q, tuple(mf), m0, [], {0: 1}, found, forbid)
        for bends, c in found:
            lines.append(BrokenLine(m0, Q, bends, tuple(mf), c))
    lines.sort(key=lambda b: (b.m, b.signature()))
    return lines


class ThetaFunction:
    __slots__ = ("m0", "Q", "order", "terms", "lines")

    def __init__(self, m0, Q, order, terms, lines):
        self.m0 = m0
        self.Q = Q
        self.order = order
        self.terms = terms
        self.lines = lines


def theta(D, m0, Q=None, keep_lines=False):
    """Sum of final monomials over broken lines for m0 ending at Q (default: first quadrant)."""
    if Q is None:
        Q = generic_point((1, 0), (0, 1))
    lines = enumerate_broken(D, m0, Q)
    terms = {}
    for b in lines:
        cp_iadd(terms.setdefault(b.m, {}), b.coeff)
    s = LaurentSeries2(D.ring, D.order, {e: c for e, c in terms.items() if c})
    return ThetaFunction(tuple(m0), Q, D.order, s, lines if keep_lines else None)


def theta_series(D, m0, Q=None):
    return theta(D, m0, Q).terms


def cluster_variable(D, n, Q=None):
    """x_n = theta_{-d_n} at a point of the first quadrant."""
    d = dvector(n, D.l1, D.l2)
    return theta_series(D, (-d[0], -d[1]), Q)


def zeta_bar(n, l1, l2, ring=None):
    """z^deg zeta_n(1/z) as {power: CoeffPoly}."""
    z = zeta(n, l1, l2, ring)
    top = max(z)
    return {top - j: c for j, c in z.items()}


def substitute(poly_z, X, order):
    """Evaluate sum c_j z^j at z = X (a LaurentSeries2); needs j >= 0."""
    ring = X.ring
    out = LaurentSeries2(ring, order)
    power = LaurentSeries2.one(ring, order)
    X = X.with_order(order)
    top = max(poly_z)
    for j in range(top + 1):
        if j in poly_z:
            out = out + power.map_coeffs(lambda c, cj=poly_z[j]: cp_mul(c, cj))
        if j < top:
            power = power * X
    return out


def structure_constant(D, p1, p2, q, z=None):
    """alpha_z(p1, p2; q): pairs of broken lines with m(g1) + m(g2) = q."""
    q = tuple(q)
    if z is None:
        if q == (0, 0):
            z = generic_point((1, 0), (0, 1))
            z = (z[0] / 1000, z[1] / 1000)
        else:
            z = generic_point(q)
    A = enumerate_broken(D, p1, z)
    B = enumerate_broken(D, p2, z)
    by_m = {}
    for b in B:
        cp_iadd(by_m.setdefault(b.m, {}), b.coeff)
    total = {}
    for a in A:
        rest = (q[0] - a.m[0], q[1] - a.m[1])
        c = by_m.get(rest)
        if c:
            cp_iadd(total, cp_mul(a.coeff, c))
    return total


def one_bending_point(d1, d2, a, b, k):
    """A generic endpoint in the region where the one-bending line exists."""
    s = d1 * b - d2 * a
    if s == 0:
        raise ValueError("d1 b - d2 a must be nonzero")
    q1 = Fraction(1)
    slopes = [Fraction(d2, d1) if d1 else None]
    if k * a - d1:
        slopes.append(Fraction(k * b - d2, k * a - d1))
    vals = [sl * q1 for sl in slopes if sl is not None]
    if s > 0:
        q2 = min(vals) - 1 - Fraction(1, _PRIMES[0])
    else:
        q2 = max(vals) + 1 + Fraction(1, _PRIMES[0])
    return (q1 + Fraction(1, _PRIMES[1]), q2)


def one_bending_broken_count(D, d1, d2, a, b, k, Q=None):
    """Weighted count of broken lines (-d1,-d2) -> (ka-d1, kb-d2) avoiding the positive axes."""
    from .scatter import one_bending_ok
    if not one_bending_ok(d1, d2, a, b, k):
        raise ValueError("one-bending inequality not satisfied")
    if Q is None:
        Q = one_bending_point(d1, d2, a, b, k)
    m0 = (-d1, -d2)
    mf = (k * a - d1, k * b - d2)
    lines = enumerate_broken(D, m0, Q, finals=[mf], forbid_positive_axes=True)
    total = {}
    for bl in lines:
        cp_iadd(total, bl.coeff)
    return total


__all__ = ["generic_point", "on_wall", "BrokenLine", "enumerate_broken", "ThetaFunction",
           "theta", "theta_series", "cluster_variable", "zeta_bar", "substitute",
           "structure_constant", "one_bending_point", "one_bending_broken_count"]
