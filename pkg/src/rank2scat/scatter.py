# Rank-2 scattering diagrams: consistent completion, loop products, the
# shadowed-grading wall-function formula, cluster walls, mutation and the
# change-of-lattice commutator.
#
# Directions are primitive integer vectors.  A ray with direction w = (a, b)
# has support R_{<=0} w and a wall function f(z) in z = x^w, stored as a dict
# {j: CoeffPoly}.  Lines are split into two half-walls.  Truncation is by the
# exponent: writing delta = alpha*m1 + beta*m2 in the basis of the two initial
# directions, a term survives while alpha + beta <= order (and alpha <= A,
# beta <= B when a box is given).  For symbolic coefficients alpha + beta is
# exactly the 𝔪-degree, and the rule keeps working after numeric
# specialization.

from fractions import Fraction
from math import gcd, isqrt

from .poly import (Ring, LaurentSeries2, cp_add, cp_mul, cp_iadd, cp_neg, cp_scale,
                   is_nonnegative, initial_P, cp_maxdeg, uni_one, uni_clean, uni_pow)
from .dyck import enumerate_weighted


def primitive(v):
    """(primitive vector, multiplicity) for a nonzero integer vector."""
    g = gcd(abs(v[0]), abs(v[1]))
    if g == 0:
        raise ValueError("zero vector has no direction")
    return (v[0] // g, v[1] // g), g


def cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def angle_key(u):
    """Sort key for the counterclockwise angle of u, starting just above +x."""
    x, y = u
    if y > 0:
        return (0, Fraction(-x, y))
    if y == 0 and x < 0:
        return (1, Fraction(0))
    if y < 0:
        return (2, Fraction(-x, y))
    return (3, Fraction(0))


def crossing_normal(u):
    """Primitive n with n.(ccw tangent) < 0 for the half-line R_{>=0} u."""
    return (u[1], -u[0])


def bezout(a, b):
    """(s, t) with s*a + t*b = gcd(a, b)."""
    if b == 0:
        return (1 if a >= 0 else -1), 0
    s, t = bezout(b, a % b)
    return t, s - (a // b) * t


# -- truncation --------------------------------------------------------------

class Truncation:
    """Upset ideal of exponents, measured in the basis (m1, m2)."""

    def __init__(self, m1=(1, 0), m2=(0, 1), order=6, box=None):
        self.m1 = tuple(m1)
        self.m2 = tuple(m2)
        self.det = cross(m1, m2)
        if self.det <= 0:
            raise ValueError("need det(m1, m2) > 0")
        self.order = order
        self.box = box

    def coords(self, d):
        """(alpha, beta) scaled by det."""
        m1, m2 = self.m1, self.m2
        return d[0] * m2[1] - d[1] * m2[0], m1[0] * d[1] - m1[1] * d[0]

    def degree(self, d):
        a, b = self.coords(d)
        return Fraction(a + b, self.det)

    def keep(self, d):
        a, b = self.coords(d)
        D = self.det
        if a + b > self.order * D:
            return False
        if self.box is not None:
            A, B = self.box
            if a > A * D or b > B * D:
                return False
        return True

    def jmax(self, w):
        """Largest j with j*w kept (w in the closed positive cone)."""
        a, b = self.coords(w)
        D = self.det
        bounds = []
        if a + b > 0:
            bounds.append(self.order * D // (a + b))
        if self.box is not None:
            A, B = self.box
            if a > 0:
                bounds.append(A * D // a)
            if b > 0:
                bounds.append(B * D // b)
        if not bounds:
            raise ValueError("direction outside the positive cone")
        return min(bounds)


# -- one-variable series truncated at z^jmax ---------------------------------

def _umul(f, g, jmax):
    out = {}
    for i, a in f.items():
        for j, b in g.items():
            if i + j > jmax:
                continue
            c = cp_mul(a, b)
            if c:
                cp_iadd(out.setdefault(i + j, {}), c)
    return {j: c for j, c in out.items() if c}


def _uinv(f, jmax):
    if f.get(0) != {0: 1}:
        raise ValueError("wall function must have constant term 1")
    inv = {0: {0: 1}}
    for n in range(1, jmax + 1):
        acc = {}
        for k in range(1, n + 1):
            fk = f.get(k)
            gk = inv.get(n - k)
            if fk and gk:
                cp_iadd(acc, cp_mul(fk, gk), -1)
        if acc:
            inv[n] = acc
    return inv


def _utrunc(f, jmax):
    return {j: c for j, c in f.items() if j <= jmax and c}


class _Powers:
    """f^e for integer e, truncated at z^jmax, memoized."""

    def __init__(self, f, jmax):
        self.jmax = jmax
        self.pos = [uni_one(), _utrunc(f, jmax)]
        self.neg = None

    def __call__(self, e):
        if e >= 0:
            while len(self.pos) <= e:
                self.pos.append(_umul(self.pos[-1], self.pos[1], self.jmax))
            return self.pos[e]
        if self.neg is None:
            self.neg = [uni_one(), _uinv(self.pos[1], self.jmax)]
        while len(self.neg) <= -e:
            self.neg.append(_umul(self.neg[-1], self.neg[1], self.jmax))
        return self.neg[-e]


def _upow(f, e, jmax):
    return _Powers(f, jmax)(e)


# -- series of exponent offsets ----------------------------------------------
#
# A series attached to a base monomial x^m is a dict {delta: CoeffPoly}
# standing for sum c_delta x^(m + delta).

def _apply_wall(S, base, w, normal, powers, trunc, sign=1):
    """Apply x^m -> x^m f(x^w)^(sign * normal.m) termwise."""
    out = {}
    for d, c in S.items():
        e = sign * (normal[0] * (base[0] + d[0]) + normal[1] * (base[1] + d[1]))
        if e == 0:
            cp_iadd(out.setdefault(d, {}), c)
            continue
        fe = powers(e)
        for j in sorted(fe):
            t = (d[0] + j * w[0], d[1] + j * w[1])
            if not trunc.keep(t):
                break
            cp_iadd(out.setdefault(t, {}), cp_mul(c, fe[j]) if j else c)
    return {d: c for d, c in out.items() if c}


def _ray_part(S, w, jmax):
    f = {}
    for j in range(jmax + 1):
        c = S.get((j * w[0], j * w[1]))
        if c:
            f[j] = c
    return f


# -- diagrams ----------------------------------------------------------------

class HalfWall:
    """Support R_{>=0} u with wall function f in z = x^w."""

    __slots__ = ("u", "w", "f")

    def __init__(self, u, w, f):
        self.u = tuple(u)
        self.w = tuple(w)
        self.f = f


class ScatteringDiagram2:
    """Two initial lines plus rays R_{<=0} w, one per primitive direction."""

    def __init__(self, ring, f1, f2, order, m1=(1, 0), m2=(0, 1), box=None, rays=None):
        self.ring = ring
        self.l1 = ring.l1
        self.l2 = ring.l2
        self.f1 = f1
        self.f2 = f2
        self.m1 = tuple(m1)
        self.m2 = tuple(m2)
        self.order = order
        self.box = box
        self.trunc = Truncation(m1, m2, order, box)
        self.rays = dict(rays or {})

    @property
    def P1(self):
        return self.f1

    @property
    def P2(self):
        return self.f2

    def ray(self, a, b):
        return self.rays.get((a, b), uni_one())

    def nontrivial_rays(self):
        return sorted((w for w, f in self.rays.items() if uni_clean(f) != uni_one()),
                      key=lambda w: Fraction(w[1], w[0]) if w[0] else Fraction(10 ** 9))

    def half_walls(self):
        """All half-walls, sorted counterclockwise from just above +x."""
        hw = []
        for m, f in ((self.m1, self.f1), (self.m2, self.f2)):
            hw.append(HalfWall(m, m, f))
            hw.append(HalfWall((-m[0], -m[1]), m, f))
        for w, f in self.rays.items():
            hw.append(HalfWall((-w[0], -w[1]), w, f))
        hw.sort(key=lambda h: angle_key(h.u))
        return hw

    def to_json(self):
        rays = []
        for w in self.nontrivial_rays():
            f = self.rays[w]
            rays.append({"dir": list(w),
                         "fn": [{"k": j, "coeff": self.ring.to_json(f[j])} for j in sorted(f)]})
        return {"l": [self.l1, self.l2], "order": self.order,
                "m1": list(self.m1), "m2": list(self.m2), "rays": rays}


def standard_diagram(l1, l2, order, ring=None, spec=None, box=None):
    """Initial data (P1 on Re1, P2 on Re2) with no rays yet.

    spec optionally maps (i, k) -> number to specialize the coefficients.
    """
    ring = ring or Ring(l1, l2)
    P1 = initial_P(ring, 1)
    P2 = initial_P(ring, 2)
    if spec:
        P1 = uni_clean({j: ring.specialize(c, spec) for j, c in P1.items()})
        P2 = uni_clean({j: ring.specialize(c, spec) for j, c in P2.items()})
    return ScatteringDiagram2(ring, P1, P2, order, box=box)


# -- wall crossing and loops -------------------------------------------------

def wall_cross(f, direction, mono, orientation=1, ring=None, order=None):
    """Cross the ray R_{<=0}(a, b) carrying f(x^a y^b) with the monomial c x^(u, v).

    orientation=+1 is the counterclockwise crossing; the exponent is then
    a*v - b*u, so the primitive normal n = (-b, a) has n.(crossing) < 0.
    mono is ((u, v), coeff).  Returns a LaurentSeries2 when ring/order are
    given, else the raw {exponent: CoeffPoly} dict.
    """
    (u, v), c = mono
    a, b = direction
    e = orientation * (a * v - b * u)
    if order is None:
        if e < 0:
            raise ValueError("order is required for negative exponents")
        order = e * max((cp_maxdeg(cc) for cc in f.values()), default=0)
    fe = uni_pow(f, e, order) if e else uni_one()
    terms = {}
    for j, cj in fe.items():
        t = cp_mul(c, cj)
        if t:
            terms[(u + j * a, v + j * b)] = t
    if ring is not None:
        return LaurentSeries2(ring, order, terms)
    return terms


def _loop_raw(D, base, trunc=None, walls=None):
    trunc = trunc or D.trunc
    walls = walls if walls is not None else D.half_walls()
    S = {(0, 0): {0: 1}}
    for h in walls:
        pw = _Powers(h.f, trunc.jmax(h.w))
        S = _apply_wall(S, base, h.w, crossing_normal(h.u), pw, trunc)
    return S


def loop_product(D, mono=(1, 0), coeff=None):
    """Counterclockwise loop around the origin applied to coeff * x^mono."""
    S = _loop_raw(D, tuple(mono))
    coeff = coeff if coeff is not None else {0: 1}
    terms = {}
    for d, c in S.items():
        t = cp_mul(coeff, c)
        if t:
            terms[(mono[0] + d[0], mono[1] + d[1])] = t
    return LaurentSeries2(D.ring, D.order, terms)


def is_consistent(D):
    return all(_loop_raw(D, b) == {(0, 0): {0: 1}} for b in ((1, 0), (0, 1)))


# -- consistent completion ---------------------------------------------------

def _commutator(D):
    """Images of x and y under B A B^-1 A^-1 (A: crossing -m1, B: crossing +m2)."""
    T = D.trunc
    m1, m2 = D.m1, D.m2
    A = (m1, crossing_normal((-m1[0], -m1[1])), _Powers(D.f1, T.jmax(m1)))
    B = (m2, crossing_normal(m2), _Powers(D.f2, T.jmax(m2)))
    out = []
    for base in ((1, 0), (0, 1)):
        S = {(0, 0): {0: 1}}
        for (w, n, pw), sign in ((A, -1), (B, -1), (A, 1), (B, 1)):
            S = _apply_wall(S, base, w, n, pw, T, sign)
        out.append(S)
    return out


def _peel(D, Sx, Sy):
    """Factor the ray product into rays, highest angle (nearest m2) first."""
    T = D.trunc
    rays = {}
    one = {(0, 0): {0: 1}}
    while Sx != one or Sy != one:
        best = None
        for d in list(Sx) + list(Sy):
            if d == (0, 0):
                continue
            if best is None or cross(best, d) > 0:
                best = d
        w, _ = primitive(best)
        if cross(D.m1, w) <= 0 or cross(w, D.m2) <= 0:
            raise ArithmeticError(f"defect term {best} outside the ray cone")
        jmax = T.jmax(w)
        n = (-w[1], w[0])
        gx = _ray_part(Sx, w, jmax)
        gy = _ray_part(Sy, w, jmax)
        s, t = bezout(n[0], n[1])
        f = _umul(_upow(gx, s, jmax), _upow(gy, t, jmax), jmax)
        if _upow(f, n[0], jmax) != gx or _upow(f, n[1], jmax) != gy:
            raise ArithmeticError(f"defect on direction {w} does not factor")
        rays[w] = f
        pw = _Powers(f, jmax)
        Sx = _apply_wall(Sx, (1, 0), w, n, pw, T, -1)
        Sy = _apply_wall(Sy, (0, 1), w, n, pw, T, -1)
    return rays


def _order_by_order(D):
    """Add rays degree by degree until every loop is the identity."""
    rays = {}
    for d in range(1, D.order + 1):
        E = ScatteringDiagram2(D.ring, D.f1, D.f2, d, D.m1, D.m2, D.box, rays)
        Sx = _loop_raw(E, (1, 0))
        Sy = _loop_raw(E, (0, 1))
        for delta in sorted(set(Sx) | set(Sy)):
            if delta == (0, 0):
                continue
            if E.trunc.degree(delta) != d:
                raise ArithmeticError(f"defect at {delta} below degree {d}")
            w, j = primitive(delta)
            gx, gy = Sx.get(delta, {}), Sy.get(delta, {})
            # adding c z^j on R_{<=0} w changes the defect of x by -w_y c, of y by w_x c
            c = None
            for g, nm in ((gx, w[1]), (gy, -w[0])):
                if nm:
                    cand = {}
                    for k, v in g.items():
                        q, r = divmod(v, nm) if isinstance(v, int) else (v / nm, 0)
                        if r:
                            raise ArithmeticError("defect not divisible")
                        cand[k] = q
                    if c is None:
                        c = cand
                    elif c != cand:
                        raise ArithmeticError(f"defect at {delta} does not factor")
                elif g:
                    raise ArithmeticError(f"defect at {delta} does not factor")
            if c:
                f = rays.setdefault(w, uni_one())
                cp_iadd(f.setdefault(j, {}), c)
    return {w: uni_clean(f) for w, f in rays.items() if uni_clean(f) != uni_one()}


def ks_complete(l1, l2, order, ring=None, spec=None, box=None, method="peel"):
    """Consistent completion Scat(P1, P2) truncated at the given order."""
    D = standard_diagram(l1, l2, order, ring=ring, spec=spec, box=box)
    return complete(D, method)


def complete(D, method="peel"):
    """Fill in the rays of a diagram holding only its two initial lines."""
    if method == "peel":
        Sx, Sy = _commutator(D)
        rays = _peel(D, Sx, Sy)
    elif method == "order":
        rays = _order_by_order(D)
    else:
        raise ValueError("method must be 'peel' or 'order'")
    return ScatteringDiagram2(D.ring, D.f1, D.f2, D.order, D.m1, D.m2, D.box, rays)


def lines_diagram(ring, f1, f2, m1, m2, order, box=None):
    """Initial data for two lines R m1, R m2 with f_i a series in x^{m_i}."""
    if cross(m1, m2) < 0:
        m1, m2, f1, f2 = m2, m1, f2, f1
    return ScatteringDiagram2(ring, f1, f2, order, m1, m2, box)


# -- the shadowed-grading formula ------------------------------------------

def choose_dvec(a, b, k, m):
    """Smallest (d1, d2) with |a d2 - b d1| = m satisfying the one-bending bound.

    Case d1 b - d2 a = m needs d2 >= m k b; case d2 a - d1 b = m needs
    d1 >= m k a.  Ties go to the first case.
    """
    if gcd(a, b) != 1 or a < 1 or b < 1 or k < 1 or m < 1:
        raise ValueError("need coprime a, b >= 1 and k, m >= 1")
    best = None
    # d1 b - d2 a = m
    d2 = m * k * b
    for _ in range(b + 1):
        if (m + d2 * a) % b == 0:
            best = ((m + d2 * a) // b, d2)
            break
        d2 += 1
    # d2 a - d1 b = m
    d1 = m * k * a
    for _ in range(a + 1):
        if (m + d1 * b) % a == 0:
            cand = (d1, (m + d1 * b) // a)
            if best is None or sum(cand) < sum(best):
                best = cand
            break
        d1 += 1
    if best is None:
        raise ValueError("no admissible (d1, d2) found")
    return best


def one_bending_ok(d1, d2, a, b, k):
    """The sufficient inequality for the one-bending property."""
    if d2 <= 0:
        return False
    r = Fraction(d1, d2)
    if r > Fraction(a, b):
        return Fraction(k * a * b + 1, k * b * b) >= r
    if r < Fraction(a, b):
        return Fraction(k * a * a, k * a * b + 1) <= r
    return False


def admissible_dvecs(a, b, k, m, count=3):
    """Several admissible (d1, d2): the default, shifts by (a, b), and the mirror case."""
    out = []
    d = choose_dvec(a, b, k, m)
    for i in range(count):
        out.append((d[0] + i * a, d[1] + i * b))
    # the other sign of a d2 - b d1
    s = d[0] * b - d[1] * a
    for d1 in range(1, 4 * m * k * (a + b) + 4):
        if s > 0:
            if (m + d1 * b) % a == 0 and d1 >= m * k * a:
                out.append((d1, (m + d1 * b) // a))
                break
        else:
            if (d1 * b - m) % a == 0 and (d1 * b - m) // a >= m * k * b:
                out.append((d1, (d1 * b - m) // a))
                break
    return [v for v in out if one_bending_ok(v[0], v[1], a, b, k)
            and v[0] >= k * a and v[1] >= k * b and abs(a * v[1] - b * v[0]) == m]


def wall_fn_tight(a, b, m, l1, l2, kmax, ring=None, allowed1=None, allowed2=None,
                  dvec=None):
    """(f_{R<=0(a,b)})^m through z^kmax from shadowed gradings.

    dvec optionally maps k -> (d1, d2) to override choose_dvec.
    """
    ring = ring or Ring(l1, l2)
    pred = "tight" if m == 1 else "shadowed"
    f = uni_one()
    for k in range(1, kmax + 1):
        d1, d2 = dvec(k) if dvec else choose_dvec(a, b, k, m)
        c = enumerate_weighted(d1, d2, k * a, k * b, l1, l2, predicate=pred, ring=ring,
                               allowed1=allowed1, allowed2=allowed2)
        if c:
            f[k] = c
    return f


def uni_pow_exact(f, m, kmax):
    return _upow(f, m, kmax)


# -- cluster complex -------------------------------------------------------

def dvector(n, l1, l2):
    """d_n from d_0 = e2, d_1 = -e1, d_2 = -e2, d_3 = e1 and the recursion."""
    seeds = {0: (0, 1), 1: (-1, 0), 2: (0, -1), 3: (1, 0)}
    if n in seeds:
        return seeds[n]
    if n > 3:
        prev, cur = seeds[2], seeds[3]
        for i in range(3, n):
            l = l1 if i % 2 else l2
            prev, cur = cur, (l * cur[0] - prev[0], l * cur[1] - prev[1])
        return cur
    prev, cur = seeds[1], seeds[0]
    for i in range(0, n, -1):
        l = l1 if i % 2 else l2
        prev, cur = cur, (l * cur[0] - prev[0], l * cur[1] - prev[1])
    return cur


def _W_power(ring, u, v, j):
    """W((u, v))^j = p_{1,l1}^{j u / l1} p_{2,l2}^{j v / l2}, integral exponents required."""
    l1, l2 = ring.l1, ring.l2
    if (j * u) % l1 or (j * v) % l2:
        raise ArithmeticError("W exponent not integral")
    q1 = [0] * l1
    q2 = [0] * l2
    q1[l1 - 1] = j * u // l1
    q2[l2 - 1] = j * v // l2
    return {ring.key(q1, q2): 1}


def _pbar_coeff(ring, side, j):
    """[z^j] of P̄_side(z) = z^l P(1/z) / p_{side,l} as a Laurent monomial."""
    l = ring.l1 if side == 1 else ring.l2
    q = [0] * l
    if j < l:
        q[l - 1 - j] += 1
    q[l - 1] -= 1
    return {ring.key(q, ()) if side == 1 else ring.key((), q): 1}


def zeta(n, l1, l2, ring=None):
    """Wall function zeta_n as a polynomial in z = x^{d_n}."""
    ring = ring or Ring(l1, l2)
    d = dvector(n, l1, l2)
    r = n % 4
    if r == 0:
        side, bar, shift = 2, False, (d[0], d[1] - 1)
    elif r == 1:
        side, bar, shift = 1, True, (d[0] + 1, d[1])
    elif r == 2:
        side, bar, shift = 2, True, (d[0], d[1] + 1)
    else:
        side, bar, shift = 1, False, (d[0] - 1, d[1])
    l = l1 if side == 1 else l2
    f = {0: {0: 1}}
    for j in range(1, l + 1):
        base = _pbar_coeff(ring, side, j) if bar else ring.var(side, j)
        f[j] = cp_mul(base, _W_power(ring, shift[0], shift[1], j))
    return uni_clean(f)


def cluster_walls(l1, l2, nrange, ring=None):
    """[(n, d_n, zeta_n)] for n in nrange with d_n in Z_{>0}^2.

    In finite type (l1 l2 < 4) the positive d-vectors repeat with period;
    directions already listed are skipped.
    """
    ring = ring or Ring(l1, l2)
    out = []
    seen = set()
    for n in nrange:
        if n in (0, 1, 2, 3):
            continue
        d = dvector(n, l1, l2)
        if d[0] <= 0 or d[1] <= 0 or d in seen:
            continue
        seen.add(d)
        out.append((n, d, zeta(n, l1, l2, ring)))
    return out


def badlands(l1, l2):
    """Boundary generators of the closed Badlands cone.

    Coordinates are returned as (rational part, coefficient of sqrt(disc)).
    """
    disc = l1 * l1 * l2 * l2 - 4 * l1 * l2
    if disc < 0:
        return {"disc": disc, "empty": True, "degenerate": False, "generators": []}
    g1 = ((2 * l1, 0), (l1 * l2, 1))
    g2 = ((l1 * l2, 1), (2 * l2, 0))
    r = isqrt(disc)
    return {"disc": disc, "empty": False, "degenerate": disc == 0,
            "rational": r * r == disc, "generators": [g1, g2]}


def is_inside(a, b, l1, l2):
    """Whether R_{<=0}(a, b) lies in the closed Badlands cone (exact)."""
    if l1 * l2 < 4:
        return False
    return l2 * a * a - l1 * l2 * a * b + l1 * b * b <= 0


# -- mutation --------------------------------------------------------------

def _mutate_coeff(ring, c, jb):
    """p -> p p_{1,l1}^{-jb} rewritten in p'_{1,k} = p_{1,l1-k} / p_{1,l1}."""
    l1 = ring.l1
    out = {}
    for key, v in c.items():
        q1, q2 = ring.unpack(key)
        count = sum(q1)
        if count > jb:
            raise ArithmeticError("mutated exponent of p_{1,l1} would be positive")
        n1 = [0] * l1
        for i in range(1, l1):
            n1[l1 - i - 1] += q1[i - 1]
        n1[l1 - 1] += jb - count
        nk = ring.key(n1, q2)
        out[nk] = out.get(nk, 0) + v
    return {k: v for k, v in out.items() if v}


def mutate(D):
    """Mutated diagram, reflected back to standard position.

    A ray R_{<=0}(a, b) goes to R_{<=0}(l1 b - a, b) and z^j coefficients
    pick up p_{1,l1}^{-jb}.  The image of the ray (l1, 1) is the lower half of
    the line R e2 and must equal P2; the lower half of R e2 itself becomes the
    ray (l1, 1).  The output is over the ring of p'_{1,k} = p_{1,l1-k}/p_{1,l1}.
    """
    if D.m1 != (1, 0) or D.m2 != (0, 1):
        raise ValueError("mutation needs the standard initial lines")
    ring = D.ring
    l1 = D.l1
    rays = {}
    found_l1 = False
    for (a, b), f in list(D.rays.items()) + [((0, 1), D.f2)]:
        if uni_clean(f) == uni_one():
            continue
        na = l1 * b - a
        if na < 0:
            raise ArithmeticError(f"ray {(a, b)} lies beyond (l1, 1)")
        g = {j: _mutate_coeff(ring, c, j * b) for j, c in f.items()}
        g = uni_clean(g)
        if na == 0:
            found_l1 = True
            if g != uni_clean(_utrunc(D.f2, D.trunc.jmax((l1, 1)))):
                raise ArithmeticError("image of the ray (l1, 1) is not P2")
            continue
        rays[(na, b)] = g
    if not found_l1:
        raise ArithmeticError("ray (l1, 1) missing before mutation")
    P1m = {0: {0: 1}}
    for k in range(1, l1 + 1):
        P1m[k] = ring.var(1, k)
    # a new-degree-N term comes from an old term of degree at most (l1 + 1) N
    M = ScatteringDiagram2(ring, uni_clean(P1m), D.f2, D.order // (l1 + 1), rays={})
    for w, g in rays.items():
        g = _utrunc(g, M.trunc.jmax(w))
        if uni_clean(g) != uni_one():
            M.rays[w] = g
    return M


# -- change of lattice -----------------------------------------------------

class LatticeContext:
    def __init__(self, m1, m2):
        self.m1 = tuple(m1)
        self.m2 = tuple(m2)
        for m in (self.m1, self.m2):
            if primitive(m)[1] != 1:
                raise ValueError("m1, m2 must be primitive")
        self.ell = abs(cross(self.m1, self.m2))
        if self.ell == 0:
            raise ValueError("m1, m2 must be linearly independent")

    def ind(self, m):
        """|(m^perp ∩ N°) / (m^perp ∩ N)|."""
        w, _ = primitive(m)
        n = (-w[1], w[0])
        return gcd(abs(n[0] * self.m1[0] + n[1] * self.m1[1]),
                   abs(n[0] * self.m2[0] + n[1] * self.m2[1]))


def scaled_lambda(p, q, d, ell, l1, l2, ring=None):
    """<dp, dq>_ell: lambda(ell d p, ell d q) with p_{i,k} = 0 unless ell | k,
    then p_{i, ell k} renamed p_{i,k}."""
    ring = ring or Ring(l1, l2)
    big = Ring(ell * l1, ell * l2)
    allowed1 = [ell * k for k in range(1, l1 + 1)]
    allowed2 = [ell * k for k in range(1, l2 + 1)]
    k = ell * d
    d1, d2 = choose_dvec(p, q, k, 1)
    lam = enumerate_weighted(d1, d2, k * p, k * q, big.l1, big.l2, predicate="tight",
                             ring=big, allowed1=allowed1, allowed2=allowed2)
    out = {}
    for key, c in lam.items():
        q1, q2 = big.unpack(key)
        if any(e for i, e in enumerate(q1) if (i + 1) % ell) or \
           any(e for i, e in enumerate(q2) if (i + 1) % ell):
            continue
        nk = ring.key(q1[ell - 1::ell], q2[ell - 1::ell])
        out[nk] = out.get(nk, 0) + c
    return {kk: c for kk, c in out.items() if c}


def nonstandard_commutator(ctx, l1, l2, order, ring=None):
    """Rays of Scat(f1, f2) for f_i = 1 + sum p_{i,k} x^{k m_i}.

    Returns {w: f} with w the primitive direction in Z^2 and f a series in
    x^w; the ray through m° = p m1 + q m2 carries
    (1 + sum_d <dp, dq>_ell x^{d m°})^(ell / ind(m°)).
    """
    ring = ring or Ring(l1, l2)
    ell = ctx.ell
    out = {}
    for s in range(2, order + 1):
        for p in range(1, s):
            q = s - p
            if gcd(p, q) != 1:
                continue
            mo = (p * ctx.m1[0] + q * ctx.m2[0], p * ctx.m1[1] + q * ctx.m2[1])
            w, g = primitive(mo)
            ind = ctx.ind(mo)
            if ell % ind:
                raise ArithmeticError("index does not divide ell")
            dmax = order // s
            base = {0: {0: 1}}
            for d in range(1, dmax + 1):
                c = scaled_lambda(p, q, d, ell, l1, l2, ring)
                if c:
                    base[d] = c
            f = _upow(base, ell // ind, dmax)
            f = uni_clean(f)
            if f != uni_one():
                out[w] = {g * j: c for j, c in f.items()}
    return out


__all__ = [
    "primitive", "angle_key", "crossing_normal", "Truncation", "ScatteringDiagram2",
    "standard_diagram", "wall_cross", "loop_product", "is_consistent", "ks_complete",
    "complete", "lines_diagram", "choose_dvec", "one_bending_ok", "admissible_dvecs",
    "wall_fn_tight", "dvector", "zeta", "cluster_walls", "badlands", "is_inside",
    "mutate", "LatticeContext", "scaled_lambda", "nonstandard_commutator",
]
