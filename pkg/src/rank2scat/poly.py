# Sparse arithmetic for coefficient polynomials and truncated Laurent series.
#
# A coefficient polynomial is a plain dict {key: coeff}.  Keys pack a monomial
# in the variables p_{1,1..l1}, p_{2,1..l2} into one Python int, so monomial
# multiplication is integer addition.  Fields are BITS wide and stored in
# balanced form, which lets exponents go negative (needed after mutation).
#
# Field layout, low to high:
#   [total degree | degree in p_1 | degree in p_2 | e_{1,1} .. e_{1,l1} | e_{2,1} .. e_{2,l2}]
# where deg p_{i,k} = k.

from fractions import Fraction
from math import comb
import json

BITS = 16
_MASK = (1 << BITS) - 1
_HALF = 1 << (BITS - 1)


def deg(key):
    """Total weighted degree of a packed monomial."""
    return ((key + _HALF) & _MASK) - _HALF


def _fields(key, n):
    out = []
    for _ in range(n):
        r = key & _MASK
        if r >= _HALF:
            r -= 1 << BITS
        out.append(r)
        key = (key - r) >> BITS
    return out


class Ring:
    """Monomial packing for a fixed pair (l1, l2)."""

    def __init__(self, l1, l2):
        if l1 < 0 or l2 < 0:
            raise ValueError("l1, l2 must be nonnegative")
        self.l1 = l1
        self.l2 = l2
        self.nfields = 3 + l1 + l2

    def __eq__(self, other):
        return isinstance(other, Ring) and (self.l1, self.l2) == (other.l1, other.l2)

    def __hash__(self):
        return hash((self.l1, self.l2))

    def __repr__(self):
        return f"Ring({self.l1}, {self.l2})"

    def key(self, q1, q2):
        q1 = tuple(q1) + (0,) * (self.l1 - len(q1))
        q2 = tuple(q2) + (0,) * (self.l2 - len(q2))
        if len(q1) != self.l1 or len(q2) != self.l2:
            raise ValueError("exponent vector too long for this ring")
        w1 = sum((j + 1) * e for j, e in enumerate(q1))
        w2 = sum((j + 1) * e for j, e in enumerate(q2))
        fields = [w1 + w2, w1, w2] + list(q1) + list(q2)
        key = 0
        for i, f in enumerate(fields):
            key += f << (BITS * i)
        return key

    def unpack(self, key):
        f = _fields(key, self.nfields)
        return tuple(f[3:3 + self.l1]), tuple(f[3 + self.l1:])

    def bidegree(self, key):
        f = _fields(key, 3)
        return f[1], f[2]

    def var_key(self, i, k):
        if i == 1:
            if not 1 <= k <= self.l1:
                raise ValueError(f"p_{{1,{k}}} not in ring with l1={self.l1}")
            q = [0] * self.l1
            q[k - 1] = 1
            return self.key(q, ())
        if i == 2:
            if not 1 <= k <= self.l2:
                raise ValueError(f"p_{{2,{k}}} not in ring with l2={self.l2}")
            q = [0] * self.l2
            q[k - 1] = 1
            return self.key((), q)
        raise ValueError("side must be 1 or 2")

    def var(self, i, k):
        return {self.var_key(i, k): 1}

    def mono(self, q1=(), q2=(), c=1):
        return {self.key(q1, q2): c} if c else {}

    def one(self):
        return {0: 1}

    def const(self, c):
        return {0: c} if c else {}

    # -- conversions -------------------------------------------------------

    def terms(self, f):
        """Sorted list of ((q1, q2), coeff)."""
        return sorted((self.unpack(k), c) for k, c in f.items())

    def to_str(self, f):
        if not f:
            return "0"
        parts = []
        for (q1, q2), c in self.terms(f):
            mon = []
            for side, q in ((1, q1), (2, q2)):
                for j, e in enumerate(q):
                    if e == 1:
                        mon.append(f"p{side}{j + 1}")
                    elif e:
                        mon.append(f"p{side}{j + 1}^{e}")
            m = "*".join(mon)
            if not m:
                parts.append(str(c))
            elif c == 1:
                parts.append(m)
            elif c == -1:
                parts.append("-" + m)
            else:
                parts.append(f"{c}*{m}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self, f):
        return [{"q1": list(q1), "q2": list(q2), "n": str(c)}
                for (q1, q2), c in self.terms(f)]

    def from_json(self, items):
        out = {}
        for it in items:
            n = it["n"]
            c = Fraction(n) if "/" in n else int(n)
            k = self.key(it["q1"], it["q2"])
            out[k] = out.get(k, 0) + c
        return {k: c for k, c in out.items() if c}

    def convert(self, f, other):
        """Re-pack f into ring `other`; variables missing there are set to 0."""
        if other == self:
            return dict(f)
        out = {}
        for k, c in f.items():
            q1, q2 = self.unpack(k)
            if any(q1[other.l1:]) or any(q2[other.l2:]):
                continue
            nk = other.key(q1[:other.l1], q2[:other.l2])
            out[nk] = out.get(nk, 0) + c
        return {k: c for k, c in out.items() if c}

    def specialize(self, f, values):
        """Substitute numbers for some variables.

        values maps (i, k) -> number; unmentioned variables stay symbolic.
        Negative exponents need the value to be invertible.
        """
        out = {}
        for k, c in f.items():
            q1, q2 = self.unpack(k)
            q1, q2 = list(q1), list(q2)
            coef = c
            for (i, j), val in values.items():
                q = q1 if i == 1 else q2
                if j - 1 < len(q) and q[j - 1]:
                    e = q[j - 1]
                    coef = coef * (val ** e if e > 0 else Fraction(1, val ** -e))
                    q[j - 1] = 0
            if not coef:
                continue
            nk = self.key(q1, q2)
            out[nk] = out.get(nk, 0) + coef
        return {k: c for k, c in out.items() if c}

    def evaluate(self, f, values):
        """Full numeric evaluation; values maps (i, k) -> number (default 0)."""
        total = 0
        for k, c in f.items():
            q1, q2 = self.unpack(k)
            t = c
            for side, q in ((1, q1), (2, q2)):
                for j, e in enumerate(q):
                    if e:
                        t = t * values.get((side, j + 1), 0) ** e
            total += t
        return total

    def binomial_spec(self):
        """p_{i,k} = 0 for k < l_i and p_{i,l_i} = 1."""
        vals = {}
        for side, l in ((1, self.l1), (2, self.l2)):
            for k in range(1, l + 1):
                vals[(side, k)] = 1 if k == l else 0
        return vals


# -- coefficient polynomial arithmetic -------------------------------------

def cp_add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = dict(a)
    for k, c in b.items():
        v = out.get(k, 0) + c
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return out


def cp_iadd(out, b, scale=1):
    """In-place out += scale*b; returns out."""
    for k, c in b.items():
        v = out.get(k, 0) + scale * c
        if v:
            out[k] = v
        else:
            del out[k]
    return out


def cp_neg(a):
    return {k: -c for k, c in a.items()}


def cp_sub(a, b):
    return cp_add(a, cp_neg(b))


def cp_scale(a, s):
    if not s:
        return {}
    return {k: c * s for k, c in a.items()}


def cp_shift(a, key):
    """Multiply by a monomial (packed key)."""
    return {k + key: c for k, c in a.items()}


def cp_mul(a, b, maxdeg=None):
    """Product of two coefficient polynomials, optionally dropping degree > maxdeg."""
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    out = {}
    get = out.get
    if maxdeg is None:
        for ka, ca in a.items():
            for kb, cb in b.items():
                k = ka + kb
                out[k] = get(k, 0) + ca * cb
    else:
        bl = sorted(((deg(k), k, c) for k, c in b.items()))
        for ka, ca in a.items():
            room = maxdeg - deg(ka)
            for d, kb, cb in bl:
                if d > room:
                    break
                k = ka + kb
                out[k] = get(k, 0) + ca * cb
    return {k: c for k, c in out.items() if c}


def cp_pow(a, n, maxdeg=None):
    if n < 0:
        raise ValueError("negative power of a coefficient polynomial")
    result = {0: 1}
    base = a
    while n:
        if n & 1:
            result = cp_mul(result, base, maxdeg)
        n >>= 1
        if n:
            base = cp_mul(base, base, maxdeg)
    return result


def cp_truncate(a, maxdeg):
    return {k: c for k, c in a.items() if deg(k) <= maxdeg}


def cp_mindeg(a):
    return min((deg(k) for k in a), default=None)


def cp_maxdeg(a):
    return max((deg(k) for k in a), default=None)


def tmax(f, g):
    """Coefficientwise maximum of two polynomials."""
    out = {}
    for k in set(f) | set(g):
        v = max(f.get(k, 0), g.get(k, 0))
        if v:
            out[k] = v
    return out


def is_nonnegative(f):
    return all(c > 0 for c in f.values())


# -- one-variable wall functions --------------------------------------------
# A wall function is a dict {j: poly} meaning sum_j poly_j z^j, j >= 0,
# truncated at 𝔪-degree `order`.

def uni_one():
    return {0: {0: 1}}


def uni_clean(f):
    return {j: c for j, c in f.items() if c}


def uni_truncate(f, order):
    out = {}
    for j, c in f.items():
        c = cp_truncate(c, order)
        if c:
            out[j] = c
    return out


def uni_mul(f, g, order):
    out = {}
    for i, a in f.items():
        for j, b in g.items():
            c = cp_mul(a, b, order)
            if c:
                cp_iadd(out.setdefault(i + j, {}), c)
    return uni_clean(out)


def uni_inv(f, order):
    """Inverse of a wall function with constant term 1."""
    if f.get(0) != {0: 1}:
        raise ValueError("wall function must have constant term 1")
    g = {j: c for j, c in f.items() if j}
    # terms of g sit in positive 𝔪-degree, so (-g)^n vanishes for n > order
    ng = {j: cp_neg(c) for j, c in g.items()}
    result = uni_one()
    power = uni_one()
    for _ in range(order):
        power = uni_mul(power, ng, order)
        if not power:
            break
        for j, c in power.items():
            cp_iadd(result.setdefault(j, {}), c)
    return uni_clean(result)


def uni_pow(f, n, order):
    if n < 0:
        return uni_pow(uni_inv(f, order), -n, order)
    result = uni_one()
    base = f
    while n:
        if n & 1:
            result = uni_mul(result, base, order)
        n >>= 1
        if n:
            base = uni_mul(base, base, order)
    return result


class PowerCache:
    """Memoized f^e for one wall function (e may be negative)."""

    def __init__(self, f, order):
        self.order = order
        self.pos = [uni_one(), uni_truncate(f, order)]
        self.neg = [uni_one()]
        self._inv = None

    def __call__(self, e):
        if e >= 0:
            while len(self.pos) <= e:
                self.pos.append(uni_mul(self.pos[-1], self.pos[1], self.order))
            return self.pos[e]
        if self._inv is None:
            self._inv = uni_inv(self.pos[1], self.order)
            self.neg.append(self._inv)
        while len(self.neg) <= -e:
            self.neg.append(uni_mul(self.neg[-1], self._inv, self.order))
        return self.neg[-e]


def uni_equal(f, g):
    return uni_clean(f) == uni_clean(g)


# -- truncated Laurent series in x, y ----------------------------------------

class LaurentSeries2:
    """Sum of CoeffPoly * x^a y^b, truncated at 𝔪-degree `order`.

    Values are treated as immutable; every operation returns a new series.
    """

    __slots__ = ("ring", "order", "terms")

    def __init__(self, ring, order, terms=None):
        self.ring = ring
        self.order = order
        t = {}
        if terms:
            for e, c in terms.items():
                c = cp_truncate(c, order)
                if c:
                    t[tuple(e)] = c
        self.terms = t

    @classmethod
    def monomial(cls, ring, order, exp, coeff=None):
        return cls(ring, order, {tuple(exp): coeff if coeff is not None else {0: 1}})

    @classmethod
    def one(cls, ring, order):
        return cls.monomial(ring, order, (0, 0))

    @classmethod
    def from_uni(cls, ring, order, f, direction):
        a, b = direction
        return cls(ring, order, {(j * a, j * b): c for j, c in f.items()})

    def _check(self, other):
        if not isinstance(other, LaurentSeries2):
            raise TypeError("expected LaurentSeries2")
        if other.order != self.order:
            raise ValueError(f"order mismatch: {self.order} vs {other.order}")
        if other.ring != self.ring:
            raise ValueError("ring mismatch")

    def copy(self):
        s = LaurentSeries2(self.ring, self.order)
        s.terms = {e: dict(c) for e, c in self.terms.items()}
        return s

    def coeff(self, a, b):
        return self.terms.get((a, b), {})

    def __eq__(self, other):
        return (isinstance(other, LaurentSeries2) and self.order == other.order
                and self.terms == other.terms)

    def __add__(self, other):
        self._check(other)
        out = {e: dict(c) for e, c in self.terms.items()}
        for e, c in other.terms.items():
            cp_iadd(out.setdefault(e, {}), c)
        s = LaurentSeries2(self.ring, self.order)
        s.terms = {e: c for e, c in out.items() if c}
        return s

    def __neg__(self):
        s = LaurentSeries2(self.ring, self.order)
        s.terms = {e: cp_neg(c) for e, c in self.terms.items()}
        return s

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        s = LaurentSeries2(self.ring, self.order)
        s.terms = {e: cp_scale(v, c) for e, v in self.terms.items()} if c else {}
        return s

    def __mul__(self, other):
        if not isinstance(other, LaurentSeries2):
            return self.scale(other)
        return series_mul(self, other)

    def is_one(self):
        return self.terms == {(0, 0): {0: 1}}

    def min_degree(self):
        return min((cp_mindeg(c) for c in self.terms.values()), default=None)

    def is_homogeneous(self):
        """Each coefficient at x^a y^b has bidegree (a, b) in (p_1, p_2)."""
        for (a, b), c in self.terms.items():
            for k in c:
                if self.ring.bidegree(k) != (a, b):
                    return False
        return True

    def map_coeffs(self, fn):
        s = LaurentSeries2(self.ring, self.order)
        for e, c in self.terms.items():
            c = fn(c)
            if c:
                s.terms[e] = c
        return s

    def with_order(self, order):
        return LaurentSeries2(self.ring, order, self.terms)

    def to_json(self):
        return [{"exp": [a, b], "coeff": self.ring.to_json(self.terms[(a, b)])}
                for (a, b) in sorted(self.terms)]

    def dumps(self):
        return json.dumps({"order": self.order, "l": [self.ring.l1, self.ring.l2],
                           "terms": self.to_json()}, separators=(",", ":"))

    @classmethod
    def from_json(cls, ring, order, items):
        return cls(ring, order, {tuple(it["exp"]): ring.from_json(it["coeff"]) for it in items})

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for (a, b) in sorted(self.terms):
            parts.append(f"({self.ring.to_str(self.terms[(a, b)])})*x^{a}*y^{b}")
        return " + ".join(parts)


def series_mul(a, b):
    a._check(b)
    order = a.order
    out = {}
    for (e1, f1), c1 in a.terms.items():
        for (e2, f2), c2 in b.terms.items():
            c = cp_mul(c1, c2, order)
            if c:
                cp_iadd(out.setdefault((e1 + e2, f1 + f2), {}), c)
    s = LaurentSeries2(a.ring, order)
    s.terms = {e: c for e, c in out.items() if c}
    return s


def _split_unit(a):
    c0 = a.terms.get((0, 0), {})
    if c0.get(0) != 1:
        raise ValueError("constant term must be 1")
    g = a.copy()
    rest = cp_iadd(dict(g.terms.pop((0, 0))), {0: 1}, -1)
    if rest:
        g.terms[(0, 0)] = rest
    if g.min_degree() is not None and g.min_degree() < 1:
        raise ValueError("constant term must be 1 (degree-0 terms besides 1 found)")
    return g


def series_inv(a):
    """Inverse of a series with constant term 1, via the geometric series."""
    g = _split_unit(a)
    ng = -g
    result = LaurentSeries2.one(a.ring, a.order)
    power = LaurentSeries2.one(a.ring, a.order)
    for _ in range(a.order):
        power = series_mul(power, ng)
        if not power.terms:
            break
        result = result + power
    return result


def series_pow(a, n):
    if n < 0:
        return series_pow(series_inv(a), -n)
    result = LaurentSeries2.one(a.ring, a.order)
    base = a
    while n:
        if n & 1:
            result = series_mul(result, base)
        n >>= 1
        if n:
            base = series_mul(base, base)
    return result


def series_log(a):
    """log(1 + g) = sum (-1)^{n+1} g^n / n with rational coefficients."""
    g = _split_unit(a)
    result = LaurentSeries2(a.ring, a.order)
    power = LaurentSeries2.one(a.ring, a.order)
    for n in range(1, a.order + 1):
        power = series_mul(power, g)
        if not power.terms:
            break
        result = result + power.scale(Fraction((-1) ** (n + 1), n))
    return result


def series_exp(g):
    """exp of a series with no constant term."""
    if g.min_degree() is not None and g.min_degree() < 1:
        raise ValueError("exp needs a series in positive 𝔪-degree")
    result = LaurentSeries2.one(g.ring, g.order)
    power = LaurentSeries2.one(g.ring, g.order)
    for n in range(1, g.order + 1):
        power = series_mul(power, g).scale(Fraction(1, n))
        if not power.terms:
            break
        result = result + power
    return result


def initial_P(ring, side, coeffs=None):
    """P_1 = 1 + sum p_{1,k} z^k (or given numeric/poly coefficients) as a wall function."""
    l = ring.l1 if side == 1 else ring.l2
    f = uni_one()
    for k in range(1, l + 1):
        if coeffs is None:
            f[k] = ring.var(side, k)
        else:
            c = coeffs[k - 1]
            f[k] = c if isinstance(c, dict) else ring.const(c)
    return uni_clean(f)


def binom(n, k):
    return comb(n, k) if 0 <= k <= n else 0
