# Greedy elements x[d1, d2] through the c(p, q) recursion.

from .poly import (Ring, LaurentSeries2, cp_add, cp_mul, cp_neg, cp_iadd,
                   cp_scale, tmax)


class _PowerTable:
    """Coefficients of P_side(z)^m for integer m, extended on demand.

    Uses the recurrence n g_n = sum_k ((m+1)k - n) a_k g_{n-k} for g = f^m,
    valid for f with constant term 1 and any integer m.
    """

    def __init__(self, ring, side):
        self.ring = ring
        self.side = side
        l = ring.l1 if side == 1 else ring.l2
        self.a = [None] + [ring.var(side, k) for k in range(1, l + 1)]
        self.l = l
        self.rows = {}

    def coeff(self, m, n):
        if n < 0:
            return {}
        if n == 0:
            return {0: 1}
        row = self.rows.setdefault(m, [{0: 1}])
        while len(row) <= n:
            N = len(row)
            acc = {}
            for k in range(1, min(N, self.l) + 1):
                w = (m + 1) * k - N
                if w:
                    cp_iadd(acc, cp_mul(self.a[k], row[N - k]), w)
            out = {}
            for key, c in acc.items():
                qt, r = divmod(c, N)
                if r:
                    raise ArithmeticError("non-integral power coefficient")
                if qt:
                    out[key] = qt
            row.append(out)
        return row[n]


def pi_poly(m, n, side, ring):
    """Coefficient of z^n in P_side(z)^m (m >= 0); for m < 0 only pi_{m,0} = 1."""
    if n == 0:
        return {0: 1}
    if m < 0:
        return {}
    return _table(ring, side).coeff(m, n)


def sigma_poly(m, n, side, ring):
    """Coefficient of z^n in P_side(z)^(-m) (m >= 0); for m < 0 only sigma_{m,0} = 1."""
    if n == 0:
        return {0: 1}
    if m < 0:
        return {}
    return _table(ring, side).coeff(-m, n)


_TABLES = {}


def _table(ring, side):
    key = (ring.l1, ring.l2, side)
    t = _TABLES.get(key)
    if t is None:
        t = _TABLES[key] = _PowerTable(ring, side)
    return t


class GreedyContext:
    """Memo tables for c(p, q), d_+(p, q), d_-(p, q) at a fixed (d1, d2)."""

    def __init__(self, d1, d2, l1, l2, ring=None, method="sharpened"):
        if method not in ("sharpened", "tmax"):
            raise ValueError("method must be 'sharpened' or 'tmax'")
        self.d1 = d1
        self.d2 = d2
        self.ring = ring or Ring(l1, l2)
        self.l1 = self.ring.l1
        self.l2 = self.ring.l2
        self.method = method
        self.c = {(0, 0): {0: 1}}
        self._A = {}
        self._B = {}

    def bound(self):
        """Box [0, P] x [0, Q] outside which every c(p, q) vanishes."""
        d1, d2 = max(self.d1, 0), max(self.d2, 0)
        return d1 + self.l1 * d2, d2 + self.l2 * d1

    def branch_A(self, p, q):
        """sum_{k=1}^{p} -c(p-k, q) sigma_{d2-q, k}(p_1)."""
        v = self._A.get((p, q))
        if v is None:
            v = {}
            m = self.d2 - q
            if m >= 0:
                for k in range(1, p + 1):
                    s = sigma_poly(m, k, 1, self.ring)
                    if s:
                        cp_iadd(v, cp_mul(self.coeff(p - k, q), s), -1)
            self._A[(p, q)] = v
        return v

    def branch_B(self, p, q):
        """sum_{k=1}^{q} -c(p, q-k) sigma_{d1-p, k}(p_2)."""
        v = self._B.get((p, q))
        if v is None:
            v = {}
            m = self.d1 - p
            if m >= 0:
                for k in range(1, q + 1):
                    s = sigma_poly(m, k, 2, self.ring)
                    if s:
                        cp_iadd(v, cp_mul(self.coeff(p, q - k), s), -1)
            self._B[(p, q)] = v
        return v

    def coeff(self, p, q):
        if p < 0 or q < 0:
            return {}
        v = self.c.get((p, q))
        if v is not None:
            return v
        # fill lower indices first to keep recursion shallow
        for pp in range(p + 1):
            for qq in range(q + 1):
                if (pp, qq) not in self.c:
                    self.c[(pp, qq)] = self._compute(pp, qq)
        return self.c[(p, q)]

    def _compute(self, p, q):
        # the sharpened form needs (d1, d2) in N^2; T-max covers the rest
        if self.method == "tmax" or self.d1 < 0 or self.d2 < 0:
            return tmax(self.branch_A(p, q), self.branch_B(p, q))
        if self.d1 * q <= self.d2 * p:
            return self.branch_A(p, q)
        return self.branch_B(p, q)

    def d_plus(self, p, q):
        if (p, q) == (0, 0):
            return {0: 1}
        return cp_add(self.coeff(p, q), cp_neg(self.branch_A(p, q)))

    def d_minus(self, p, q):
        if (p, q) == (0, 0):
            return {0: 1}
        return cp_add(self.coeff(p, q), cp_neg(self.branch_B(p, q)))


def greedy_coeff(ctx, p, q):
    return ctx.coeff(p, q)


def d_pm(ctx, p, q, sign):
    return ctx.d_plus(p, q) if sign > 0 else ctx.d_minus(p, q)


def greedy_element(ctx, order=None):
    """x[d1, d2] = x^{-d1} y^{-d2} sum c(p, q) x^p y^q as a finite Laurent polynomial."""
    P, Q = ctx.bound()
    if order is None:
        order = P + Q
    terms = {}
    for p in range(P + 1):
        for q in range(Q + 1):
            c = ctx.coeff(p, q)
            if c:
                terms[(p - ctx.d1, q - ctx.d2)] = c
    return LaurentSeries2(ctx.ring, order, terms)


def greedy(d1, d2, l1, l2, ring=None, order=None, method="sharpened"):
    return greedy_element(GreedyContext(d1, d2, l1, l2, ring=ring, method=method), order)


def cpq_by_dplus(ctx, p, q):
    """c(p, q) rebuilt as sum_s pi_{d2-q, s}(p_1) d_+(p-s, q)."""
    out = {}
    for s in range(p + 1):
        pi = pi_poly(ctx.d2 - q, s, 1, ctx.ring)
        if pi:
            cp_iadd(out, cp_mul(pi, ctx.d_plus(p - s, q)))
    return out


def cpq_by_dminus(ctx, p, q):
    out = {}
    for s in range(q + 1):
        pi = pi_poly(ctx.d1 - p, s, 2, ctx.ring)
        if pi:
            cp_iadd(out, cp_mul(pi, ctx.d_minus(p, q - s)))
    return out


__all__ = ["pi_poly", "sigma_poly", "tmax", "GreedyContext", "greedy_coeff", "d_pm",
           "greedy_element", "greedy", "cpq_by_dplus", "cpq_by_dminus", "cp_scale"]
