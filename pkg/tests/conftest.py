import sympy as sp
from hypothesis import settings

from rank2scat.poly import Ring

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def psym(i, k):
    return sp.Symbol(f"p{i}{k}")


def to_sympy(ring, f):
    """CoeffPoly -> sympy expression in p11, p12, ..."""
    expr = sp.Integer(0)
    for key, c in f.items():
        q1, q2 = ring.unpack(key)
        t = sp.Rational(c)
        for j, e in enumerate(q1):
            t *= psym(1, j + 1) ** e
        for j, e in enumerate(q2):
            t *= psym(2, j + 1) ** e
        expr += t
    return sp.expand(expr)


def from_sympy(ring, expr):
    """Polynomial sympy expression in p_{i,k} -> CoeffPoly."""
    expr = sp.expand(expr)
    gens = [psym(1, k) for k in range(1, ring.l1 + 1)] + [psym(2, k) for k in range(1, ring.l2 + 1)]
    if expr == 0:
        return {}
    poly = sp.Poly(expr, *gens) if gens else None
    out = {}
    if poly is None:
        return {0: int(expr)}
    for mon, c in poly.terms():
        key = ring.key(mon[:ring.l1], mon[ring.l1:])
        out[key] = int(c) if c.is_integer else c
    return out


def P(ring, text):
    """Parse a polynomial like '6*p13*p21*p22 + p13*p21**3'."""
    return from_sympy(ring, sp.sympify(text))
