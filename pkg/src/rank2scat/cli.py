# Command-line front end.  Every subcommand writes deterministic JSON.

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import golden
from .poly import Ring, is_nonnegative, uni_clean
from .scatter import ks_complete, complete, standard_diagram, is_consistent, wall_fn_tight
from .dyck import enumerate_weighted, iter_gradings
from .greedy import GreedyContext, greedy_element
from .broken import theta
from .invariants import OrderedPartition, euler_char, gw_invariant


class Mismatch(Exception):
    pass


# -- configuration ---------------------------------------------------------

def _parse_number(v, mode):
    if isinstance(v, bool):
        raise ValueError("booleans are not coefficient values")
    if isinstance(v, int):
        return v
    if isinstance(v, float):
        if not v.is_integer():
            raise ValueError("use 'a/b' strings for non-integer values")
        v = int(v)
        return v
    x = Fraction(str(v))
    if x.denominator == 1:
        return int(x)
    if mode != "rational":
        raise ValueError(f"value {v} needs --mode rational")
    return x


def _parse_var(name):
    """'p13', 'p1,3' or 'p_{1,3}' -> (1, 3)."""
    s = name.strip().lstrip("p").strip("_{}").replace(",", " ").split()
    if len(s) == 1 and len(s[0]) >= 2:
        s = [s[0][0], s[0][1:]]
    if len(s) != 2:
        raise ValueError(f"cannot parse coefficient name {name!r}")
    return int(s[0]), int(s[1])


def parse_spec(text, l1, l2, mode="integer"):
    """--spec: 'binomial', a JSON object {"p11": 0, ...} or a path to one."""
    if not text:
        return None
    if text == "binomial":
        return Ring(l1, l2).binomial_spec()
    p = Path(text)
    raw = json.loads(p.read_text()) if p.is_file() else json.loads(text)
    out = {}
    for name, v in raw.items():
        i, k = _parse_var(name)
        if i not in (1, 2) or not 1 <= k <= (l1 if i == 1 else l2):
            raise ValueError(f"{name} is not a coefficient for l = ({l1}, {l2})")
        out[(i, k)] = _parse_number(v, mode)
    return out


def _pair(text):
    a, b = (int(x) for x in str(text).split(","))
    return a, b


def _point(text):
    a, b = (Fraction(x) for x in str(text).split(","))
    return a, b


# -- JSON helpers ------------------------------------------------------------

def _uni_json(ring, f):
    return [{"k": j, "coeff": ring.to_json(f[j])} for j in sorted(f)]


def _specialize_uni(ring, f, spec):
    if not spec:
        return f
    return uni_clean({j: ring.specialize(c, spec) for j, c in f.items()})


def _specialize_series(s, spec):
    if not spec:
        return s
    return s.map_coeffs(lambda c: s.ring.specialize(c, spec))


def _config(args):
    return {"l1": args.l1, "l2": args.l2, "order": args.order, "mode": args.mode,
            "spec": args.spec}


# -- subcommands --------------------------------------------------------------

def cmd_scat(args, spec):
    box = _pair(args.box) if args.box else None
    D = ks_complete(args.l1, args.l2, args.order, spec=spec, box=box, method=args.method)
    out = D.to_json()
    out["consistent"] = is_consistent(D) if args.check else None
    return out


def cmd_wall(args, spec):
    ring = Ring(args.l1, args.l2)
    kmax = args.kmax if args.kmax is not None else args.order // (args.a + args.b)
    f = wall_fn_tight(args.a, args.b, args.m, args.l1, args.l2, kmax, ring=ring)
    f = _specialize_uni(ring, f, spec)
    return {"dir": [args.a, args.b], "m": args.m, "kmax": kmax, "fn": _uni_json(ring, f)}


def cmd_gradings(args, spec):
    ring = Ring(args.l1, args.l2)
    al1 = _ints(args.allowed1)
    al2 = _ints(args.allowed2)
    w = enumerate_weighted(args.d1, args.d2, args.p, args.q, args.l1, args.l2,
                           predicate=args.predicate, ring=ring, allowed1=al1, allowed2=al2)
    out = {"d": [args.d1, args.d2], "p": args.p, "q": args.q, "predicate": args.predicate,
           "count": sum(w.values()), "weight": ring.to_json(ring.specialize(w, spec) if spec else w)}
    if args.list:
        out["gradings"] = [g.to_json() for g in
                           iter_gradings(args.d1, args.d2, args.p, args.q, args.l1, args.l2,
                                         predicate=args.predicate)
                           if g.weight(ring) and _uses(g, al1, al2)]
    return out


def _ints(text):
    return [int(x) for x in text.split(",")] if text else None


def _uses(g, al1, al2):
    ok1 = al1 is None or all(v == 0 or v in al1 for v in g.omegaN)
    ok2 = al2 is None or all(v == 0 or v in al2 for v in g.omegaE)
    return ok1 and ok2


def cmd_greedy(args, spec):
    ctx = GreedyContext(args.d1, args.d2, args.l1, args.l2, method=args.method)
    s = _specialize_series(greedy_element(ctx), spec)
    return {"d": [args.d1, args.d2], "method": args.method, "terms": s.to_json()}


def cmd_theta(args, spec):
    D = ks_complete(args.l1, args.l2, args.order)
    Q = _point(args.point) if args.point else None
    th = theta(D, _pair(args.m0), Q, keep_lines=args.lines)
    s = _specialize_series(th.terms, spec)
    out = {"m0": list(th.m0), "point": [str(th.Q[0]), str(th.Q[1])], "order": args.order,
           "terms": s.to_json()}
    if args.lines:
        out["lines"] = [_line_json(D.ring, b) for b in th.lines]
    return out


def _line_json(ring, bl):
    bends = [{"wall": list(b["u"]), "j": b["j"], "point": [str(b["point"][0]), str(b["point"][1])],
              "exp_after": list(b["m_after"])} for b in bl.bends]
    return {"final": list(bl.m), "coeff": ring.to_json(bl.coeff), "bends": bends}


def cmd_euler(args, spec):
    P1, P2 = OrderedPartition.parse(args.p1), OrderedPartition.parse(args.p2)
    chi = euler_char(args.a, args.b, args.k, P1, P2, framing=args.framing)
    return {"a": args.a, "b": args.b, "k": args.k, "P1": list(P1), "P2": list(P2),
            "framing": args.framing, "chi": str(chi)}


def cmd_gw(args, spec):
    P1, P2 = OrderedPartition.parse(args.p1), OrderedPartition.parse(args.p2)
    N = gw_invariant(args.a, args.b, args.k, P1, P2)
    return {"a": args.a, "b": args.b, "k": args.k, "P1": list(P1), "P2": list(P2),
            "N": str(N)}


# -- verify -------------------------------------------------------------------

def _check_ks_tight(D, spec, cap):
    ring = D.ring
    for (a, b) in sorted(D.rays):
        if a < 1 or b < 1:
            continue
        jmax = min(D.trunc.jmax((a, b)), cap // (a + b))
        if jmax < 1:
            continue
        t = _specialize_uni(ring, wall_fn_tight(a, b, 1, D.l1, D.l2, jmax, ring=ring), spec)
        f = D.ray(a, b)
        for j in range(1, jmax + 1):
            if f.get(j, {}) != t.get(j, {}):
                raise Mismatch(f"ray {(a, b)} z^{j}: ks {ring.to_str(f.get(j, {}))} "
                               f"vs tight {ring.to_str(t.get(j, {}))}")
    return "ks and tight agree"


def _check_peel_order(D):
    E = complete(standard_diagram(D.l1, D.l2, D.order, ring=D.ring), method="order")
    if E.rays != D.rays:
        w = sorted(set(E.rays) ^ set(D.rays)) or sorted(w for w in D.rays if D.rays[w] != E.rays.get(w))
        raise Mismatch(f"peel and order-by-order differ at ray {w[0]}")
    if not is_consistent(D):
        raise Mismatch("loop product is not the identity")
    return "peel = order-by-order, consistent"


def _check_positive(D):
    ring = D.ring
    for w, f in sorted(D.rays.items()):
        for j, c in sorted(f.items()):
            if not is_nonnegative(c):
                raise Mismatch(f"ray {w} z^{j} has a negative coefficient: {ring.to_str(c)}")
            for key in c:
                if ring.bidegree(key) != (j * w[0], j * w[1]):
                    raise Mismatch(f"ray {w} z^{j} term {ring.to_str({key: 1})} is not homogeneous")
    return f"{len(D.rays)} rays positive and homogeneous"


def _check_greedy_compatible(l1, l2, dmax):
    ring = Ring(l1, l2)
    n = 0
    for d1 in range(1, dmax + 1):
        for d2 in range(1, dmax + 1):
            ctx = GreedyContext(d1, d2, l1, l2, ring=ring)
            P, Q = ctx.bound()
            for p in range(P + 1):
                for q in range(Q + 1):
                    c = enumerate_weighted(d1, d2, p, q, l1, l2, predicate="compatible", ring=ring)
                    if ctx.coeff(p, q) != c:
                        raise Mismatch(f"x[{d1},{d2}] c({p},{q}): greedy {ring.to_str(ctx.coeff(p, q))}"
                                       f" vs gradings {ring.to_str(c)}")
                    n += 1
    return f"{n} coefficients"


def _check_theta_greedy(l1, l2, dmax):
    ring = Ring(l1, l2)
    need = max((1 + l2) * dmax + (1 + l1) * dmax, 1)
    D = ks_complete(l1, l2, need, ring=ring)
    for d1 in range(1, dmax + 1):
        for d2 in range(1, dmax + 1):
            th = theta(D, (-d1, -d2)).terms
            g = greedy_element(GreedyContext(d1, d2, l1, l2, ring=ring), order=need)
            if th != g:
                raise Mismatch(f"theta_(-{d1},-{d2}) differs from x[{d1},{d2}]")
    return f"d1, d2 <= {dmax}"


def _check_golden(name, D):
    ref = golden.load(name)
    fresh = golden.REFERENCES[name]()
    if ref != fresh:
        raise Mismatch(f"golden file {name}.json is stale; rerun with --regenerate-golden")
    bad = golden.compare(D, ref)
    if bad:
        raise Mismatch(bad[0])
    return f"{name} within order {D.order}"


def _check_binomial(D, step):
    """Binomial specialization of the affine ray: sum (step k + 1) z^(2k)."""
    ring = D.ring
    spec = ring.binomial_spec()
    w = (1, 1) if (D.l1, D.l2) == (2, 2) else (2, 1)
    f = _specialize_uni(ring, D.ray(*w), spec)
    jmax = D.trunc.jmax(w)
    for j in range(1, jmax + 1):
        want = {0: step * (j // 2) + 1} if j % 2 == 0 else {}
        if f.get(j, {}) != want:
            raise Mismatch(f"binomial ray {w} z^{j}: got {ring.to_str(f.get(j, {}))}")
    return f"ray {w} through z^{jmax}"


_GOLDEN_FOR = {(3, 1): "g2", (2, 2): "affine22", (4, 1): "affine41"}


def cmd_verify(args, spec):
    if args.regenerate_golden:
        paths = golden.regenerate()
        return {"regenerated": [p.name for p in paths]}, 0
    l1, l2 = args.l1, args.l2
    D = ks_complete(l1, l2, args.order)
    checks = [
        ("ks vs tight gradings", lambda: _check_ks_tight(D, None, args.tight_order)),
        ("peel vs order-by-order", lambda: _check_peel_order(D)),
        ("positivity and homogeneity", lambda: _check_positive(D)),
        ("greedy vs compatible gradings", lambda: _check_greedy_compatible(l1, l2, args.greedy_max)),
        ("theta vs greedy", lambda: _check_theta_greedy(l1, l2, args.theta_max)),
    ]
    if spec:
        Ds = ks_complete(l1, l2, args.order, spec=spec)
        checks.append(("specialized ks vs tight", lambda: _check_ks_tight(Ds, spec, args.tight_order)))
    name = _GOLDEN_FOR.get((l1, l2))
    if name:
        checks.append((f"golden {name}", lambda: _check_golden(name, D)))
    if (l1, l2) == (1, 1):
        checks.append(("pentagon", lambda: _check_pentagon(D)))
    if (l1, l2) == (2, 2):
        checks.append(("binomial specialization", lambda: _check_binomial(D, 1)))
    if (l1, l2) == (4, 1):
        checks.append(("binomial specialization", lambda: _check_binomial(D, 2)))
    report = []
    first = None
    for label, fn in checks:
        try:
            detail = fn()
            ok = True
        except Mismatch as e:
            detail, ok = str(e), False
            first = first or f"{label}: {detail}"
        report.append({"check": label, "ok": ok, "detail": detail})
        print(f"{'PASS' if ok else 'FAIL'}  {label:<32} {detail}", file=sys.stderr)
    if first:
        print(f"first mismatch: {first}", file=sys.stderr)
    ok = first is None
    return {"config": _config(args), "checks": report, "ok": ok}, 0 if ok else 1


def _check_pentagon(D):
    ring = D.ring
    want = {(1, 1): {0: {0: 1}, 1: {ring.key((1,), (1,)): 1}}}
    if D.rays != want:
        raise Mismatch(f"rays {sorted(D.rays)} differ from the single ray (1, 1)")
    return "single ray (1, 1) with 1 + p11 p21 z"


# -- parser ---------------------------------------------------------------------

GLOBAL_DEFAULTS = {"l1": 2, "l2": 2, "order": 8, "spec": None, "mode": "integer", "out": None}


def _add_globals(p):
    S = argparse.SUPPRESS
    p.add_argument("--l1", type=int, default=S, help="length of P1 (default 2)")
    p.add_argument("--l2", type=int, default=S, help="length of P2 (default 2)")
    p.add_argument("--order", type=int, default=S, help="truncation order (default 8)")
    p.add_argument("--spec", "--p-spec", dest="spec", default=S,
                   help="coefficient specialization: 'binomial', JSON object or JSON file")
    p.add_argument("--mode", choices=("integer", "rational"), default=S,
                   help="rational allows fractional specializations")
    p.add_argument("--out", default=S, help="write JSON here instead of stdout")


def build_parser():
    parser = argparse.ArgumentParser(prog="rank2scat",
                                     description="Rank-2 generalized cluster scattering diagrams.")
    _add_globals(parser)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("scat", help="consistent completion")
    p.add_argument("--method", choices=("peel", "order"), default="peel")
    p.add_argument("--box", help="A,B caps on the two exponents")
    p.add_argument("--check", action="store_true", help="also report loop consistency")

    p = sub.add_parser("wall", help="ray wall function from shadowed gradings")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--m", type=int, default=1, help="power of the wall function")
    p.add_argument("--kmax", type=int)

    p = sub.add_parser("gradings", help="weighted count of gradings on P(d1, d2)")
    p.add_argument("--d1", type=int, required=True)
    p.add_argument("--d2", type=int, required=True)
    p.add_argument("--p", type=int, required=True, help="total weight on N edges")
    p.add_argument("--q", type=int, required=True, help="total weight on E edges")
    p.add_argument("--predicate", default="tight",
                   choices=("compatible", "shadowed", "tight"))
    p.add_argument("--allowed1", help="N-edge values allowed, e.g. 3 (others act as p_{1,k} = 0)")
    p.add_argument("--allowed2", help="E-edge values allowed, e.g. 1,2")
    p.add_argument("--list", action="store_true", help="list contributing gradings (small cases)")

    p = sub.add_parser("greedy", help="greedy element x[d1, d2]")
    p.add_argument("--d1", type=int, required=True)
    p.add_argument("--d2", type=int, required=True)
    p.add_argument("--method", choices=("sharpened", "tmax"), default="sharpened")

    p = sub.add_parser("theta", help="theta function from broken lines")
    p.add_argument("--m0", required=True, help="initial exponent a,b")
    p.add_argument("--point", "--Q", dest="point",
                   help="endpoint x,y (rationals); default is generic in the first quadrant")
    p.add_argument("--lines", action="store_true", help="include the broken lines as bend lists")

    for name, helptext in (("euler", "Euler characteristic of framed moduli"),
                           ("gw", "relative Gromov-Witten invariant")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--a", type=int, required=True)
        p.add_argument("--b", type=int, required=True)
        p.add_argument("--k", type=int, required=True)
        p.add_argument("--p1", required=True, help="ordered partition, e.g. 3,0,0")
        p.add_argument("--p2", required=True, help="ordered partition, e.g. 3,0")
        if name == "euler":
            p.add_argument("--framing", choices=("back", "front"), default="back")

    p = sub.add_parser("verify", help="cross-route checks; exit status 0 iff all pass")
    p.add_argument("--tight-order", type=int, default=12,
                   help="compare tight gradings through this order")
    p.add_argument("--greedy-max", type=int, default=3)
    p.add_argument("--theta-max", type=int, default=2)
    p.add_argument("--regenerate-golden", action="store_true",
                   help="rewrite the golden JSON files from the closed forms")

    for sp in sub.choices.values():
        _add_globals(sp)
    return parser


COMMANDS = {"scat": cmd_scat, "wall": cmd_wall, "gradings": cmd_gradings, "greedy": cmd_greedy,
            "theta": cmd_theta, "euler": cmd_euler, "gw": cmd_gw}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    for k, v in GLOBAL_DEFAULTS.items():
        if not hasattr(args, k):
            setattr(args, k, v)
    if args.order < 1:
        parser.error("--order must be at least 1")
    try:
        spec = parse_spec(args.spec, args.l1, args.l2, args.mode)
        if args.command == "verify":
            result, code = cmd_verify(args, spec)
        else:
            result, code = COMMANDS[args.command](args, spec), 0
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    text = json.dumps(result, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
