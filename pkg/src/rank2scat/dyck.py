# Maximal Dyck paths, gradings, shadows, and the compatible / shadowed / tight
# predicates, plus weighted enumeration.
#
# Edges are addressed as ("E", i) for u_i and ("N", j) for v_j, 1-based.
# A grading stores omegaE[i-1] = ω(u_i) and omegaN[j-1] = ω(v_j).

from math import gcd
from itertools import product

import numpy as np
import json

from .poly import Ring, cp_iadd


class DyckPath:
    """The maximal Dyck path P(d1, d2) as a cyclic word in E and N."""

    def __init__(self, d1, d2):
        if d1 < 0 or d2 < 0:
            raise ValueError("d1, d2 must be nonnegative")
        self.d1 = d1
        self.d2 = d2
        steps = []
        placed = 0
        for j in range(1, d2 + 1):
            # v_j comes right after the ceil(j*d1/d2)-th E step
            target = -((-j * d1) // d2)
            steps.extend("E" * (target - placed))
            placed = target
            steps.append("N")
        steps.extend("E" * (d1 - placed))
        self.steps = tuple(steps)
        self.n = len(steps)
        self.pos_E = [i for i, s in enumerate(steps) if s == "E"]
        self.pos_N = [i for i, s in enumerate(steps) if s == "N"]
        # edge label at each position
        self.label = []
        ie = jn = 0
        for s in steps:
            if s == "E":
                ie += 1
                self.label.append(("E", ie))
            else:
                jn += 1
                self.label.append(("N", jn))

    def __repr__(self):
        return f"DyckPath({self.d1}, {self.d2}): {''.join(self.steps)}"

    def position(self, edge):
        kind, i = edge
        return (self.pos_E if kind == "E" else self.pos_N)[i - 1]

    def subpath(self, e, f):
        """Positions of the cyclic subpath from e to f, inclusive."""
        i, j = self.position(e), self.position(f)
        length = (j - i) % self.n + 1
        return [(i + t) % self.n for t in range(length)]


def maximal_dyck_path(d1, d2):
    return DyckPath(d1, d2)


def subpath_counts(path, e, f):
    """(#E, #N) on the cyclic subpath from e to f, inclusive."""
    nE = nN = 0
    for p in path.subpath(e, f):
        if path.steps[p] == "E":
            nE += 1
        else:
            nN += 1
    return nE, nN


class DyckGrading:
    def __init__(self, path, omegaE, omegaN):
        if isinstance(path, tuple):
            path = DyckPath(*path)
        if len(omegaE) != path.d1 or len(omegaN) != path.d2:
            raise ValueError("grading length does not match the path")
        if min(list(omegaE) + list(omegaN) + [0]) < 0:
            raise ValueError("grading values must be nonnegative")
        self.path = path
        self.omegaE = tuple(omegaE)
        self.omegaN = tuple(omegaN)

    @classmethod
    def from_edges(cls, d1, d2, values):
        """values: {("E", i) or ("N", j): ω}; unlisted edges get 0."""
        oE = [0] * d1
        oN = [0] * d2
        for (kind, i), w in values.items():
            (oE if kind == "E" else oN)[i - 1] = w
        return cls(DyckPath(d1, d2), oE, oN)

    @property
    def p(self):
        return sum(self.omegaN)

    @property
    def q(self):
        return sum(self.omegaE)

    def value(self, edge):
        kind, i = edge
        return (self.omegaE if kind == "E" else self.omegaN)[i - 1]

    def at(self, pos):
        kind, i = self.path.label[pos]
        return (self.omegaE if kind == "E" else self.omegaN)[i - 1]

    def weight(self, ring):
        """wt = prod p_{2, ω(u_i)} prod p_{1, ω(v_j)} as a polynomial (0 if capped out)."""
        q1 = [0] * ring.l1
        q2 = [0] * ring.l2
        for w in self.omegaN:
            if w:
                if w > ring.l1:
                    return {}
                q1[w - 1] += 1
        for w in self.omegaE:
            if w:
                if w > ring.l2:
                    return {}
                q2[w - 1] += 1
        return {ring.key(q1, q2): 1}

    def to_json(self):
        return {"d": [self.path.d1, self.path.d2], "omegaE": list(self.omegaE),
                "omegaN": list(self.omegaN)}

    @classmethod
    def from_json(cls, obj):
        if isinstance(obj, str):
            obj = json.loads(obj)
        d1, d2 = obj["d"]
        return cls(DyckPath(d1, d2), obj["omegaE"], obj["omegaN"])

    def __repr__(self):
        return f"DyckGrading(d={self.path.d1, self.path.d2}, E={list(self.omegaE)}, N={list(self.omegaN)})"


# -- shadows --------------------------------------------------------------

def _shadow_positions(path, vals, start, kind):
    """Shadow of the edge at position `start` (of type `kind`) as a list of
    positions of the opposite type.  `vals[pos]` gives ω at each position.

    Horizontal shadows run forward along the path, vertical ones backward.
    """
    n = path.n
    step = 1 if kind == "E" else -1
    steps = path.steps
    other = "N" if kind == "E" else "E"
    if vals[start] == 0:
        return []
    total = 0
    count = 0
    seen = []
    for t in range(n):
        pos = (start + step * t) % n
        if steps[pos] == kind:
            total += vals[pos]
        else:
            count += 1
            seen.append(pos)
            if count == total:
                return seen
    return [p for p in range(n) if steps[p] == other]


def _vals(g):
    return [g.at(p) for p in range(g.path.n)]


def shadow(g, e):
    """Shadow of edge e under grading g, as a set of edge labels."""
    pos = g.path.position(e)
    sh = _shadow_positions(g.path, _vals(g), pos, e[0])
    return {g.path.label[p] for p in sh}


def shadow_of_set(g, edges):
    out = set()
    for e in edges:
        out |= shadow(g, e)
    return out


def support(g):
    SE = {("E", i + 1) for i, w in enumerate(g.omegaE) if w}
    SN = {("N", j + 1) for j, w in enumerate(g.omegaN) if w}
    return SE, SN


def is_compatible_naive(g):
    """Direct check of the defining condition, pair by pair."""
    path = g.path
    vals = _vals(g)
    for i, wu in enumerate(g.omegaE):
        if not wu:
            continue
        pu = path.pos_E[i]
        for j, wv in enumerate(g.omegaN):
            if not wv:
                continue
            pv = path.pos_N[j]
            sub = path.subpath(("E", i + 1), ("N", j + 1))
            ok = False
            for idx, pe in enumerate(sub):
                if path.steps[pe] == "N" and pe != pv:
                    # |(u..e)_N| == ω((u..e)_E)
                    seg = sub[:idx + 1]
                    cN = sum(1 for x in seg if path.steps[x] == "N")
                    wE = sum(vals[x] for x in seg if path.steps[x] == "E")
                    if cN == wE:
                        ok = True
                        break
                if path.steps[pe] == "E" and pe != pu:
                    seg = sub[idx:]
                    cE = sum(1 for x in seg if path.steps[x] == "E")
                    wN = sum(vals[x] for x in seg if path.steps[x] == "N")
                    if cE == wN:
                        ok = True
                        break
            if not ok:
                return False
    return True


def is_compatible(g):
    """Compatibility via shadows: no u in S_E, v in S_N see each other."""
    path = g.path
    vals = _vals(g)
    shN = {}
    for j, w in enumerate(g.omegaN):
        if w:
            shN[path.pos_N[j]] = set(_shadow_positions(path, vals, path.pos_N[j], "N"))
    for i, w in enumerate(g.omegaE):
        if not w:
            continue
        pu = path.pos_E[i]
        for pv in _shadow_positions(path, vals, pu, "E"):
            if pv in shN and pu in shN[pv]:
                return False
    return True


def _shadow_sets(g):
    path = g.path
    vals = _vals(g)
    shE = set()
    shN = set()
    for i, w in enumerate(g.omegaE):
        if w:
            shE.update(_shadow_positions(path, vals, path.pos_E[i], "E"))
    for j, w in enumerate(g.omegaN):
        if w:
            shN.update(_shadow_positions(path, vals, path.pos_N[j], "N"))
    SE = {path.pos_E[i] for i, w in enumerate(g.omegaE) if w}
    SN = {path.pos_N[j] for j, w in enumerate(g.omegaN) if w}
    return SE, SN, shE, shN


def is_shadowed(g):
    if not is_compatible(g):
        return False
    SE, SN, shE, shN = _shadow_sets(g)
    return SE <= shN or SN <= shE


def tight_numbers_ok(d1, d2, p, q):
    if p > d1 or q > d2:
        return False
    return abs(p * d2 - q * d1) == gcd(p, q)


def is_tight(g):
    p, q = g.p, g.q
    if p == 0 and q == 0:
        return True
    return tight_numbers_ok(g.path.d1, g.path.d2, p, q) and is_shadowed(g)


# -- enumeration ------------------------------------------------------------

PREDICATES = ("all", "compatible", "shadowed", "tight", "shadowed_plus", "shadowed_minus")


def _compositions(total, nparts, allowed):
    """Tuples of length nparts with entries in {0} ∪ allowed summing to total."""
    allowed = sorted(a for a in set(allowed) if a > 0)
    if nparts == 0:
        if total == 0:
            yield ()
        return
    top = allowed[-1] if allowed else 0
    out = [0] * nparts

    def rec(i, rest):
        if i == nparts - 1:
            if rest == 0 or rest in allowed:
                out[i] = rest
                yield tuple(out)
            return
        if rest > top * (nparts - i):
            return
        out[i] = 0
        yield from rec(i + 1, rest)
        for a in allowed:
            if a > rest:
                break
            out[i] = a
            yield from rec(i + 1, rest - a)

    yield from rec(0, total)


class _Side:
    """Precomputed data for one assignment of values to the edges of one type."""

    __slots__ = ("vals", "R", "sh", "S", "wkey", "total")


def _side_data(path, kind, values, ring, dE, dN):
    """For values on edges of `kind`, compute the pair-mask R, shadow mask and support.

    Pair (u_i, v_j) is bit i*dN + j (0-based).  For kind E, R marks pairs with
    u in S_E and v in sh(u); for kind N, pairs with v in S_N and u in sh(v).
    """
    n = path.n
    vals = [0] * n
    posl = path.pos_E if kind == "E" else path.pos_N
    for idx, w in enumerate(values):
        vals[posl[idx]] = w
    label = path.label
    R = 0
    sh = 0
    S = 0
    for idx, w in enumerate(values):
        if not w:
            continue
        S |= 1 << idx
        for pos in _shadow_positions(path, vals, posl[idx], kind):
            other = label[pos][1] - 1
            sh |= 1 << other
            if kind == "E":
                R |= 1 << (idx * dN + other)
            else:
                R |= 1 << (other * dN + idx)
    d = _Side()
    d.vals = values
    d.R = R
    d.sh = sh
    d.S = S
    d.total = sum(values)
    side = 1 if kind == "N" else 2
    if ring is not None:
        l = ring.l1 if side == 1 else ring.l2
        q = [0] * l
        for w in values:
            if w:
                q[w - 1] += 1
        d.wkey = ring.key(q, ()) if side == 1 else ring.key((), q)
    else:
        d.wkey = 0
    return d


def _grouped(datas):
    """Merge assignments with identical (R, sh, S): weights add up."""
    groups = {}
    for d in datas:
        k = (d.R, d.sh, d.S)
        g = groups.get(k)
        if g is None:
            groups[k] = {d.wkey: 1}
        else:
            g[d.wkey] = g.get(d.wkey, 0) + 1
    return groups


def _accept(pred, SE, SN, shE, shN):
    if pred in ("all", "compatible"):
        return True
    plus = (SN & ~shE) == 0
    minus = (SE & ~shN) == 0
    if pred == "shadowed_plus":
        return plus
    if pred == "shadowed_minus":
        return minus
    return plus or minus


def _allowed_values(ring, side, allowed):
    l = ring.l1 if side == 1 else ring.l2
    if allowed is None:
        return list(range(1, l + 1))
    return [a for a in allowed if 1 <= a <= l]


def enumerate_weighted(d1, d2, p, q, l1, l2, predicate="compatible",
                       allowed1=None, allowed2=None, ring=None, engine="dominance"):
    """Weighted sum of gradings on P(d1, d2) with ω(P_N)=p, ω(P_E)=q.

    allowed1 / allowed2 restrict the nonzero values on N / E edges (this is the
    same as setting the other p_{1,k} / p_{2,k} to zero).

    engine="dominance" is the fast path; engine="mask" pairs up every N and E
    assignment through bitmasks and is kept as a cross-check.
    """
    if predicate not in PREDICATES:
        raise ValueError(f"unknown predicate {predicate!r}")
    ring = ring or Ring(l1, l2)
    if predicate == "tight" and (p, q) != (0, 0) and not tight_numbers_ok(d1, d2, p, q):
        return {}
    a1 = _allowed_values(ring, 1, allowed1)
    a2 = _allowed_values(ring, 2, allowed2)
    if predicate in ("tight", "shadowed"):
        if (p, q) == (0, 0):
            predicate = "compatible"
        elif q * d1 > p * d2:
            # only S_N ⊆ sh(P_E) can hold here
            predicate = "shadowed_plus"
        elif q * d1 < p * d2:
            predicate = "shadowed_minus"
        elif engine == "dominance":
            # neither containment can hold when q d1 = p d2
            return {}
    if engine == "dominance" and predicate != "all":
        return _dominance_sum(d1, d2, p, q, a1, a2, ring, predicate)
    path = DyckPath(d1, d2)
    Ns = [_side_data(path, "N", v, ring, d1, d2) for v in _compositions(p, d2, a1)]
    Es = [_side_data(path, "E", v, ring, d1, d2) for v in _compositions(q, d1, a2)]
    if predicate == "all":
        out = {}
        for a in Ns:
            for b in Es:
                k = a.wkey + b.wkey
                out[k] = out.get(k, 0) + 1
        return out
    return _pair_sum(_grouped(Ns), _grouped(Es), predicate)


def _pair_sum(gN, gE, predicate):
    out = {}
    if predicate == "shadowed_plus":
        # S_N must sit inside sh(P_E): bucket E groups by their shadow mask
        byshE = {}
        for (RE, shE, SE), wE in gE.items():
            byshE.setdefault(shE, []).append((RE, SE, wE))
        for (RN, shN, SN), wN in gN.items():
            for shE, lst in byshE.items():
                if SN & ~shE:
                    continue
                for RE, SE, wE in lst:
                    if RE & RN:
                        continue
                    _acc(out, wN, wE)
        return out
    if predicate == "shadowed_minus":
        byshN = {}
        for (RN, shN, SN), wN in gN.items():
            byshN.setdefault(shN, []).append((RN, SN, wN))
        for (RE, shE, SE), wE in gE.items():
            for shN, lst in byshN.items():
                if SE & ~shN:
                    continue
                for RN, SN, wN in lst:
                    if RE & RN:
                        continue
                    _acc(out, wN, wE)
        return out
    for (RN, shN, SN), wN in gN.items():
        for (RE, shE, SE), wE in gE.items():
            if RE & RN:
                continue
            if not _accept(predicate, SE, SN, shE, shN):
                continue
            _acc(out, wN, wE)
    return out


def _acc(out, wN, wE):
    for kn, cn in wN.items():
        for ke, ce in wE.items():
            k = kn + ke
            v = out.get(k, 0) + cn * ce
            if v:
                out[k] = v
            else:
                del out[k]


def enumerate_all(d1, d2, l1, l2, predicate="compatible", ring=None,
                  allowed1=None, allowed2=None):
    """All (p, q) at once: returns {(p, q): poly} for gradings passing `predicate`.

    Values are capped at l1 on N edges and l2 on E edges.
    """
    ring = ring or Ring(l1, l2)
    path = DyckPath(d1, d2)
    a1 = _allowed_values(ring, 1, allowed1)
    a2 = _allowed_values(ring, 2, allowed2)
    vals1 = [0] + a1
    vals2 = [0] + a2
    Ns = {}
    for v in product(vals1, repeat=d2):
        d = _side_data(path, "N", v, ring, d1, d2)
        Ns.setdefault(d.total, []).append(d)
    Es = {}
    for v in product(vals2, repeat=d1):
        d = _side_data(path, "E", v, ring, d1, d2)
        Es.setdefault(d.total, []).append(d)
    gN = {p: _grouped(lst) for p, lst in Ns.items()}
    gE = {q: _grouped(lst) for q, lst in Es.items()}
    out = {}
    for p, GN in gN.items():
        for q, GE in gE.items():
            pred = predicate
            if pred == "tight" and (p, q) != (0, 0) and not tight_numbers_ok(d1, d2, p, q):
                continue
            if pred == "tight":
                pred = "shadowed"
            r = _pair_sum(GN, GE, pred)
            if r:
                out[(p, q)] = r
    return out


def iter_gradings(d1, d2, p, q, l1, l2, predicate="compatible"):
    """Yield every grading passing `predicate` (small cases; used by the CLI)."""
    path = DyckPath(d1, d2)
    check = {"all": lambda g: True, "compatible": is_compatible,
             "shadowed": is_shadowed, "tight": is_tight,
             "shadowed_plus": lambda g: is_compatible(g) and _plus(g),
             "shadowed_minus": lambda g: is_compatible(g) and _minus(g)}[predicate]
    for vN in _compositions(p, d2, range(1, l1 + 1)):
        for vE in _compositions(q, d1, range(1, l2 + 1)):
            g = DyckGrading(path, vE, vN)
            if check(g):
                yield g


def _plus(g):
    SE, SN, shE, shN = _shadow_sets(g)
    return SN <= shE


def _minus(g):
    SE, SN, shE, shN = _shadow_sets(g)
    return SE <= shN


def weighted_sum_naive(d1, d2, p, q, l1, l2, predicate, ring=None):
    """Reference enumeration through the grading-level predicates."""
    ring = ring or Ring(l1, l2)
    out = {}
    for g in iter_gradings(d1, d2, p, q, l1, l2, predicate):
        cp_iadd(out, g.weight(ring))
    return out


# -- dominance engine ---------------------------------------------------------
#
# Walk from an edge x of kind K (forward for E, backward for N).  Its shadow is
# the first t_x edges of the other kind met on that walk.  A pair x in S_K,
# y in S_K' is incompatible exactly when y ∈ sh(x) and x ∈ sh(y), i.e. when
# dist(x -> y) <= t_x for some y whose shadow covers x.  So with
#     δ_x = min { dist(x -> y) : y ∈ S_K', x ∈ sh(y) }
# compatibility is the componentwise inequality t < δ, which we count with a
# recursive dominance join instead of looking at every pair.

class _Walk:
    def __init__(self, path, kind):
        pos = path.pos_E if kind == "E" else path.pos_N
        step = 1 if kind == "E" else -1
        n = path.n
        self.d = len(pos)
        self.dopp = n - self.d
        self.gap = []
        self.next = []
        self.opp_after = []
        for i in range(self.d):
            seq = []
            gap = None
            nxt = i
            for t in range(1, n):
                kq, idx = path.label[(pos[i] + step * t) % n]
                if kq == kind:
                    if gap is None:
                        gap = len(seq)
                        nxt = idx - 1
                else:
                    seq.append(idx - 1)
            if gap is None:
                gap = len(seq)
            self.gap.append(gap)
            self.next.append(nxt)
            self.opp_after.append(seq)
        self.dist = [{y: c + 1 for c, y in enumerate(seq)} for seq in self.opp_after]


def _composition_array(total, nparts, allowed):
    vals = [0] + sorted(a for a in set(allowed) if a > 0)
    top = vals[-1]
    rows = np.zeros((1, 0), dtype=np.int64)
    sums = np.zeros(1, dtype=np.int64)
    for i in range(nparts):
        left = nparts - i - 1
        blocks = []
        bsums = []
        for v in vals:
            ns = sums + v
            keep = (ns <= total) & (total - ns <= top * left)
            if keep.any():
                blocks.append(np.hstack([rows[keep], np.full((int(keep.sum()), 1), v, dtype=np.int64)]))
                bsums.append(ns[keep])
        if not blocks:
            return np.zeros((0, nparts), dtype=np.int64)
        rows = np.vstack(blocks)
        sums = np.concatenate(bsums)
    return rows[sums == total] if nparts else (rows if total == 0 else np.zeros((0, 0), dtype=np.int64))


def _shadow_lengths(walk, Om):
    M, d = Om.shape
    t = np.zeros((M, d), dtype=np.int64)
    for i in range(d):
        T = Om[:, i].copy()
        C = 0
        done = T == 0
        res = np.zeros(M, dtype=np.int64)
        cur = i
        for _ in range(d):
            g = walk.gap[cur]
            stop = ~done & (C + g >= T)
            res[stop] = T[stop]
            done |= stop
            C += g
            cur = walk.next[cur]
            T = T + Om[:, cur]
        res[~done] = walk.dopp
        t[:, i] = res
    return t


def _cover_dist(walkK, walkO, OmO, sO):
    M = OmO.shape[0]
    big = walkK.dopp + 1
    delta = np.full((M, walkK.d), big, dtype=np.int64)
    for y in range(walkO.d):
        active = OmO[:, y] > 0
        if not active.any():
            continue
        for c, x in enumerate(walkO.opp_after[y]):
            m = active & (sO[:, y] > c)
            if not m.any():
                break
            dist = walkK.dist[x][y]
            col = delta[:, x]
            col[m] = np.minimum(col[m], dist)
    return delta


def _codes(Om, l):
    base = Om.shape[1] + 1
    code = np.zeros(Om.shape[0], dtype=np.int64)
    for w in range(1, l + 1):
        code += (Om == w).sum(axis=1) * base ** (w - 1)
    return code, base


def _code_key(ring, side, code, base):
    l = ring.l1 if side == 1 else ring.l2
    q = []
    for _ in range(l):
        q.append(code % base)
        code //= base
    return ring.key(q, ()) if side == 1 else ring.key((), q)


def _dominance_join(Tv, Tw, Dv, Dw):
    out = {}
    nT, dims = Tv.shape

    def leaf(ti, di):
        a, ca = np.unique(Tw[ti], return_counts=True)
        b, cb = np.unique(Dw[di], return_counts=True)
        for x, cx in zip(a.tolist(), ca.tolist()):
            for y, cy in zip(b.tolist(), cb.tolist()):
                out[(x, y)] = out.get((x, y), 0) + cx * cy

    def rec(ti, di, i):
        if i == dims or (Dv[di, i:].min(axis=0) > Tv[ti, i:].max(axis=0)).all():
            leaf(ti, di)
            return
        col = Tv[ti, i]
        dcol = Dv[di, i]
        order = np.argsort(dcol, kind="stable")
        dsorted = dcol[order]
        for a in np.unique(col).tolist():
            s = int(np.searchsorted(dsorted, a, side="right"))
            if s == len(di):
                break
            rec(ti[col == a], di[order[s:]], i + 1)

    if nT and len(Dv):
        rec(np.arange(nT), np.arange(len(Dv)), 0)
    return out


def _dominance_sum(d1, d2, p, q, a1, a2, ring, predicate):
    path = DyckPath(d1, d2)
    ON = _composition_array(p, d2, a1)
    OE = _composition_array(q, d1, a2)
    if not len(ON) or not len(OE):
        return {}
    # the side whose support must lie in the other's shadow provides t
    if predicate == "shadowed_minus":
        K, OK, OO, sideK = "E", OE, ON, 2
    else:
        K, OK, OO, sideK = "N", ON, OE, 1
    walkK = _Walk(path, K)
    walkO = _Walk(path, "N" if K == "E" else "E")
    t = _shadow_lengths(walkK, OK)
    sO = _shadow_lengths(walkO, OO)
    delta = _cover_dist(walkK, walkO, OO, sO)
    if walkK.dopp == 0:
        # no opposite edges: shadows are empty, compatibility is vacuous
        t = (OK > 0).astype(np.int64)
        delta = np.full_like(delta, 2)
    if predicate in ("shadowed_plus", "shadowed_minus"):
        # S_K ⊆ sh(P_K'): uncovered K-edges must carry value 0
        delta[delta > walkK.dopp] = 1
    cK, bK = _codes(OK, ring.l1 if sideK == 1 else ring.l2)
    cO, bO = _codes(OO, ring.l2 if sideK == 1 else ring.l1)
    joined = _dominance_join(t, cK, delta, cO)
    sideO = 3 - sideK
    out = {}
    kcache = {}
    for (x, y), c in joined.items():
        kx = kcache.get((sideK, x))
        if kx is None:
            kx = kcache[(sideK, x)] = _code_key(ring, sideK, x, bK)
        ky = kcache.get((sideO, y))
        if ky is None:
            ky = kcache[(sideO, y)] = _code_key(ring, sideO, y, bO)
        k = kx + ky
        out[k] = out.get(k, 0) + c
    return {k: c for k, c in out.items() if c}
