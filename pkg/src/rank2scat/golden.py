# Reference wall functions in closed form, and their JSON snapshots.
#
# Each reference is a list of rays {"dir": [a, b], "terms": [...], "complete":
# bool}.  A term is {"k": j, "q1": [...], "q2": [...], "n": "c"}: the
# coefficient c of p_1^q1 p_2^q2 z^j with z = x^a y^b.  "complete" marks a ray
# whose whole wall function is listed; otherwise only the listed monomials are
# pinned.

import json
from importlib import resources
from math import comb
from pathlib import Path

from .poly import Ring

DATA = "data"


def _term(j, q1, q2, n):
    return {"k": j, "q1": list(q1), "q2": list(q2), "n": str(n)}


def g2_reference():
    """All rays of Scat(P1, P2) for (l1, l2) = (3, 1)."""
    rays = [
        ((3, 1), [_term(1, (0, 0, 1), (1,), 1)]),
        ((2, 1), [_term(1, (0, 1, 0), (1,), 1),
                  _term(2, (1, 0, 1), (2,), 1),
                  _term(3, (0, 0, 2), (3,), 1)]),
        ((3, 2), [_term(1, (0, 0, 1), (2,), 1)]),
        ((1, 1), [_term(1, (1, 0, 0), (1,), 1),
                  _term(2, (0, 1, 0), (2,), 1),
                  _term(3, (0, 0, 1), (3,), 1)]),
    ]
    return {"l": [3, 1], "exhaustive": True,
            "rays": [{"dir": list(w), "terms": t, "complete": True} for w, t in rays]}


def affine22_reference(kmax=3):
    """Ray (1, 1) for (l1, l2) = (2, 2), summation index k <= kmax."""
    terms = []
    for k in range(kmax + 1):
        terms.append(_term(2 * k, (0, k), (0, k), k + 1))
        terms.append(_term(2 * k + 1, (1, k), (1, k), comb(k + 3, 3) + comb(k + 2, 3)))
        terms.append(_term(2 * k + 2, (0, k + 1), (2, k), comb(k + 3, 3)))
        terms.append(_term(2 * k + 2, (2, k), (0, k + 1), comb(k + 3, 3)))
    terms = [t for t in terms if t["k"] > 0]
    return {"l": [2, 2], "exhaustive": False, "kmax": kmax,
            "rays": [{"dir": [1, 1], "terms": _sorted(terms), "complete": False}]}


def affine41_reference(kmax=3):
    """Ray (2, 1) for (l1, l2) = (4, 1), summation index k <= kmax."""
    terms = []
    for k in range(kmax + 1):
        terms.append(_term(2 * k, (0, 0, 0, k), (2 * k,), 2 * k + 1))
        terms.append(_term(2 * k + 1, (0, 1, 0, k), (2 * k + 1,), k + 1))
        terms.append(_term(2 * k + 3, (2, 0, 0, k + 1), (2 * k + 3,), comb(k + 3, 3)))
        terms.append(_term(2 * k + 2, (1, 0, 1, k), (2 * k + 2,), comb(k + 3, 3) + comb(k + 2, 3)))
        terms.append(_term(2 * k + 3, (0, 0, 2, k), (2 * k + 3,), comb(k + 3, 3)))
    terms = [t for t in terms if t["k"] > 0]
    return {"l": [4, 1], "exhaustive": False, "kmax": kmax,
            "rays": [{"dir": [2, 1], "terms": _sorted(terms), "complete": False}]}


def _sorted(terms):
    return sorted(terms, key=lambda t: (t["k"], t["q1"], t["q2"]))


REFERENCES = {
    "g2": g2_reference,
    "affine22": affine22_reference,
    "affine41": affine41_reference,
}


def dumps(obj):
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def data_dir():
    return Path(str(resources.files(__package__).joinpath(DATA)))


def load(name):
    return json.loads(resources.files(__package__).joinpath(DATA, f"{name}.json").read_text())


def regenerate(target=None):
    """Rewrite the JSON snapshots from the closed forms; returns written paths."""
    target = Path(target) if target else data_dir()
    target.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, fn in REFERENCES.items():
        p = target / f"{name}.json"
        p.write_text(dumps(fn()))
        paths.append(p)
    return paths


def required_order(ref):
    """Smallest truncation order that keeps every listed term."""
    need = 0
    for ray in ref["rays"]:
        a, b = ray["dir"]
        for t in ray["terms"]:
            need = max(need, t["k"] * (a + b))
    return need


def compare(D, ref):
    """Mismatches between a completed diagram and a reference, within D's truncation.

    Returns a list of strings; empty means agreement.
    """
    ring = Ring(*ref["l"])
    if (D.l1, D.l2) != (ring.l1, ring.l2):
        return [f"reference is for l = {tuple(ref['l'])}, diagram has {(D.l1, D.l2)}"]
    out = []
    listed = set()
    for ray in ref["rays"]:
        w = tuple(ray["dir"])
        listed.add(w)
        jmax = D.trunc.jmax(w)
        f = D.ray(*w)
        want = {}
        for t in ray["terms"]:
            if t["k"] > jmax:
                continue
            key = ring.key(t["q1"], t["q2"])
            want.setdefault(t["k"], {})[key] = int(t["n"])
        for j, terms in sorted(want.items()):
            got = f.get(j, {})
            for key, c in sorted(terms.items()):
                if got.get(key, 0) != c:
                    out.append(f"ray {w} z^{j} {ring.to_str({key: 1})}: expected {c}, got {got.get(key, 0)}")
        if ray.get("complete"):
            for j, c in sorted(f.items()):
                if j == 0:
                    continue
                extra = {k: v for k, v in c.items() if k not in want.get(j, {})}
                if extra:
                    out.append(f"ray {w} z^{j}: unexpected {ring.to_str(extra)}")
    if ref.get("exhaustive"):
        for w in D.nontrivial_rays():
            if w not in listed:
                out.append(f"unexpected ray {w}")
    return out


__all__ = ["g2_reference", "affine22_reference", "affine41_reference", "REFERENCES",
           "load", "regenerate", "required_order", "compare", "dumps"]
