#!/usr/bin/env python3
"""Independent brute-force reference values for the Rust test suite.

Everything here is computed from scratch with `fractions.Fraction` and a
different construction from the library:

* relation spaces come from explicit substitution `C[r(u1, .., ua)]` over all
  contexts `C` and monomial substitutions `u_i` (no degree-by-degree grafting);
* the Lie relation uses the cyclic form of the Jacobi identity;
* monomials are nested tuples, ordered by Python's `repr`, unrelated to the
  library's canonical order.

Run `python3 tools/oracle/brute_force.py` and compare with the numbers frozen
in `crates/core/tests/oracle_values.rs`.
"""

from fractions import Fraction
from itertools import permutations, product
import sys

# A monomial is either an int (1-based variable) or (op, left, right).


def trees(vars_):
    """All planar binary trees with the given leaves (single op 0), any order."""
    vars_ = tuple(vars_)
    if len(vars_) == 1:
        return [vars_[0]]
    out = []
    for perm in permutations(vars_):
        out.extend(_shapes(perm))
    return out


def _shapes(seq):
    if len(seq) == 1:
        return [seq[0]]
    out = []
    for i in range(1, len(seq)):
        for l in _shapes(seq[:i]):
            for r in _shapes(seq[i:]):
                out.append((0, l, r))
    return out


def labelled_trees(vars_, k):
    """Trees with ops in range(k)."""
    base = trees(vars_)
    out = []
    for t in base:
        out.extend(_relabel_ops(t, k))
    return out


def _relabel_ops(t, k):
    if isinstance(t, int):
        return [t]
    res = []
    for l in _relabel_ops(t[1], k):
        for r in _relabel_ops(t[2], k):
            for op in range(k):
                res.append((op, l, r))
    return res


def subst(t, mapping):
    if isinstance(t, int):
        return mapping[t]
    return (t[0], subst(t[1], mapping), subst(t[2], mapping))


def leaves(t):
    if isinstance(t, int):
        return [t]
    return leaves(t[1]) + leaves(t[2])


def m(a, b, op=0):
    return (op, a, b)


def poly(*terms):
    out = {}
    for c, t in terms:
        out[t] = out.get(t, 0) + Fraction(c)
    return {t: c for t, c in out.items() if c != 0}


x1, x2, x3 = 1, 2, 3

BUILTINS = {
    "mag": [],
    # commutative and associative
    "com": [
        poly((1, m(x1, x2)), (-1, m(x2, x1))),
        poly((1, m(m(x1, x2), x3)), (-1, m(x1, m(x2, x3)))),
    ],
    "lie": [
        poly((1, m(x1, x2)), (1, m(x2, x1))),
        # cyclic Jacobi
        poly((1, m(m(x1, x2), x3)), (1, m(m(x2, x3), x1)), (1, m(m(x3, x1), x2))),
    ],
    "as": [poly((1, m(m(x1, x2), x3)), (-1, m(x1, m(x2, x3))))],
    "nov": [
        poly(
            (1, m(m(x1, x2), x3)),
            (-1, m(x1, m(x2, x3))),
            (-1, m(m(x2, x1), x3)),
            (1, m(x2, m(x1, x3))),
        ),
        poly((1, m(m(x1, x2), x3)), (-1, m(m(x1, x3), x2))),
    ],
}


def arity(p):
    t = next(iter(p))
    return len(leaves(t))


HOLE = 0


def contexts(vars_):
    """Trees over vars_ plus one HOLE leaf."""
    return trees(tuple(vars_) + (HOLE,))


def ordered_partitions(s, a):
    s = list(s)
    for assign in product(range(a), repeat=len(s)):
        blocks = [[] for _ in range(a)]
        for v, b in zip(s, assign):
            blocks[b].append(v)
        if all(blocks):
            yield blocks


def from_subsets(n, size):
    from itertools import combinations

    return combinations(range(1, n + 1), size)


def consequences(rels, n, k=1):
    """All C[r(u1..ua)] in multilinear degree n (op alphabet size k)."""
    out = []
    for r in rels:
        a = arity(r)
        if a > n:
            continue
        for s in range(a, n + 1):
            for S in from_subsets(n, s):
                rest = [v for v in range(1, n + 1) if v not in S]
                ctxs = labelled_trees(tuple(rest) + (HOLE,), k)
                for blocks in ordered_partitions(S, a):
                    choices = [labelled_trees(b, k) for b in blocks]
                    for us in product(*choices):
                        mapping = {i + 1: us[i] for i in range(a)}
                        inner = {}
                        for t, c in r.items():
                            tt = subst(t, mapping)
                            inner[tt] = inner.get(tt, 0) + c
                        for ctx in ctxs:
                            vec = {}
                            for t, c in inner.items():
                                full = subst(ctx, {**{v: v for v in rest}, HOLE: t})
                                vec[full] = vec.get(full, 0) + c
                            vec = {t: c for t, c in vec.items() if c != 0}
                            if vec:
                                out.append(vec)
    return out


def rref(rows, cols):
    """rows: list of dict col->Fraction; cols: ordered list of column keys.
    Returns list of (pivot, row) fully reduced."""
    order = {c: i for i, c in enumerate(cols)}
    basis = []  # list of (pivot, row)
    for r in rows:
        v = dict(r)
        for p, b in basis:
            if p in v:
                f = v[p]
                for c, x in b.items():
                    v[c] = v.get(c, 0) - f * x
                v = {c: x for c, x in v.items() if x != 0}
        if not v:
            continue
        p = min(v, key=lambda c: order[c])
        f = v[p]
        v = {c: x / f for c, x in v.items()}
        new = []
        for q, b in basis:
            if p in b:
                g = b[p]
                for c, x in v.items():
                    b[c] = b.get(c, 0) - g * x
                b = {c: x for c, x in b.items() if x != 0}
            new.append((q, b))
        new.append((p, v))
        basis = new
    return basis


class Component:
    def __init__(self, rels, n, k=1):
        self.cols = sorted(labelled_trees(range(1, n + 1), k), key=repr)
        self.basis = rref(consequences(rels, n, k), self.cols)
        pivots = {p for p, _ in self.basis}
        self.normal = [c for c in self.cols if c not in pivots]
        self.index = {c: i for i, c in enumerate(self.normal)}
        self.dim = len(self.normal)

    def nf(self, vec):
        v = dict(vec)
        for p, b in self.basis:
            if p in v:
                f = v[p]
                for c, x in b.items():
                    v[c] = v.get(c, 0) - f * x
        return {self.index[c]: x for c, x in v.items() if x != 0}


PREC, SUCC = 0, 1


def strip(t):
    if isinstance(t, int):
        return t
    return (0, strip(t[1]), strip(t[2]))


def twist(t):
    if isinstance(t, int):
        return t
    l, r = twist(t[1]), twist(t[2])
    return (0, r, l) if t[0] == SUCC else (0, l, r)


def phi_columns(cp, cq, n):
    cols = sorted(labelled_trees(range(1, n + 1), 2), key=repr)
    out = {}
    for t in cols:
        a = cp.nf({strip(t): Fraction(1)})
        b = cq.nf({twist(t): Fraction(1)})
        col = {}
        for i, x in a.items():
            for j, y in b.items():
                col[i * cq.dim + j] = x * y
        out[t] = col
    return cols, out


def kernel(cols, colvecs):
    """Kernel of the linear map given column-wise, as rref basis over cols."""
    # augment: rows indexed by source columns, entries = image ++ identity
    rows = []
    for t in cols:
        r = {("img", i): x for i, x in colvecs[t].items()}
        r[("src", repr(t))] = Fraction(1)
        rows.append(r)
    keys = sorted({k for r in rows for k in r if k[0] == "img"}) + [
        ("src", repr(t)) for t in cols
    ]
    basis = rref(rows, keys)
    ker = [
        {k[1]: x for k, x in b.items()}
        for p, b in basis
        if p[0] == "src"
    ]
    src_cols = [repr(t) for t in cols]
    return rref(ker, src_cols)


def rank_of(cols, colvecs):
    return len(cols) - len(kernel(cols, colvecs))


def same_space(a, b, cols):
    ra = sorted((p, sorted(r.items())) for p, r in rref([r for _, r in a], cols))
    rb = sorted((p, sorted(r.items())) for p, r in rref([r for _, r in b], cols))
    return ra == rb


def expand_orders(t, lam):
    """Leibniz expansion of a pair monomial: dict (orders tuple) -> coeff.
    Leaf orders are indexed by variable (1-based in tree, 0-based in tuple)."""
    n = len(leaves(t))

    def ev(u):
        if isinstance(u, int):
            o = [0] * n
            return {tuple(o): Fraction(1)}
        a, b = ev(u[1]), ev(u[2])
        if u[0] == PREC:
            b = D(u[2], b)
        else:
            a = D(u[1], a)
        out = {}
        for oa, ca in a.items():
            for ob, cb in b.items():
                o = tuple(x + y for x, y in zip(oa, ob))
                out[o] = out.get(o, 0) + ca * cb
        return {o: c for o, c in out.items() if c != 0}

    def D(u, e):
        lv = leaves(u)
        internal = len(lv) - 1
        out = {}
        for o, c in e.items():
            for v in lv:
                oo = list(o)
                oo[v - 1] += 1
                oo = tuple(oo)
                out[oo] = out.get(oo, 0) + c
            if lam != 0 and internal:
                out[o] = out.get(o, 0) + lam * internal * c
        return {o: c for o, c in out.items() if c != 0}

    return ev(t)


def oracle_columns(cp, n, lam):
    cols = sorted(labelled_trees(range(1, n + 1), 2), key=repr)
    out = {}
    for t in cols:
        col = {}
        for o, c in expand_orders(t, lam).items():
            for i, x in cp.nf({strip(t): Fraction(1)}).items():
                key = (o, i)
                col[key] = col.get(key, 0) + c * x
        # keys must be hashable & sortable
        out[t] = {k: v for k, v in col.items() if v != 0}
    return cols, out


def kernel_generic(cols, colvecs):
    rows = []
    for t in cols:
        r = {("img", repr(k)): x for k, x in colvecs[t].items()}
        r[("src", repr(t))] = Fraction(1)
        rows.append(r)
    keys = sorted({k for r in rows for k in r if k[0] == "img"}) + [
        ("src", repr(t)) for t in cols
    ]
    basis = rref(rows, keys)
    ker = [{k[1]: x for k, x in b.items()} for p, b in basis if p[0] == "src"]
    return rref(ker, [repr(t) for t in cols])


def main():
    out = {}
    comps = {}
    for name, rels in BUILTINS.items():
        for n in (1, 2, 3):
            comps[(name, n)] = Component(rels, n)
            out[f"dim {name}({n})"] = comps[(name, n)].dim
    for name in ("as", "nov", "com", "lie"):
        comps[(name, 4)] = Component(BUILTINS[name], 4)
        out[f"dim {name}(4)"] = comps[(name, 4)].dim
    out["relation dim nov(3)"] = 12 - comps[("nov", 3)].dim

    for name in BUILTINS:
        for n in (2, 3):
            cols, cv = phi_columns(comps[(name, n)], comps[("nov", n)], n)
            ker = kernel(cols, cv)
            out[f"white {name} nov n={n} kernel"] = len(ker)
            out[f"white {name} nov n={n} image"] = len(cols) - len(ker)
            # oracle
            for lam in (Fraction(0), Fraction(1), Fraction(-2), Fraction(7, 3)):
                ocols, ocv = oracle_columns(comps[(name, n)], n, lam)
                oker = kernel_generic(ocols, ocv)
                same = same_space(ker, oker, [repr(t) for t in cols])
                out[f"oracle {name} n={n} lambda={lam} dim"] = len(oker)
                out[f"oracle {name} n={n} lambda={lam} equals white"] = same

    # mag x mag
    cols, cv = phi_columns(comps[("mag", 3)], comps[("mag", 3)], 3)
    ker = kernel(cols, cv)
    out["white mag mag n=3 kernel"] = len(ker)

    if "--n4" in sys.argv:
        cols, cv = phi_columns(comps[("as", 4)], comps[("nov", 4)], 4)
        ker = kernel(cols, cv)
        out["white as nov n=4 kernel"] = len(ker)

    # middle associativity alone vs with total associativity: S3 closure dims in the pair alphabet
    P = lambda a, b: (PREC, a, b)
    S = lambda a, b: (SUCC, a, b)
    middle_assoc = poly((1, P(S(x1, x2), x3)), (-1, S(x1, P(x2, x3))))
    total_assoc = poly(
        (1, P(P(x1, x2), x3)),
        (-1, P(x1, S(x2, x3))),
        (1, S(P(x1, x2), x3)),
        (-1, S(x1, S(x2, x3))),
    )

    def closure(gens):
        rows = []
        for g in gens:
            for perm in permutations((1, 2, 3)):
                mp = {i + 1: perm[i] for i in range(3)}
                rows.append({repr(subst(t, mp)): c for t, c in g.items()})
        cols = [repr(t) for t in sorted(labelled_trees((1, 2, 3), 2), key=repr)]
        return rref(rows, cols)

    out["S3 closure middle_assoc"] = len(closure([middle_assoc]))
    out["S3 closure middle_assoc+total_assoc"] = len(closure([middle_assoc, total_assoc]))

    # H: right commutativity instance a=1,b=2,c=3
    from math import comb

    def hm(a, b):
        return comb(a + b - 1, a), a + b - 1

    c1, i1 = hm(1, 2)
    c2, i2 = hm(i1, 3)
    d1, j1 = hm(1, 3)
    d2, j2 = hm(j1, 2)
    out["H (x1 x2) x3 a=1,b=2,c=3"] = (c1 * c2, i2)
    out["H (x1 x3) x2 a=1,b=2,c=3"] = (d1 * d2, j2)

    for k, v in out.items():
        print(f"{k}: {v}")


if __name__ == "__main__":
    main()
