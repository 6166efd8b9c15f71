"""Exact solve of the left partial action axioms for Sweedler's algebra H4 acting on k x k.

The unknowns are the structure constants of h . a for h in {g, x, gx}; the unit acts as the
identity. Every axiom is expanded into polynomial equations over Q and handed to sympy.
The script prints every solution family, then picks one genuinely partial member
(g . 1 != 1 and x acting nontrivially) with free parameters set to 1 and re-checks it
with the package's own checker.
"""

from __future__ import annotations

import argparse
import itertools
import json

import sympy as sp

from partial_gma.algebra import diagonal_algebra
from partial_gma.hopf import sweedler_h4
from partial_gma.linalg import Field
from partial_gma.partial_action import PartialActionMap, check_left_partial_action

DA = 2


def _unknowns(dh: int):
    t = {}
    for h, a, c in itertools.product(range(dh), range(DA), range(DA)):
        t[h, a, c] = sp.Integer(int(a == c)) if h == 0 else sp.Symbol(f"t_{h}_{a}_{c}")
    return t


def axiom_equations(hopf, alg):
    dh = hopf.dim
    t = _unknowns(dh)
    D, M, mA = hopf.comult, hopf.mult, alg.mult

    def act(hv, av):
        return [sp.expand(sum(hv[h] * av[a] * t[h, a, c] for h in range(dh) for a in range(DA) if hv[h] and av[a]))
                for c in range(DA)]

    def mul(x, y):
        return [sp.expand(sum(x[i] * y[j] * int(mA[i, j, k]) for i in range(DA) for j in range(DA)))
                for k in range(DA)]

    def e(n, i):
        return [int(i == j) for j in range(n)]

    def hmul(p, k):
        return [int(M[p, k, l]) for l in range(dh)]

    one = [1] * DA
    eqs = []

    def add(lhs, rhs):
        eqs.extend(sp.expand(l - r) for l, r in zip(lhs, rhs))

    def coproduct_sum(h, term):
        out = [0] * DA
        for p, q in itertools.product(range(dh), repeat=2):
            if D[h, p, q] != 0:
                out = [o + int(D[h, p, q]) * z for o, z in zip(out, term(p, q))]
        return out

    for h, a, b in itertools.product(range(dh), range(DA), range(DA)):
        add(act(e(dh, h), mul(e(DA, a), e(DA, b))),
            coproduct_sum(h, lambda p, q: mul(act(e(dh, p), e(DA, a)), act(e(dh, q), e(DA, b)))))
    for h, k, a in itertools.product(range(dh), range(dh), range(DA)):
        lhs = act(e(dh, h), act(e(dh, k), e(DA, a)))
        add(lhs, coproduct_sum(h, lambda p, q: mul(act(e(dh, p), one), act(hmul(q, k), e(DA, a)))))
        add(lhs, coproduct_sum(h, lambda p, q: mul(act(hmul(p, k), e(DA, a)), act(e(dh, q), one))))
    return t, [q for q in eqs if q != 0]


def solve(hopf, alg):
    t, eqs = axiom_equations(hopf, alg)
    syms = sorted({s for q in eqs for s in q.free_symbols}, key=str)
    return t, syms, sp.solve(eqs, syms, dict=True)


def pick(t, syms, solutions, field, hopf, alg):
    """First solution family with g . 1 != 1 and a nonzero x-component, free symbols set to 1."""
    for sol in solutions:
        free = {s: 1 for s in syms if s not in sol}
        vals = {k: sp.nsimplify(v.subs(sol).subs(free)) if isinstance(v, sp.Basic) else v for k, v in t.items()}
        tensor = field.zeros((hopf.dim, DA, DA))
        for (h, a, c), v in vals.items():
            r = sp.Rational(v)
            tensor[h, a, c] = field.scalar(int(r.p), int(r.q))
        g_one = tensor[1].sum(axis=0)
        if all(x == 1 for x in g_one):
            continue
        if not any(x != 0 for x in tensor[2].reshape(-1)):
            continue
        p = PartialActionMap(hopf, alg, "left", tensor)
        if check_left_partial_action(p, deep=True).passed:
            return sol, p
    raise RuntimeError("no genuinely partial solution found")


def solved_action() -> PartialActionMap:
    """The chosen genuinely partial action, recomputed from scratch."""
    field = Field.rationals()
    hopf, alg = sweedler_h4(field), diagonal_algebra(DA, field)
    t, syms, sols = solve(hopf, alg)
    return pick(t, syms, sols, field, hopf, alg)[1]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--json", action="store_true", help="print the chosen action tensor as JSON")
    args = ap.parse_args(argv)
    field = Field.rationals()
    hopf, alg = sweedler_h4(field), diagonal_algebra(DA, field)
    t, syms, sols = solve(hopf, alg)
    for s in sols:
        print({str(k): str(v) for k, v in s.items()})
    chosen, p = pick(t, syms, sols, field, hopf, alg)
    print("chosen:", {str(k): str(v) for k, v in chosen.items()})
    if args.json:
        print(json.dumps([[[str(x) for x in row] for row in blk] for blk in p.tensor]))
    return p


if __name__ == "__main__":
    main()
