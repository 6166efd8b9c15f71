"""Write the definition files under fixtures/ from exact constructions.

Fixture (sweedler) takes its partial action from solve_sweedler_partial.py, so sympy is needed.
Run regenerate_goldens.py afterwards.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

from partial_gma import fileformat as ff  # noqa: E402
from partial_gma.fixtures import fixtures_dir  # noqa: E402
from partial_gma.gma_partial import decompose  # noqa: E402
from partial_gma.hopf import cyclic_group, symmetric_group_3  # noqa: E402
from partial_gma.linalg import Field  # noqa: E402
from partial_gma.partial_action import (  # noqa: E402
    PartialActionMap,
    UnitalPartialGroupAction,
    conjugation_action,
    global_trivial_action,
    group_to_hopf,
    transport_action,
)

Q = Field.rationals()


class Builder:
    def __init__(self, field: Field):
        self.field = field
        self.sections: list[ff.Section] = []
        self._ws = None

    def add(self, sec: ff.Section) -> "Builder":
        self.sections.append(sec)
        self._ws = None
        return self

    def construct(self, kind, name, *args, idempotents=None):
        sec = ff.construct_section(kind, name, *args)
        if idempotents is not None:
            sec.tensors["idempotent"] = {(k, i): v for k, e in enumerate(idempotents)
                                         for i, v in enumerate(e) if v != 0}
        return self.add(sec)

    @property
    def ws(self) -> ff.Workspace:
        if self._ws is None:
            self._ws = ff.Workspace(ff.DefinitionFile(self.field, list(self.sections)))
        return self._ws

    def action(self, name, hopf, algebra, p: PartialActionMap, idempotent=None):
        sec = ff.partial_action_section(name, hopf, algebra, p)
        if idempotent is not None:
            sec.tensors["idempotent"] = {(i,): v for i, v in enumerate(idempotent) if v != 0}
        return self.add(sec)

    def text(self) -> str:
        text = ff.serialize(ff.DefinitionFile(self.field, self.sections))
        ff.load(text)  # every fixture must parse and build
        return text


def _group(b: Builder, name, g):
    b.add(ff.group_section(name, g))
    b.construct("hopf", "H" + name, "group_algebra", name)


def _onto_blocks(b: Builder, p: PartialActionMap, gma: str) -> PartialActionMap:
    """Move an action on an algebra onto the total algebra of its Peirce datum."""
    from partial_gma.gma import peirce
    sec = b.ws.df.get(gma)
    alg = b.ws.algebra(sec.attrs["construct"][1])
    f = b.field
    count = 1 + max(k[0] for k in sec.tensors["idempotent"])
    es = []
    for k in range(count):
        e = f.zeros(alg.dim)
        for (kk, i), v in sec.tensors["idempotent"].items():
            if kk == k:
                e[i] = v
        es.append(e)
    pe = peirce(alg, es)
    return transport_action(p, pe.iso, b.ws[gma].total)


def _units(f, n, *idx):
    out = []
    for i in idx:
        e = f.zeros(n)
        for j in (i if isinstance(i, tuple) else (i,)):
            e[j] = f.one
        out.append(e)
    return out


def eps_trivial() -> Builder:
    b = Builder(Q)
    _group(b, "Z2", cyclic_group(2))
    _group(b, "Z3", cyclic_group(3))
    _group(b, "S3", symmetric_group_3())
    b.construct("algebra", "K2", "diagonal", 2)
    b.construct("algebra", "K3", "diagonal", 3)
    b.construct("algebra", "M2", "endomorphism", 2)
    b.construct("gma", "G", "peirce", "M2", idempotents=_units(Q, 4, 0, 3))
    ws = b.ws
    b.action("E2", "HZ2", "K2", global_trivial_action(ws["HZ2"], ws["K2"]))
    b.action("E3", "HZ3", "K3", global_trivial_action(ws["HZ3"], ws["K3"]))
    b.action("ES3", "HS3", "M2", global_trivial_action(ws["HS3"], ws["M2"]))
    b.action("E2G", "HZ2", "G", global_trivial_action(ws["HZ2"], ws.algebra("G")))
    b.action("ES3G", "HS3", "G", global_trivial_action(ws["HS3"], ws.algebra("G")))
    b.construct("block_data", "B2", "decompose", "E2G")
    b.construct("block_data", "BS3", "decompose", "ES3G")
    b.construct("group_datum", "X2", "from_block_data", "B2")
    return b


def unit_zero() -> Builder:
    b = Builder(Q)
    _group(b, "Z2", cyclic_group(2))
    b.construct("algebra", "K", "diagonal", 1)
    ws = b.ws
    G, K = ws["Z2"], ws["K"]
    u = UnitalPartialGroupAction(G, K, Q.array([[1], [0]]), (Q.identity(1), Q.zeros((1, 0))))
    b.add(ff.group_action_section("U", "Z2", "K", u))
    b.action("P", "HZ2", "K", group_to_hopf(u))
    return b


def z2_k2() -> Builder:
    b = Builder(Q)
    _group(b, "Z2", cyclic_group(2))
    b.construct("algebra", "K2", "diagonal", 2)
    ws = b.ws
    u = UnitalPartialGroupAction(ws["Z2"], ws["K2"], Q.array([[1, 1], [1, 0]]),
                                 (Q.identity(2), Q.array([[1], [0]])))
    b.add(ff.group_action_section("U", "Z2", "K2", u))
    b.action("P", "HZ2", "K2", group_to_hopf(u))
    return b


def conjugation() -> Builder:
    b = Builder(Q)
    _group(b, "Z2", cyclic_group(2))
    b.construct("algebra", "M2", "endomorphism", 2)
    b.construct("gma", "G", "peirce", "M2", idempotents=_units(Q, 4, 0, 3))
    p = conjugation_action(b.ws["HZ2"], [Q.identity(2), Q.array([[1, 0], [0, -1]])])
    b.action("P", "HZ2", "G", _onto_blocks(b, p, "G"))
    b.construct("block_data", "B", "decompose", "P")
    b.construct("group_datum", "X", "from_block_data", "B")
    b.construct("morita_context", "C", "from_gma", "G")
    return b


def swap() -> Builder:
    b = Builder(Q)
    _group(b, "Z2", cyclic_group(2))
    b.construct("algebra", "M2", "endomorphism", 2)
    b.construct("gma", "G", "peirce", "M2", idempotents=_units(Q, 4, 0, 3))
    p = conjugation_action(b.ws["HZ2"], [Q.identity(2), Q.array([[0, 1], [1, 0]])])
    b.action("P", "HZ2", "G", _onto_blocks(b, p, "G"))
    return b


def sweedler() -> Builder:
    import solve_sweedler_partial as solver
    b = Builder(Q)
    b.construct("hopf", "H4", "sweedler_h4")
    b.construct("algebra", "K2", "diagonal", 2)
    ws = b.ws
    b.action("E", "H4", "K2", global_trivial_action(ws["H4"], ws["K2"]))
    b.action("P", "H4", "K2", solver.solved_action())
    return b


def z3_m3() -> Builder:
    f = Field.prime(7)
    b = Builder(f)
    _group(b, "Z3", cyclic_group(3))
    b.construct("algebra", "M3", "endomorphism", 3)
    b.construct("gma", "G", "peirce", "M3", idempotents=_units(f, 9, 0, 4, 8))
    T = f.array([[1, 0, 0], [0, 2, 0], [0, 0, 4]])  # 2 has order 3 mod 7
    p = conjugation_action(b.ws["HZ3"], [f.identity(3), T, f.clean(T.dot(T))])
    b.action("P", "HZ3", "G", _onto_blocks(b, p, "G"))
    b.construct("block_data", "B", "decompose", "P")
    b.construct("group_datum", "X", "from_block_data", "B")
    return b


def k3_partial() -> Builder:
    b = Builder(Q)
    _group(b, "Z2", cyclic_group(2))
    b.construct("algebra", "K3", "diagonal", 3)
    b.construct("gma", "G", "peirce", "K3", idempotents=[Q.array([1, 1, 1])])
    ws = b.ws
    u = UnitalPartialGroupAction(ws["Z2"], ws["K3"], Q.array([[1, 1, 1], [1, 1, 0]]),
                                 (Q.identity(3), Q.array([[0, 1], [1, 0], [0, 0]])))
    b.add(ff.group_action_section("U", "Z2", "K3", u))
    p = group_to_hopf(u)
    b.action("PK", "HZ2", "K3", p)
    b.action("P", "HZ2", "G", _onto_blocks(b, p, "G"))
    b.construct("block_data", "B", "decompose", "P")
    b.construct("group_datum", "X", "from_block_data", "B")
    return b


def z3_k2() -> Builder:
    b = Builder(Q)
    _group(b, "Z3", cyclic_group(3))
    b.construct("algebra", "K2", "diagonal", 2)
    b.construct("gma", "G", "peirce", "K2", idempotents=[Q.array([1, 1])])
    ws = b.ws
    # the cyclic shift e1 -> e2 -> e3 of k^3 restricted to k e1 + k e2: 1_g = e2, 1_{g^2} = e1
    u = UnitalPartialGroupAction(ws["Z3"], ws["K2"], Q.array([[1, 1], [0, 1], [1, 0]]),
                                 (Q.identity(2), Q.array([[0], [1]]), Q.array([[1], [0]])))
    b.add(ff.group_action_section("U", "Z3", "K2", u))
    b.action("P", "HZ3", "G", _onto_blocks(b, group_to_hopf(u), "G"))
    b.construct("block_data", "B", "decompose", "P")
    return b


def _sign_context(b: Builder):
    _group(b, "Z2", cyclic_group(2))
    b.construct("algebra", "K", "diagonal", 1)
    ws = b.ws
    one = Q.array([[[1]]])
    from partial_gma.morita import MoritaContextData
    c = MoritaContextData(ws["K"], ws["K"], one, one, one, one, one, one)
    b.add(ff.morita_section("C", "K", "K", c))
    H, R = b.ws["HZ2"], b.ws.algebra("C")
    t = Q.zeros((2, 4, 4))
    for a, s in enumerate((1, -1, -1, 1)):
        t[0, a, a] = 1
        t[1, a, a] = s
    b.action("PR", "HZ2", "C", PartialActionMap(H, R, "left", t))


def morita_sign() -> Builder:
    b = Builder(Q)
    _sign_context(b)
    b.construct("block_data", "B", "decompose", "PR")
    return b


def morita_flipped() -> Builder:
    b = Builder(Q)
    _sign_context(b)
    ws = b.ws
    bd = decompose(ws.blocked("C"), ws["PR"])
    left = dict(bd.left)
    right = dict(bd.right)
    # g acts on M by +1 from both sides; (a) and (b) still hold, multiplicativity does not
    m = left[(0, 1)].copy()
    m[1] = Q.clean(-m[1])
    left[(0, 1)] = m
    m = right[(0, 1)].copy()
    m[:, 1] = Q.clean(-m[:, 1])
    right[(0, 1)] = m
    flipped = bd.with_modules(left=left, right=right)
    b.action("PA", "HZ2", "K", bd.diag_actions[0])
    b.action("PB", "HZ2", "K", bd.diag_actions[1])
    b.add(ff.block_data_section("BF", "C", "HZ2", ("PA", "PB"), flipped))
    return b


def morita_peirce() -> Builder:
    b = Builder(Q)
    _group(b, "Z2", cyclic_group(2))
    b.construct("algebra", "M3", "endomorphism", 3)
    b.construct("gma", "G", "peirce", "M3", idempotents=_units(Q, 9, (0, 4), 8))
    b.construct("morita_context", "C", "from_gma", "G")
    p = conjugation_action(b.ws["HZ2"], [Q.identity(3), Q.array([[1, 0, 0], [0, -1, 0], [0, 0, 1]])])
    b.action("P", "HZ2", "G", _onto_blocks(b, p, "G"))
    b.construct("block_data", "B", "decompose", "P")
    return b


def _ring_base(b: Builder):
    _group(b, "Z2", cyclic_group(2))
    b.construct("algebra", "K2", "diagonal", 2)
    ws = b.ws
    u = UnitalPartialGroupAction(ws["Z2"], ws["K2"], Q.array([[1, 1], [1, 0]]),
                                 (Q.identity(2), Q.array([[1], [0]])))
    return group_to_hopf(u)


def ring_accept() -> Builder:
    b = Builder(Q)
    p = _ring_base(b)
    b.action("P", "HZ2", "K2", p, idempotent=Q.array([1, 0]))
    b.construct("algebra", "M2", "endomorphism", 2)
    b.action("E", "HZ2", "M2", global_trivial_action(b.ws["HZ2"], b.ws["M2"]), idempotent=Q.array([1, 0, 0, 0]))
    return b


def ring_reject() -> Builder:
    b = Builder(Q)
    _group(b, "Z2", cyclic_group(2))
    b.construct("algebra", "K3", "diagonal", 3)
    ws = b.ws
    # swap of coordinates 2 and 3 on D_g = 0 + k^2; it moves e = (1, 1, 0)
    u = UnitalPartialGroupAction(ws["Z2"], ws["K3"], Q.array([[1, 1, 1], [0, 1, 1]]),
                                 (Q.identity(3), Q.array([[0, 0], [0, 1], [1, 0]])))
    b.action("P", "HZ2", "K3", group_to_hopf(u), idempotent=Q.array([1, 1, 0]))
    return b


BUILDERS = {
    "eps_trivial": eps_trivial, "unit_zero": unit_zero, "z2_k2": z2_k2, "conjugation": conjugation,
    "swap": swap, "sweedler": sweedler, "z3_m3": z3_m3, "k3_partial": k3_partial,
    "z3_k2": z3_k2,
    "morita_sign": morita_sign, "morita_flipped": morita_flipped, "morita_peirce": morita_peirce,
    "ring_accept": ring_accept, "ring_reject": ring_reject,
}


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("names", nargs="*", help="fixtures to write (default: all)")
    ap.add_argument("--out", type=Path, default=fixtures_dir())
    args = ap.parse_args(argv)
    args.out.mkdir(parents=True, exist_ok=True)
    for name in args.names or BUILDERS:
        text = BUILDERS[name]().text()
        (args.out / f"{name}.def").write_text(text, encoding="utf-8")
        print(f"wrote {name}.def")
    return 0


if __name__ == "__main__":
    sys.exit(main())
