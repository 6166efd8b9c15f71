"""Finite-dimensional Hopf algebras with bijective antipode, groups, and group algebras."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .algebra import FinDimAlgebra, check_algebra, opposite
from .linalg import DimensionMismatchError, Field, einsum, equal, inverse
from .report import Report


@dataclass(frozen=True, eq=False)
class GroupTable:
    """Finite group; element 0 is the identity, cayley[g][h] is the index of gh."""

    cayley: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        n = len(self.cayley)
        if n == 0 or any(len(r) != n for r in self.cayley):
            raise ValueError("Cayley table must be a non-empty square")
        if any(not (0 <= x < n) for r in self.cayley for x in r):
            raise ValueError("Cayley table entry out of range")
        if not self.labels:
            object.__setattr__(self, "labels", ("e",) + tuple(f"g{i}" for i in range(1, n)))
        for g in range(n):
            if self.cayley[0][g] != g or self.cayley[g][0] != g:
                raise ValueError("element 0 must be the identity")
        for g, h, k in itertools.product(range(n), repeat=3):
            if self.cayley[self.cayley[g][h]][k] != self.cayley[g][self.cayley[h][k]]:
                raise ValueError(f"Cayley table not associative at {(g, h, k)}")
        for g in range(n):
            if 0 not in self.cayley[g]:
                raise ValueError(f"element {g} has no inverse")

    @property
    def order(self) -> int:
        return len(self.cayley)

    @property
    def identity_index(self) -> int:
        return 0

    def mul(self, g: int, h: int) -> int:
        return self.cayley[g][h]

    def inv(self, g: int) -> int:
        return self.cayley[g].index(0)

    @property
    def inverse(self) -> tuple[int, ...]:
        return tuple(self.inv(g) for g in range(self.order))

    def same_as(self, other: "GroupTable") -> bool:
        return self.cayley == other.cayley


def cyclic_group(n: int) -> GroupTable:
    labels = ("e",) + tuple(f"g^{i}" if i > 1 else "g" for i in range(1, n))
    return GroupTable(tuple(tuple((i + j) % n for j in range(n)) for i in range(n)), labels)


def symmetric_group_3() -> GroupTable:
    perms = [(0, 1, 2), (1, 0, 2), (0, 2, 1), (2, 1, 0), (1, 2, 0), (2, 0, 1)]
    labels = ("e", "(12)", "(23)", "(13)", "(123)", "(132)")

    def compose(p, q):  # (pq)(x) = p(q(x))
        return tuple(p[q[x]] for x in range(3))

    table = tuple(tuple(perms.index(compose(p, q)) for q in perms) for p in perms)
    return GroupTable(table, labels)


def trivial_group() -> GroupTable:
    return GroupTable(((0,),), ("e",))


@dataclass(frozen=True, eq=False)
class HopfAlgebra:
    """Delta(e_i) = sum comult[i,a,b] e_a (x) e_b; antipode columns are images."""

    alg: FinDimAlgebra
    comult: np.ndarray
    counit: np.ndarray
    antipode: np.ndarray
    antipode_inv: np.ndarray
    group: GroupTable | None = None
    name: str = ""

    def __post_init__(self):
        d = self.alg.dim
        if self.comult.shape != (d, d, d) or self.counit.shape != (d,):
            raise DimensionMismatchError("coalgebra structure has wrong shape")
        if self.antipode.shape != (d, d) or self.antipode_inv.shape != (d, d):
            raise DimensionMismatchError("antipode has wrong shape")

    @property
    def field(self) -> Field:
        return self.alg.field

    @property
    def dim(self) -> int:
        return self.alg.dim

    @property
    def mult(self) -> np.ndarray:
        return self.alg.mult

    @property
    def unit(self) -> np.ndarray:
        return self.alg.unit

    def same_as(self, other: "HopfAlgebra") -> bool:
        return (self.alg.same_as(other.alg) and equal(self.comult, other.comult)
                and equal(self.counit, other.counit) and equal(self.antipode, other.antipode)
                and equal(self.antipode_inv, other.antipode_inv))

    @property
    def is_group_algebra(self) -> bool:
        return self.group is not None


def check_hopf(h: HopfAlgebra) -> Report:
    rep = Report("hopf")
    rep.extend(check_algebra(h.alg), "algebra.")
    f, D, eps, m, S, Si = h.field, h.comult, h.counit, h.mult, h.antipode, h.antipode_inv
    d = h.dim
    ident = f.identity(d)
    rep.add_equal("coassociativity",
                  einsum(f, "iab,axy->ixyb", D, D), einsum(f, "ixc,cyb->ixyb", D, D), out_axes=3)
    rep.add_equal("left-counit", einsum(f, "iab,a->ib", D, eps), ident)
    rep.add_equal("right-counit", einsum(f, "iab,b->ia", D, eps), ident)
    # Delta is an algebra morphism
    lhs = einsum(f, "ijk,kab->ijab", m, D)
    rhs = einsum(f, "ipq,jrs,pra,qsb->ijab", D, D, m, m)
    rep.add_equal("comult-multiplicative", lhs, rhs, out_axes=2)
    rep.add_equal("comult-unital", einsum(f, "i,iab->ab", h.unit, D).reshape(1, d, d),
                  einsum(f, "a,b->ab", h.unit, h.unit).reshape(1, d, d), out_axes=2)
    rep.add_equal("counit-multiplicative", einsum(f, "ijk,k->ij", m, eps), einsum(f, "i,j->ij", eps, eps), out_axes=0)
    rep.add_equal("counit-unital", f.clean(eps.dot(h.unit)).reshape(1, 1), np.array([[f.one]], dtype=object))
    unit_eps = einsum(f, "i,k->ik", eps, h.unit)
    rep.add_equal("antipode-left", einsum(f, "iab,xa,xbk->ik", D, S, m), unit_eps)
    rep.add_equal("antipode-right", einsum(f, "iab,yb,ayk->ik", D, S, m), unit_eps)
    rep.add_equal("antipode-inverse", f.clean(S.dot(Si)), ident)
    rep.add_equal("antipode-inverse-left", f.clean(Si.dot(S)), ident)
    return rep


def variants(h: HopfAlgebra, which: str) -> HopfAlgebra:
    """H^op, H^cop or H^opcop; op and cop take S^{-1} as antipode, opcop keeps S."""
    if which == "op":
        return HopfAlgebra(opposite(h.alg), h.comult, h.counit, h.antipode_inv, h.antipode, h.group,
                           h.name + "^op" if h.name else "")
    if which == "cop":
        return HopfAlgebra(h.alg, np.ascontiguousarray(h.comult.transpose(0, 2, 1)), h.counit,
                           h.antipode_inv, h.antipode, h.group, h.name + "^cop" if h.name else "")
    if which == "opcop":
        return HopfAlgebra(opposite(h.alg), np.ascontiguousarray(h.comult.transpose(0, 2, 1)), h.counit,
                           h.antipode, h.antipode_inv, h.group, h.name + "^opcop" if h.name else "")
    raise ValueError(f"unknown variant {which!r}")


def group_algebra(g: GroupTable, field: Field) -> HopfAlgebra:
    n = g.order
    mult = field.zeros((n, n, n))
    comult = field.zeros((n, n, n))
    S = field.zeros((n, n))
    for a in range(n):
        comult[a, a, a] = field.one
        S[g.inv(a), a] = field.one
        for b in range(n):
            mult[a, b, g.mul(a, b)] = field.one
    alg = FinDimAlgebra(field, mult, field.unit_vector(n, 0), g.labels)
    return HopfAlgebra(alg, comult, field.array([1] * n), S, S.copy(), g, "kG")


def sweedler_h4(field: Field) -> HopfAlgebra:
    """Basis 1, g, x, gx with g^2 = 1, x^2 = 0, xg = -gx."""
    if field.characteristic == 2:
        raise ValueError("Sweedler's algebra needs characteristic different from 2")
    # represent basis element g^a x^b as (a, b)
    elems = [(0, 0), (1, 0), (0, 1), (1, 1)]

    def prod(u, v):
        (a1, b1), (a2, b2) = u, v
        if b1 + b2 > 1:
            return None, 0
        sign = -1 if (b1 == 1 and a2 == 1) else 1  # x g = -g x
        return ((a1 + a2) % 2, b1 + b2), sign

    mult = field.zeros((4, 4, 4))
    for i, u in enumerate(elems):
        for j, v in enumerate(elems):
            w, s = prod(u, v)
            if w is not None:
                mult[i, j, elems.index(w)] = field.coerce(s)
    alg = FinDimAlgebra(field, mult, field.unit_vector(4, 0), ("1", "g", "x", "gx"))
    comult = field.zeros((4, 4, 4))
    one, g, x, gx = 0, 1, 2, 3
    comult[one, one, one] = field.one
    comult[g, g, g] = field.one
    comult[x, x, one] = field.one
    comult[x, g, x] = field.one
    comult[gx, gx, g] = field.one
    comult[gx, one, gx] = field.one
    counit = field.array([1, 1, 0, 0])
    S = field.zeros((4, 4))
    S[one, one] = field.one
    S[g, g] = field.one
    S[gx, x] = field.coerce(-1)
    S[x, gx] = field.one
    Si = inverse(S, field)
    return HopfAlgebra(alg, comult, counit, S, Si, None, "H4")


def iterated_coproduct(h: HopfAlgebra, v, legs: int) -> np.ndarray:
    """The legs-fold coproduct of v as a tensor with one axis per leg."""
    if legs < 1:
        raise ValueError("number of legs must be at least 1")
    f = h.field
    out = np.asarray(v, dtype=object)
    for _ in range(legs - 1):
        out = einsum(f, "...i,iab->...ab", out, h.comult)
    return out


def coproduct_tensor(h: HopfAlgebra, legs: int) -> np.ndarray:
    """T[i, a1, ..., an]: the legs-fold coproduct of each basis vector."""
    return iterated_coproduct(h, h.field.identity(h.dim), legs)
