"""Group-indexed datums on a generalized matrix algebra and their conversion to block partial data."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .gma import BlockedAlgebra, GeneralizedMatrixDatum, IdealFamily, assemble, block_ideal, check_symmetric
from .gma_partial import BlockPartialData, build_smashes, check_block_partial_data
from .hopf import GroupTable, group_algebra
from .linalg import DimensionMismatchError, Subspace, einsum, equal, solve_linear
from .partial_action import (
    UnitalPartialGroupAction,
    check_group_action,
    group_to_hopf,
    hopf_to_group,
)
from .report import CheckFailure, Report
from .smash import _solve_on_generators


def left_ideal_block(d: GeneralizedMatrixDatum, e, i: int, j: int) -> Subspace:
    """e M_ij for e in R_i, inside M_ij."""
    f, n = d.field, d.dims[i][j]
    if n == 0:
        return Subspace.span([], f, 0)
    P = einsum(f, "x,xuw->uw", np.asarray(e, dtype=object), d.theta[(i, i, j)])
    return Subspace.span(list(P), f, n)


def left_mult(d: GeneralizedMatrixDatum, r, i: int, j: int, m) -> np.ndarray:
    return einsum(d.field, "x,u,xuw->w", np.asarray(r, dtype=object), np.asarray(m, dtype=object), d.theta[(i, i, j)])


def right_mult(d: GeneralizedMatrixDatum, m, i: int, j: int, r) -> np.ndarray:
    return einsum(d.field, "u,y,uyw->w", np.asarray(m, dtype=object), np.asarray(r, dtype=object), d.theta[(i, j, j)])


@dataclass(frozen=True, eq=False)
class GroupDatum:
    """gamma[(g, i, j)] is a dim(M_ij) x dim(D^(i)_{g^-1} M_ij) matrix: columns are the images
    of the canonical basis of the domain."""

    datum: GeneralizedMatrixDatum
    group: GroupTable
    alpha: tuple[UnitalPartialGroupAction, ...]
    gamma: dict

    @property
    def n(self) -> int:
        return self.datum.n

    def unit(self, g: int, i: int) -> np.ndarray:
        """1^(i)_g."""
        return self.alpha[i].idempotents[g]

    def domain(self, g: int, i: int, j: int) -> Subspace:
        """D^(i)_g M_ij."""
        return left_ideal_block(self.datum, self.unit(g, i), i, j)

    def apply(self, g: int, i: int, j: int, x) -> np.ndarray:
        dom = self.domain(self.group.inv(g), i, j)
        c = dom.coords(x)
        if c is None:
            raise ValueError(f"vector outside the domain of gamma_{g}^({i + 1}{j + 1})")
        if c.size == 0:
            return self.datum.field.zeros(self.datum.dims[i][j])
        return self.datum.field.clean(self.gamma[(g, i, j)].dot(c))

    def preimage(self, g: int, i: int, j: int, y) -> np.ndarray | None:
        dom = self.domain(self.group.inv(g), i, j)
        if dom.dim == 0:
            return self.datum.field.zeros(self.datum.dims[i][j]) if not any(x != 0 for x in y) else None
        sol = solve_linear(self.gamma[(g, i, j)], list(y), self.datum.field)
        if sol is None:
            return None
        return self.datum.field.clean(np.array(sol, dtype=object).dot(dom.basis))

    def unit_matrix(self, r: BlockedAlgebra, g: int) -> np.ndarray:
        """diag(1^(1)_g, ..., 1^(n)_g) in R."""
        out = r.datum.field.zeros(r.total.dim)
        for i in range(self.n):
            out = out + r.embed(i, i, self.unit(g, i))
        return r.datum.field.clean(out)

    def same_as(self, other: "GroupDatum") -> bool:
        if not (self.group.same_as(other.group) and self.datum.same_as(other.datum)):
            return False
        if not all(a.same_as(b) for a, b in zip(self.alpha, other.alpha)):
            return False
        return all(self.gamma[k].shape == other.gamma[k].shape and equal(self.gamma[k], other.gamma[k])
                   for k in self.gamma)


def check_group_datum(x: GroupDatum) -> Report:
    rep = Report("group-datum")
    d, G, f, n = x.datum, x.group, x.datum.field, x.n
    ginv = G.inverse
    for i, a in enumerate(x.alpha):
        if a.algebra.dim != d.dims[i][i]:
            raise DimensionMismatchError(f"alpha {i + 1} acts on the wrong algebra")
        rep.extend(check_group_action(a), f"alpha{i + 1}.")
    if not rep.passed:
        return rep
    sym_bad = []
    for g in range(G.order):
        fam = IdealFamily(tuple(x.alpha[i].domain(g) for i in range(n)))
        srep = check_symmetric(d, fam)
        sym_bad.extend((g,) + w for c in srep.checks if not c.passed for w in c.witnesses)
    rep.add("ideal-symmetric", not sym_bad, sym_bad)
    doms = {(g, i, j): x.domain(g, i, j) for g in range(G.order) for i in range(n) for j in range(n)}
    shape_bad = [(g, i, j) for (g, i, j) in doms
                 if x.gamma.get((g, i, j)) is None
                 or x.gamma[(g, i, j)].shape != (d.dims[i][j], doms[(ginv[g], i, j)].dim)]
    rep.add("gamma-shape", not shape_bad, shape_bad)
    if shape_bad:
        return rep
    into_bad, bij_bad, c2_bad, c1_bad = [], [], [], []
    for (g, i, j), dom in doms.items():
        src, dst = doms[(ginv[g], i, j)], dom
        M = x.gamma[(g, i, j)]
        imgs = [M[:, c] for c in range(src.dim)]
        if not all(dst.contains(v) for v in imgs):
            into_bad.append((g, i, j))
        if src.dim != dst.dim or Subspace.span(imgs, f, d.dims[i][j]).dim != dst.dim:
            bij_bad.append((g, i, j))
    for g in range(G.order):
        for i in range(n):
            if not equal(x.gamma[(g, i, i)], x.alpha[i].alpha[g]):
                c1_bad.append((g, i, i))
        for i, j in itertools.product(range(n), repeat=2):
            if not equal(x.gamma[(0, i, j)], doms[(0, i, j)].embedding()):
                c1_bad.append((0, i, j))
    rep.add("gamma-into-codomain", not into_bad, into_bad)
    rep.add("gamma-bijective", not bij_bad, bij_bad)
    rep.add("cond-diagonal-identity", not c1_bad, sorted(set(c1_bad)))
    if into_bad or bij_bad:
        return rep
    for g in range(G.order):
        gi = ginv[g]
        for i, k, j in itertools.product(range(n), repeat=3):
            for a, u in enumerate(doms[(gi, i, k)].basis):
                for b, v in enumerate(doms[(gi, k, j)].basis):
                    uv = einsum(f, "u,v,uvw->w", u, v, d.theta[(i, k, j)])
                    lhs = einsum(f, "u,v,uvw->w", x.apply(g, i, k, u), x.apply(g, k, j, v), d.theta[(i, k, j)])
                    if not equal(lhs, x.apply(g, i, j, uv)):
                        c2_bad.append((g, i, k, j, a, b))
    rep.add("cond-multiplicative", not c2_bad, c2_bad)
    c3_bad, c4_bad, inv_bad, dom_bad = [], [], [], []
    for i, j in itertools.product(range(n), repeat=2):
        for g, h in itertools.product(range(G.order), repeat=2):
            gh = G.mul(g, h)
            target = doms[(ginv[g], i, j)].intersect(doms[(h, i, j)])
            pre = [x.preimage(h, i, j, t) for t in target.basis]
            expect = doms[(ginv[gh], i, j)].intersect(doms[(ginv[h], i, j)])
            if not Subspace.span(pre, f, d.dims[i][j]).same_as(expect):
                dom_bad.append((g, h, i, j))
            for w, a in enumerate(pre):
                if not doms[(ginv[gh], i, j)].contains(a):
                    c3_bad.append((g, h, i, j, w))
                    continue
                if not equal(x.apply(g, i, j, x.apply(h, i, j, a)), x.apply(gh, i, j, a)):
                    c4_bad.append((g, h, i, j, w))
        for g in range(G.order):
            for u, v in enumerate(doms[(ginv[g], i, j)].basis):
                if not equal(x.apply(ginv[g], i, j, x.apply(g, i, j, v)), v):
                    inv_bad.append((g, i, j, u))
    rep.add("cond-domain-inclusion", not c3_bad, c3_bad)
    rep.add("cond-composition", not c4_bad, c4_bad)
    rep.add("inverse-is-gamma-of-inverse", not inv_bad, inv_bad)
    rep.add("preimage-domain-equality", not dom_bad, dom_bad)
    rep.extend(check_unital(x), "")
    return rep


def check_centrality(d: GeneralizedMatrixDatum, units, tag: str = "central-units") -> Report:
    """units[g][i] = 1^(i)_g; checks 1^(i)_g m = m 1^(j)_g on every block basis vector."""
    rep = Report(tag)
    f, bad = d.field, []
    for g, row in enumerate(units):
        for i, j in itertools.product(range(d.n), repeat=2):
            for u in range(d.dims[i][j]):
                m = f.unit_vector(d.dims[i][j], u)
                if not equal(left_mult(d, row[i], i, j, m), right_mult(d, m, i, j, row[j])):
                    bad.append((g, i, j, u))
    rep.add(tag, not bad, bad)
    return rep


def check_unital(x: GroupDatum) -> Report:
    """1_g central (equivalently the block centrality condition) and I_g = R 1_g."""
    rep = Report("unital-datum")
    d, G, f = x.datum, x.group, x.datum.field
    units = [[x.unit(g, i) for i in range(x.n)] for g in range(G.order)]
    rep.extend(check_centrality(d, units, "central-units"))
    r = assemble(d, validate=False)
    central_bad, ideal_bad = [], []
    for g in range(G.order):
        e = x.unit_matrix(r, g)
        for b in range(r.total.dim):
            v = r.total.basis(b)
            if not equal(r.total.mul(e, v), r.total.mul(v, e)):
                central_bad.append((g, b))
        fam = IdealFamily(tuple(x.alpha[i].domain(g) for i in range(x.n)))
        try:
            Ig = block_ideal(r, fam).space
        except CheckFailure:
            ideal_bad.append((g,))
            continue
        R1g = Subspace.span([r.total.mul(r.total.basis(b), e) for b in range(r.total.dim)], f, r.total.dim)
        if not Ig.same_as(R1g):
            ideal_bad.append((g,))
    rep.add("unit-matrix-central", not central_bad, central_bad)
    rep.add("ideal-generated-by-unit", not ideal_bad, ideal_bad)
    return rep


def datum_to_block_data(x: GroupDatum) -> BlockPartialData:
    """(r delta_g) . m = r gamma_g(1_{g^-1} m) on the left, m . (g#r) = gamma_g(m 1_{g^-1}) r on the right."""
    rep = check_group_datum(x)
    if not rep.passed:
        raise CheckFailure(f"datum fails {rep.first_failure}", rep)
    d, G, f, n = x.datum, x.group, x.datum.field, x.n
    ginv = G.inverse
    actions = tuple(group_to_hopf(a) for a in x.alpha)
    H = actions[0].hopf if actions else group_algebra(G, f)
    lefts, rights = build_smashes(actions)
    left, right = {}, {}
    for i, j in itertools.product(range(n), repeat=2):
        m = d.dims[i][j]
        if m == 0:
            left[(i, j)] = f.zeros((lefts[i].dim, 0, 0))
            right[(i, j)] = f.zeros((0, rights[j].dim, 0))
            continue
        di, dj = d.dims[i][i], d.dims[j][j]
        # generators a#g of R_i#kG act as m -> a gamma_g(1_{g^-1} m)
        gl = f.zeros((di, G.order, m * m))
        for g in range(G.order):
            moved = np.stack([x.apply(g, i, j, left_mult(d, x.unit(ginv[g], i), i, j, f.unit_vector(m, u)))
                              for u in range(m)])
            for a in range(di):
                ops = np.stack([left_mult(d, f.unit_vector(di, a), i, j, moved[u]) for u in range(m)])
                gl[a, g] = ops.T.reshape(-1)
        X = _solve_on_generators(lefts[i].sharp, gl, f)
        if X is None:
            raise CheckFailure(f"left module on block ({i + 1},{j + 1}) is not well defined")
        left[(i, j)] = np.ascontiguousarray(X.T.reshape(-1, m, m).transpose(0, 2, 1))
        # generators g#r of kG^op#R_j act as m -> gamma_g(m 1_{g^-1}) r
        gr = f.zeros((G.order, dj, m * m))
        for g in range(G.order):
            moved = np.stack([x.apply(g, i, j, right_mult(d, f.unit_vector(m, u), i, j, x.unit(ginv[g], j)))
                              for u in range(m)])
            for b in range(dj):
                ops = np.stack([right_mult(d, moved[u], i, j, f.unit_vector(dj, b)) for u in range(m)])
                gr[g, b] = ops.T.reshape(-1)
        Y = _solve_on_generators(rights[j].sharp, gr, f)
        if Y is None:
            raise CheckFailure(f"right module on block ({i + 1},{j + 1}) is not well defined")
        right[(i, j)] = np.ascontiguousarray(Y.T.reshape(-1, m, m).transpose(2, 0, 1))
    b = BlockPartialData(d, H, actions, lefts, rights, left, right)
    brep = check_block_partial_data(b)
    if not brep.passed:
        raise CheckFailure(f"converted data fails {brep.first_failure}", brep)
    return b


def check_primed_a(b: BlockPartialData) -> Report:
    """g -> 1 on each diagonal gives idempotents satisfying the block centrality condition."""
    G = b.hopf.group
    units = [[b.diag_actions[i].unit_images()[g] for i in range(b.n)] for g in range(G.order)]
    return check_centrality(b.datum, units, "primed-a")


def block_data_to_datum(b: BlockPartialData) -> GroupDatum:
    """alpha from the group bridge and gamma_g(x) = (1_i#g) . x on D_{g^-1} M_ij."""
    G = b.hopf.group
    if G is None:
        raise ValueError("block data is not over a group algebra")
    rep = check_block_partial_data(b)
    rep.extend(check_primed_a(b))
    if not rep.passed:
        raise CheckFailure(f"block data fails {rep.first_failure}", rep)
    d, f, n = b.datum, b.datum.field, b.n
    alpha = tuple(hopf_to_group(a) for a in b.diag_actions)
    ginv = G.inverse
    gamma = {}
    for g in range(G.order):
        for i, j in itertools.product(range(n), repeat=2):
            dom = left_ideal_block(d, alpha[i].idempotents[ginv[g]], i, j)
            if dom.dim == 0:
                gamma[(g, i, j)] = f.zeros((d.dims[i][j], 0))
                continue
            act = b.hopf_left(i, j)[g]
            gamma[(g, i, j)] = einsum(f, "cu,uw->wc", dom.basis, act)
    x = GroupDatum(d, G, alpha, gamma)
    xrep = check_group_datum(x)
    if not xrep.passed:
        raise CheckFailure(f"extracted datum fails {xrep.first_failure}", xrep)
    return x


def group_datum_roundtrip(x) -> Report:
    """Convert in both orders and compare every matrix."""
    from .gma_partial import same_modules
    rep = Report("group-roundtrip")
    if isinstance(x, GroupDatum):
        b = datum_to_block_data(x)
        y = block_data_to_datum(b)
        rep.add("datum-fixed-point", y.same_as(x), [] if y.same_as(x) else [()])
        b2 = datum_to_block_data(y)
        rep.add("module-fixed-point", same_modules(b, b2), [] if same_modules(b, b2) else [()])
    elif isinstance(x, BlockPartialData):
        y = block_data_to_datum(x)
        b = datum_to_block_data(y)
        ok = same_modules(x, b) and all(p.same_as(q) for p, q in zip(x.diag_actions, b.diag_actions))
        rep.add("module-fixed-point", ok, [] if ok else [()])
        y2 = block_data_to_datum(b)
        rep.add("datum-fixed-point", y2.same_as(y), [] if y2.same_as(y) else [()])
    else:
        raise TypeError("expected a GroupDatum or BlockPartialData")
    return rep
