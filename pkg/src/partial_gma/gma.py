"""Generalized matrix datums, their total algebras, Peirce decompositions and block ideals."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .algebra import FinDimAlgebra, LinearMap, check_algebra, check_algebra_morphism
from .linalg import DimensionMismatchError, Field, Subspace, einsum, equal, inverse
from .report import CheckFailure, Report


@dataclass(frozen=True, eq=False)
class GeneralizedMatrixDatum:
    """Blocks M[i][j] of dimension dims[i][j].

    theta[(i, j, k)][u, v, w] is the coefficient of basis vector w of M_ik in
    theta_ijk(m_u (x) n_v); eta[i] is the unit of R_i = M_ii in block coordinates.
    """

    field: Field
    dims: tuple[tuple[int, ...], ...]
    theta: dict
    eta: tuple[np.ndarray, ...]

    def __post_init__(self):
        n = len(self.dims)
        if any(len(row) != n for row in self.dims):
            raise DimensionMismatchError("block dimension table must be square")
        if len(self.eta) != n:
            raise DimensionMismatchError("need one unit per diagonal block")
        for i, j, k in itertools.product(range(n), repeat=3):
            t = self.theta.get((i, j, k))
            expect = (self.dims[i][j], self.dims[j][k], self.dims[i][k])
            if t is None or t.shape != expect:
                got = None if t is None else t.shape
                raise DimensionMismatchError(f"theta{(i, j, k)} has shape {got}, expected {expect}")
        for i in range(n):
            if self.eta[i].shape != (self.dims[i][i],):
                raise DimensionMismatchError(f"unit of block {i} has wrong length")

    @property
    def n(self) -> int:
        return len(self.dims)

    def dim(self, i: int, j: int) -> int:
        return self.dims[i][j]

    def diagonal_algebra(self, i: int) -> FinDimAlgebra:
        """R_i with product theta_iii."""
        return FinDimAlgebra(self.field, self.theta[(i, i, i)], self.eta[i])

    def same_as(self, other: "GeneralizedMatrixDatum") -> bool:
        return (self.field == other.field and self.dims == other.dims
                and all(equal(self.theta[k], other.theta[k]) for k in self.theta)
                and all(equal(a, b) for a, b in zip(self.eta, other.eta)))


def _compare(bad: list, prefix: tuple, lhs, rhs, out_axes: int = 1) -> None:
    diff = np.asarray(lhs, dtype=object) - np.asarray(rhs, dtype=object)
    lead = diff.shape[: diff.ndim - out_axes]
    if diff.size == 0:
        return
    flat = diff.reshape(lead + (-1,))
    for idx in np.ndindex(*lead):
        if any(x != 0 for x in flat[idx]):
            bad.append(prefix + tuple(int(t) for t in idx))


def check_datum(d: GeneralizedMatrixDatum) -> Report:
    rep = Report("generalized-matrix-datum")
    f, th, n = d.field, d.theta, d.n
    assoc, lunit, runit, balanced = [], [], [], []
    for i, j, k, l in itertools.product(range(n), repeat=4):
        lhs = einsum(f, "uvx,xwy->uvwy", th[(i, j, k)], th[(i, k, l)])
        rhs = einsum(f, "vwz,uzy->uvwy", th[(j, k, l)], th[(i, j, l)])
        _compare(assoc, (i, j, k, l), lhs, rhs)
    for i, j in itertools.product(range(n), repeat=2):
        ident = f.identity(d.dims[i][j])
        _compare(lunit, (i, j), einsum(f, "u,uvw->vw", d.eta[i], th[(i, i, j)]), ident)
        _compare(runit, (i, j), einsum(f, "v,uvw->uw", d.eta[j], th[(i, j, j)]), ident)
    for i, j, k in itertools.product(range(n), repeat=3):
        # theta_ijk((m r) (x) n) = theta_ijk(m (x) (r n)) for r in R_j
        lhs = einsum(f, "urx,xvw->urvw", th[(i, j, j)], th[(i, j, k)])
        rhs = einsum(f, "rvy,uyw->urvw", th[(j, j, k)], th[(i, j, k)])
        _compare(balanced, (i, j, k), lhs, rhs)
    rep.add("GMD3-associativity", not assoc, assoc)
    rep.add("GMD3-left-unit", not lunit, lunit)
    rep.add("GMD3-right-unit", not runit, runit)
    for i in range(n):
        rep.extend(check_algebra(d.diagonal_algebra(i)), f"R{i + 1}.")
    rep.add("balanced", not balanced, balanced)
    return rep


@dataclass(frozen=True, eq=False)
class BlockedAlgebra:
    datum: GeneralizedMatrixDatum
    total: FinDimAlgebra
    offsets: tuple[tuple[int, ...], ...]
    block_of_basis: tuple[tuple[int, int, int], ...]

    @property
    def n(self) -> int:
        return self.datum.n

    def block_range(self, i: int, j: int) -> range:
        o = self.offsets[i][j]
        return range(o, o + self.datum.dims[i][j])

    def embed(self, i: int, j: int, m) -> np.ndarray:
        return block_embed(self, i, j, m)

    def project(self, i: int, j: int, x) -> np.ndarray:
        return block_project(self, i, j, x)

    def inclusion(self, i: int, j: int) -> np.ndarray:
        """total.dim x dim(M_ij) matrix of the block inclusion."""
        f = self.datum.field
        out = f.zeros((self.total.dim, self.datum.dims[i][j]))
        for u, c in enumerate(self.block_range(i, j)):
            out[c, u] = f.one
        return out

    def diagonal_idempotent(self, i: int) -> np.ndarray:
        return self.embed(i, i, self.datum.eta[i])


def assemble(d: GeneralizedMatrixDatum, validate: bool = True) -> BlockedAlgebra:
    """Row-column multiplication of block matrices; basis = blocks in row-major order."""
    if validate:
        rep = check_datum(d)
        if not rep.passed:
            raise CheckFailure(f"datum fails {rep.first_failure}", rep)
    f, n = d.field, d.n
    offsets, owner, total = [], [], 0
    for i in range(n):
        row = []
        for j in range(n):
            row.append(total)
            owner.extend((i, j, u) for u in range(d.dims[i][j]))
            total += d.dims[i][j]
        offsets.append(tuple(row))
    mult = f.zeros((total, total, total))
    for i, j, k in itertools.product(range(n), repeat=3):
        a, b, c = offsets[i][j], offsets[j][k], offsets[i][k]
        t = d.theta[(i, j, k)]
        mult[a: a + t.shape[0], b: b + t.shape[1], c: c + t.shape[2]] = t
    unit = f.zeros(total)
    for i in range(n):
        unit[offsets[i][i]: offsets[i][i] + d.dims[i][i]] = d.eta[i]
    labels = tuple(f"m{i + 1}{j + 1}_{u}" for (i, j, u) in owner)
    alg = FinDimAlgebra(f, mult, unit, labels)
    r = BlockedAlgebra(d, alg, tuple(offsets), tuple(owner))
    if validate:
        arep = check_algebra(alg)
        if not arep.passed:
            raise CheckFailure(f"total algebra fails {arep.first_failure}", arep)
    return r


def _check_indices(r: BlockedAlgebra, i: int, j: int) -> None:
    if not (0 <= i < r.n and 0 <= j < r.n):
        raise IndexError(f"block ({i}, {j}) out of range for {r.n} blocks")


def block_embed(r: BlockedAlgebra, i: int, j: int, m) -> np.ndarray:
    _check_indices(r, i, j)
    m = np.asarray(m, dtype=object)
    if m.shape != (r.datum.dims[i][j],):
        raise DimensionMismatchError("block vector has wrong length")
    out = r.datum.field.zeros(r.total.dim)
    o = r.offsets[i][j]
    out[o: o + m.shape[0]] = m
    return out


def block_project(r: BlockedAlgebra, i: int, j: int, x) -> np.ndarray:
    _check_indices(r, i, j)
    x = np.asarray(x, dtype=object)
    o = r.offsets[i][j]
    return np.array(x[o: o + r.datum.dims[i][j]], dtype=object)


def check_blocked_algebra(r: BlockedAlgebra) -> Report:
    """Projection after embedding is the identity, diagonal inclusions are unital morphisms,
    and blocks (i,j), (k,l) with j != k multiply to zero."""
    rep = Report("blocked-algebra")
    d, f, n = r.datum, r.datum.field, r.n
    bad_rt, bad_zero = [], []
    for i, j in itertools.product(range(n), repeat=2):
        for u in range(d.dims[i][j]):
            v = f.unit_vector(d.dims[i][j], u)
            if not equal(block_project(r, i, j, block_embed(r, i, j, v)), v):
                bad_rt.append((i, j, u))
    for i, j, k, l in itertools.product(range(n), repeat=4):
        if j == k:
            continue
        P = einsum(f, "xu,yv,xyz->uvz", r.inclusion(i, j), r.inclusion(k, l), r.total.mult)
        _compare(bad_zero, (i, j, k, l), P, f.zeros(P.shape))
    rep.add("project-embed", not bad_rt, bad_rt)
    rep.add("non-composable-zero", not bad_zero, bad_zero)
    for i in range(n):
        # the corner algebra 1_i R 1_i has unit 1_i, so check against that unit
        inc = r.inclusion(i, i)
        Ri = d.diagonal_algebra(i)
        corner = FinDimAlgebra(f, r.total.mult, r.diagonal_idempotent(i), r.total.labels)
        rep.extend(check_algebra_morphism(LinearMap(inc), Ri, corner), f"embed{i + 1}{i + 1}.")
    return rep


def subspace_datum(a: FinDimAlgebra, blocks, units) -> tuple[GeneralizedMatrixDatum, np.ndarray]:
    """Datum whose blocks are subspaces of A closed under the products M_ij M_jk in M_ik.

    Returns the datum and the A.dim x total matrix sending assembled coordinates to A.
    """
    f, n = a.field, len(blocks)
    dims = tuple(tuple(blocks[i][j].dim for j in range(n)) for i in range(n))
    theta = {}
    for i, j, k in itertools.product(range(n), repeat=3):
        src1, src2, dst = blocks[i][j], blocks[j][k], blocks[i][k]
        t = f.zeros((src1.dim, src2.dim, dst.dim))
        if src1.dim and src2.dim:
            prods = einsum(f, "ux,vy,xyz->uvz", src1.basis, src2.basis, a.mult)
            for u, v in itertools.product(range(src1.dim), range(src2.dim)):
                c = dst.coords(prods[u, v])
                if c is None:
                    raise CheckFailure(f"block product ({i},{j})x({j},{k}) leaves block ({i},{k})")
                t[u, v] = c
        theta[(i, j, k)] = t
    eta = []
    for i in range(n):
        c = blocks[i][i].coords(units[i])
        if c is None:
            raise CheckFailure(f"unit {i} is outside its diagonal block")
        eta.append(c)
    cols = [blocks[i][j].embedding() for i in range(n) for j in range(n)]
    iso = np.concatenate(cols, axis=1) if cols else f.zeros((a.dim, 0))
    return GeneralizedMatrixDatum(f, dims, theta, tuple(eta)), iso


@dataclass(frozen=True, eq=False)
class PeirceDecomposition:
    datum: GeneralizedMatrixDatum
    blocked: BlockedAlgebra
    blocks: tuple[tuple[Subspace, ...], ...]
    iso: np.ndarray
    report: Report


def corner(a: FinDimAlgebra, e1, e2) -> Subspace:
    """e1 A e2."""
    f = a.field
    vecs = [a.mul(a.mul(e1, a.basis(b)), e2) for b in range(a.dim)]
    return Subspace.span(vecs, f, a.dim)


def check_idempotent_family(a: FinDimAlgebra, idempotents) -> Report:
    rep = Report("idempotent-family")
    f = a.field
    es = [np.asarray(e, dtype=object) for e in idempotents]
    bad_idem = [(i,) for i, e in enumerate(es) if not equal(a.mul(e, e), e)]
    bad_orth = [(i, j) for i, j in itertools.product(range(len(es)), repeat=2)
                if i != j and not equal(a.mul(es[i], es[j]), f.zeros(a.dim))]
    total = f.clean(np.sum(es, axis=0)) if es else f.zeros(a.dim)
    rep.add("idempotent", not bad_idem, bad_idem)
    rep.add("orthogonal", not bad_orth, bad_orth)
    rep.add("complete", equal(total, a.unit), [] if equal(total, a.unit) else [()])
    return rep


def peirce(a: FinDimAlgebra, idempotents) -> PeirceDecomposition:
    """Blocks e_i A e_j with the product of A; returns the datum and the reassembly isomorphism."""
    rep = check_idempotent_family(a, idempotents)
    if not rep.passed:
        raise CheckFailure(f"idempotents fail {rep.first_failure}", rep)
    n = len(idempotents)
    blocks = tuple(tuple(corner(a, idempotents[i], idempotents[j]) for j in range(n)) for i in range(n))
    datum, iso = subspace_datum(a, blocks, idempotents)
    rep.extend(check_datum(datum), "datum.")
    blocked = assemble(datum)
    rep.extend(check_algebra_morphism(LinearMap(iso), blocked.total, a), "iso.")
    bij = iso.shape[0] == iso.shape[1] and inverse(iso, a.field) is not None
    rep.add("iso.bijective", bij, [] if bij else [iso.shape])
    return PeirceDecomposition(datum, blocked, blocks, iso, rep)


# ideal families and symmetry

@dataclass(frozen=True, eq=False)
class IdealFamily:
    """ideals[j] is a subspace of R_j in block coordinates."""

    ideals: tuple[Subspace, ...]


def check_ideal_family(d: GeneralizedMatrixDatum, fam: IdealFamily) -> Report:
    rep = Report("ideal-family")
    f = d.field
    if len(fam.ideals) != d.n:
        raise DimensionMismatchError("need one ideal per diagonal block")
    bad = []
    for j, I in enumerate(fam.ideals):
        if I.ambient != d.dims[j][j]:
            raise DimensionMismatchError(f"ideal {j} lives in the wrong space")
        if I.dim == 0:
            continue
        R = d.theta[(j, j, j)]
        left = einsum(f, "by,ryz->rbz", I.basis, R)
        right = einsum(f, "bx,xrz->brz", I.basis, R)
        for r, b in itertools.product(range(d.dims[j][j]), range(I.dim)):
            if not I.contains(left[r, b]) or not I.contains(right[b, r]):
                bad.append((j, r, b))
    rep.add("two-sided-ideal", not bad, bad)
    return rep


def _left_product_space(d: GeneralizedMatrixDatum, I: Subspace, i: int, j: int) -> Subspace:
    """I_i M_ij as a subspace of M_ij."""
    f = d.field
    if I.dim == 0 or d.dims[i][j] == 0:
        return Subspace.span([], f, d.dims[i][j])
    P = einsum(f, "bx,xvw->bvw", I.basis, d.theta[(i, i, j)])
    return Subspace.span(list(P.reshape(-1, d.dims[i][j])), f, d.dims[i][j])


def _right_product_space(d: GeneralizedMatrixDatum, I: Subspace, i: int, j: int) -> Subspace:
    """M_ij I_j as a subspace of M_ij."""
    f = d.field
    if I.dim == 0 or d.dims[i][j] == 0:
        return Subspace.span([], f, d.dims[i][j])
    P = einsum(f, "by,uyw->ubw", I.basis, d.theta[(i, j, j)])
    return Subspace.span(list(P.reshape(-1, d.dims[i][j])), f, d.dims[i][j])


def check_symmetric(d: GeneralizedMatrixDatum, fam: IdealFamily) -> Report:
    """I_i M_ij = M_ij I_j for every pair, one check per (i, j)."""
    frep = check_ideal_family(d, fam)
    if not frep.passed:
        raise CheckFailure("not an ideal family", frep)
    rep = Report("ideal-symmetry")
    for i, j in itertools.product(range(d.n), repeat=2):
        ok = _left_product_space(d, fam.ideals[i], i, j).same_as(_right_product_space(d, fam.ideals[j], i, j))
        rep.add(f"symmetric[{i + 1},{j + 1}]", ok, [] if ok else [(i, j)])
    return rep


def symmetry_table(rep: Report, n: int) -> list[list[bool]]:
    return [[rep.get(f"symmetric[{i + 1},{j + 1}]").passed for j in range(n)] for i in range(n)]


@dataclass(frozen=True, eq=False)
class BlockIdeal:
    space: Subspace
    report: Report


def block_ideal(r: BlockedAlgebra, fam: IdealFamily) -> BlockIdeal:
    """I = sum over blocks of I_j M_jk + M_jk I_k, with two-sided closure verified in R."""
    d, f = r.datum, r.datum.field
    srep = check_symmetric(d, fam)
    if not srep.passed:
        raise CheckFailure(f"family is not symmetric at {srep.first_failure}", srep)
    vecs = []
    for j, k in itertools.product(range(d.n), repeat=2):
        a = _left_product_space(d, fam.ideals[j], j, k)
        b = _right_product_space(d, fam.ideals[k], j, k)
        for v in list(a.basis) + list(b.basis):
            vecs.append(block_embed(r, j, k, v))
    space = Subspace.span(vecs, f, r.total.dim)
    rep = Report("block-ideal")
    rep.extend(srep)
    bad = []
    if space.dim:
        L = einsum(f, "by,xyz->xbz", space.basis, r.total.mult)
        R = einsum(f, "bx,xyz->byz", space.basis, r.total.mult)
        for x, b in itertools.product(range(r.total.dim), range(space.dim)):
            if not space.contains(L[x, b]) or not space.contains(R[b, x]):
                bad.append((x, b))
    rep.add("two-sided-ideal", not bad, bad)
    return BlockIdeal(space, rep)
