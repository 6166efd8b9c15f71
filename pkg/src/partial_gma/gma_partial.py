"""Partial actions on generalized matrix algebras, block by block.

A partial action on the total algebra that preserves every block decomposes into
partial actions on the diagonal algebras R_i together with left R_i#H and right
H^op#R_j module structures on the blocks M_ij; `synthesize` reverses this.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .algebra import endomorphism_algebra, opposite
from .gma import BlockedAlgebra, GeneralizedMatrixDatum, Subspace, assemble, subspace_datum
from .hopf import HopfAlgebra, variants
from .linalg import DimensionMismatchError, einsum, equal
from .partial_action import (
    PartialActionMap,
    PartialRepresentation,
    check_left_partial_action,
    check_partial_representation,
    to_right,
)
from .report import CheckFailure, Report
from .smash import CovariantPairData, SmashAlgebra, left_smash, right_smash, universal_morphism


def _block_tensor(r: BlockedAlgebra, p: PartialActionMap, i: int, j: int) -> np.ndarray:
    """T[h, u, w]: coefficient of basis w of M_ij in h . embed(i, j, e_u)."""
    rows = list(r.block_range(i, j))
    return np.ascontiguousarray(p.tensor[:, rows][:, :, rows])


def check_block_invariance(r: BlockedAlgebra, p: PartialActionMap) -> Report:
    """One check per block: h . M_ij stays inside M_ij; witnesses are (h, u, w_outside)."""
    if p.side != "left":
        raise ValueError("block invariance is defined for left actions")
    if p.algebra.dim != r.total.dim:
        raise DimensionMismatchError("action and blocked algebra have different dimensions")
    rep = Report("block-invariance")
    for i, j in itertools.product(range(r.n), repeat=2):
        inside = set(r.block_range(i, j))
        bad = []
        for h in range(p.hopf.dim):
            for u in r.block_range(i, j):
                for w in range(r.total.dim):
                    if w not in inside and p.tensor[h, u, w] != 0:
                        bad.append((h, u - r.offsets[i][j], w))
        rep.add(f"invariant[{i + 1},{j + 1}]", not bad, bad)
    return rep


def invariance_table(rep: Report, n: int) -> list[list[bool]]:
    return [[rep.get(f"invariant[{i + 1},{j + 1}]").passed for j in range(n)] for i in range(n)]


def _operators_to_end(ops: np.ndarray) -> np.ndarray:
    """ops[x, u, w] (image of basis u is sum_w ops[x,u,w] e_w) -> End coordinates, one column per x."""
    d = ops.shape[1]
    return np.ascontiguousarray(ops.transpose(0, 2, 1).reshape(ops.shape[0], d * d).T)


def _end_to_operators(mat: np.ndarray, d: int) -> np.ndarray:
    """Inverse of _operators_to_end."""
    return np.ascontiguousarray(mat.T.reshape(-1, d, d).transpose(0, 2, 1))


@dataclass(frozen=True, eq=False)
class BlockRestriction:
    """Diagonal actions, per-block partial representations and their op/cop readings."""

    actions: tuple[PartialActionMap, ...]
    pis: dict
    gammas: dict
    report: Report


def restrict_blocks(r: BlockedAlgebra, p: PartialActionMap) -> BlockRestriction:
    inv = check_block_invariance(r, p)
    if not inv.passed:
        raise CheckFailure(f"block not invariant: {inv.first_failure}", inv)
    d, H, f = r.datum, p.hopf, p.field
    rep = Report("block-restriction")
    actions = []
    for i in range(r.n):
        a = PartialActionMap(H, d.diagonal_algebra(i), "left", _block_tensor(r, p, i, i))
        rep.extend(check_left_partial_action(a), f"action{i + 1}.")
        actions.append(a)
    Hoc = variants(H, "opcop")
    pis, gammas = {}, {}
    for i, j in itertools.product(range(r.n), repeat=2):
        n = d.dims[i][j]
        if n == 0:
            continue
        end = endomorphism_algebra(n, f)
        mat = _operators_to_end(_block_tensor(r, p, i, j))
        pis[(i, j)] = PartialRepresentation(H, end, mat)
        gammas[(i, j)] = PartialRepresentation(Hoc, opposite(end), mat)
        rep.extend(check_partial_representation(pis[(i, j)]), f"pi{i + 1}{j + 1}.")
        rep.extend(check_partial_representation(gammas[(i, j)]), f"gamma{i + 1}{j + 1}.")
    return BlockRestriction(tuple(actions), pis, gammas, rep)


@dataclass(frozen=True, eq=False)
class BlockPartialData:
    """left[(i,j)][x, u, w]: x-th basis vector of R_i#H acting on basis u of M_ij.
    right[(i,j)][u, y, w]: basis u of M_ij acted on by y-th basis vector of H^op#R_j."""

    datum: GeneralizedMatrixDatum
    hopf: HopfAlgebra
    diag_actions: tuple[PartialActionMap, ...]
    left_smashes: tuple[SmashAlgebra, ...]
    right_smashes: tuple[SmashAlgebra, ...]
    left: dict
    right: dict

    @property
    def n(self) -> int:
        return self.datum.n

    def hopf_left(self, i: int, j: int) -> np.ndarray:
        """[h, u, w] for (1_i#h) . m."""
        s = self.left_smashes[i]
        return einsum(self.datum.field, "xh,xuw->huw", s.hopf_embedding(), self.left[(i, j)])

    def hopf_right(self, i: int, j: int) -> np.ndarray:
        """[h, u, w] for m . (h#1_j)."""
        s = self.right_smashes[j]
        return einsum(self.datum.field, "yh,uyw->huw", s.hopf_embedding(), self.right[(i, j)])

    def with_modules(self, left=None, right=None) -> "BlockPartialData":
        return BlockPartialData(self.datum, self.hopf, self.diag_actions, self.left_smashes, self.right_smashes,
                                dict(self.left if left is None else left), dict(self.right if right is None else right))


def build_smashes(actions) -> tuple[tuple[SmashAlgebra, ...], tuple[SmashAlgebra, ...]]:
    lefts = tuple(left_smash(a) for a in actions)
    rights = tuple(right_smash(to_right(a)) for a in actions)
    return lefts, rights


def decompose(r: BlockedAlgebra, p: PartialActionMap) -> BlockPartialData:
    res = restrict_blocks(r, p)
    if not res.report.passed:
        raise CheckFailure(f"restriction fails {res.report.first_failure}", res.report)
    d, H, f = r.datum, p.hopf, p.field
    lefts, rights = build_smashes(res.actions)
    left, right = {}, {}
    for i, j in itertools.product(range(r.n), repeat=2):
        n = d.dims[i][j]
        if n == 0:
            left[(i, j)] = f.zeros((lefts[i].dim, 0, 0))
            right[(i, j)] = f.zeros((0, rights[j].dim, 0))
            continue
        end = endomorphism_algebra(n, f)
        psi = _operators_to_end(d.theta[(i, i, j)])  # r . m
        c = CovariantPairData(psi, res.pis[(i, j)].matrix, end, "left")
        um = universal_morphism(c, lefts[i])
        if not um.report.passed:
            raise CheckFailure(f"left module on block ({i + 1},{j + 1}) fails {um.report.first_failure}", um.report)
        left[(i, j)] = _end_to_operators(um.matrix, n)
        phi = _operators_to_end(np.ascontiguousarray(d.theta[(i, j, j)].transpose(1, 0, 2)))  # m . r
        c = CovariantPairData(phi, res.gammas[(i, j)].matrix, opposite(end), "opposite")
        um = universal_morphism(c, rights[j])
        if not um.report.passed:
            raise CheckFailure(f"right module on block ({i + 1},{j + 1}) fails {um.report.first_failure}", um.report)
        right[(i, j)] = np.ascontiguousarray(_end_to_operators(um.matrix, n).transpose(1, 0, 2))
    data = BlockPartialData(d, H, res.actions, lefts, rights, left, right)
    rep = check_block_partial_data(data)
    if not rep.passed:
        raise CheckFailure(f"decomposed data fails {rep.first_failure}", rep)
    return data


def _collect(bad, prefix, lhs, rhs, out_axes=1):
    diff = np.asarray(lhs, dtype=object) - np.asarray(rhs, dtype=object)
    if diff.size == 0:
        return
    lead = diff.shape[: diff.ndim - out_axes]
    flat = diff.reshape(lead + (-1,))
    for idx in np.ndindex(*lead):
        if any(x != 0 for x in flat[idx]):
            bad.append(prefix + tuple(int(t) for t in idx))


def check_block_partial_data(b: BlockPartialData, include_c_prime: bool = False) -> Report:
    """Module axioms (a), compatibilities (b) and multiplicativity (c); witnesses start with the block."""
    rep = Report("block-partial-data")
    d, f, n = b.datum, b.datum.field, b.n
    for i, a in enumerate(b.diag_actions):
        rep.extend(check_left_partial_action(a), f"action{i + 1}.")
    bad = {k: [] for k in ("left-unital", "left-associative", "right-unital", "right-associative",
                           "b-hopf", "b-action", "b-left-algebra", "b-right-algebra")}
    for i, j in itertools.product(range(n), repeat=2):
        m = d.dims[i][j]
        L, R = b.left[(i, j)], b.right[(i, j)]
        sl, sr = b.left_smashes[i], b.right_smashes[j]
        if L.shape != (sl.dim, m, m) or R.shape != (m, sr.dim, m):
            raise DimensionMismatchError(f"module tensors for block ({i + 1},{j + 1}) have wrong shape")
        if m == 0:
            continue
        ident = f.identity(m)
        _collect(bad["left-unital"], (i, j), einsum(f, "x,xuw->uw", sl.algebra.unit, L), ident)
        _collect(bad["left-associative"], (i, j),
                 einsum(f, "xyz,zuw->xyuw", sl.algebra.mult, L), einsum(f, "yuv,xvw->xyuw", L, L))
        _collect(bad["right-unital"], (i, j), einsum(f, "y,uyw->uw", sr.algebra.unit, R), ident)
        _collect(bad["right-associative"], (i, j),
                 einsum(f, "yzq,uqw->uyzw", sr.algebra.mult, R), einsum(f, "uyv,vzw->uyzw", R, R))
        _collect(bad["b-hopf"], (i, j), b.hopf_left(i, j), b.hopf_right(i, j))
        if i == j:
            _collect(bad["b-action"], (i,), b.hopf_left(i, i), b.diag_actions[i].tensor)
        _collect(bad["b-left-algebra"], (i, j),
                 einsum(f, "xr,xuw->ruw", sl.algebra_embedding(), L), d.theta[(i, i, j)])
        _collect(bad["b-right-algebra"], (i, j),
                 einsum(f, "ys,uyw->usw", sr.algebra_embedding(), R), d.theta[(i, j, j)])
    for tag, ws in bad.items():
        rep.add(tag, not ws, ws)
    rep.extend(_check_c(b, "left"), "")
    if include_c_prime:
        rep.extend(_check_c(b, "right"), "")
    return rep


def _check_c(b: BlockPartialData, which: str) -> Report:
    """(c) for the left modules or (c') for the right modules, on all composable block triples."""
    d, H, f, n = b.datum, b.hopf, b.datum.field, b.n
    bad = []
    act = b.hopf_left if which == "left" else b.hopf_right
    for i, j, k in itertools.product(range(n), repeat=3):
        if 0 in (d.dims[i][j], d.dims[j][k]):
            continue
        th = d.theta[(i, j, k)]
        lhs = einsum(f, "uvz,hzw->huvw", th, act(i, k))
        rhs = einsum(f, "hpq,pux,qvy,xyw->huvw", H.comult, act(i, j), act(j, k), th)
        _collect(bad, (i, j, k), lhs, rhs)
    rep = Report("c" if which == "left" else "c-prime")
    rep.add("c" if which == "left" else "c-prime", not bad, bad)
    return rep


def check_c(b: BlockPartialData) -> Report:
    return _check_c(b, "left")


def check_c_prime(b: BlockPartialData) -> Report:
    """(c') together with (c), so the report itself records whether the two agree."""
    rep = Report("c-prime")
    cp = _check_c(b, "right")
    c = _check_c(b, "left")
    rep.extend(cp)
    rep.add("c", c.passed, c.checks[0].witnesses, informational=True)
    agree = cp.passed == c.passed
    rep.add("c-agrees-with-c-prime", agree, [] if agree else [()], informational=True)
    return rep


def synthesize(b: BlockPartialData, validate: bool = True) -> tuple[BlockedAlgebra, PartialActionMap]:
    """h |> (m_ij) = ((1_i#h) . m_ij) on every block."""
    if validate:
        rep = check_block_partial_data(b)
        if not rep.passed:
            raise CheckFailure(f"block data fails {rep.first_failure}", rep)
    r = assemble(b.datum)
    f, H = b.datum.field, b.hopf
    T = f.zeros((H.dim, r.total.dim, r.total.dim))
    for i, j in itertools.product(range(b.n), repeat=2):
        rows = list(r.block_range(i, j))
        if rows:
            T[np.ix_(range(H.dim), rows, rows)] = b.hopf_left(i, j)
    p = PartialActionMap(H, r.total, "left", T)
    if validate:
        prep = check_left_partial_action(p)
        prep.extend(check_block_invariance(r, p))
        if not prep.passed:
            raise CheckFailure(f"synthesized action fails {prep.first_failure}", prep)
    return r, p


def same_modules(a: BlockPartialData, b: BlockPartialData) -> bool:
    keys = set(a.left) | set(b.left)
    return all(a.left[k].shape == b.left[k].shape and equal(a.left[k], b.left[k])
               and a.right[k].shape == b.right[k].shape and equal(a.right[k], b.right[k]) for k in keys)


def check_mixed_actions(b: BlockPartialData) -> Report:
    """The two rewrite identities for mixed left/right actions, plus an informational bimodule test."""
    rep = Report("mixed-actions")
    d, H, f, n = b.datum, b.hopf, b.datum.field, b.n
    bad1, bad2, bad_bi, bad_full = [], [], [], []
    for i, j in itertools.product(range(n), repeat=2):
        if d.dims[i][j] == 0:
            continue
        s = b.left_smashes[i]
        U = b.diag_actions[i].unit_images()
        L, R = b.left[(i, j)], b.right[(i, j)]
        Lh, Rh = b.hopf_left(i, j), b.hopf_right(i, j)
        # ((1#h) . m) . (k#1) = ((k1 -> 1) # k2 h) . m
        X = einsum(f, "kpq,pa,qhl,alx->khx", H.comult, U, H.mult, s.sharp)
        _collect(bad1, (i, j), einsum(f, "huv,kvw->hkuw", Lh, Rh), einsum(f, "khx,xuw->hkuw", X, L))
        # (1#h) . (m . (k#1)) = ((h1 -> 1) # h2 k) . m
        Y = einsum(f, "hpq,pa,qkl,alx->hkx", H.comult, U, H.mult, s.sharp)
        _collect(bad2, (i, j), einsum(f, "kuv,hvw->hkuw", Rh, Lh), einsum(f, "hkx,xuw->hkuw", Y, L))
        # the two rewrites above, compared with each other
        _collect(bad_bi, (i, j), einsum(f, "huv,kvw->hkuw", Lh, Rh), einsum(f, "kuv,hvw->hkuw", Rh, Lh))
        _collect(bad_full, (i, j), einsum(f, "xuv,vyw->xyuw", L, R), einsum(f, "uyv,xvw->xyuw", R, L))
    rep.add("rewrite-left-then-right", not bad1, bad1)
    rep.add("rewrite-right-then-left", not bad2, bad2)
    rep.add("bimodule", not bad_bi, bad_bi, informational=True,
            note="holds here" if not bad_bi else "mixed actions of 1#h and k#1 do not commute")
    rep.add("bimodule-full", not bad_full, bad_full, informational=True,
            note="over the whole smash algebras")
    return rep


# Morita ring of an idempotent

@dataclass(frozen=True, eq=False)
class MoritaRingAction:
    blocked: BlockedAlgebra
    action: PartialActionMap
    blocks: tuple
    report: Report


def morita_ring_action(p: PartialActionMap, e) -> MoritaRingAction:
    """Blocks (A, Ae; eA, eAe) with h |> (a, b, c, d) = (h.a, (h.b)e, e(h.c), e(h.d)e)."""
    if p.side != "left":
        raise ValueError("needs a left action")
    A, H, f = p.algebra, p.hopf, p.field
    e = np.asarray(e, dtype=object)
    rep = Report("morita-ring-action")
    rep.extend(check_left_partial_action(p), "action.")
    idem = equal(A.mul(e, e), e)
    rep.add("idempotent", idem, [] if idem else [()])
    bad = []
    for h in range(H.dim):
        if not equal(p.act(f.unit_vector(H.dim, h), e), f.clean(H.counit[h] * e)):
            bad.append((h,))
    rep.add("counit-fixes-idempotent", not bad, bad)
    if not rep.passed:
        raise CheckFailure(f"rejected: {rep.first_failure}", rep)
    one = A.unit
    full = Subspace.full(f, A.dim)
    right_e = Subspace.span([A.mul(A.basis(a), e) for a in range(A.dim)], f, A.dim)
    left_e = Subspace.span([A.mul(e, A.basis(a)) for a in range(A.dim)], f, A.dim)
    corner = Subspace.span([A.mul(A.mul(e, A.basis(a)), e) for a in range(A.dim)], f, A.dim)
    blocks = ((full, right_e), (left_e, corner))
    datum, _ = subspace_datum(A, blocks, (one, e))
    r = assemble(datum)
    sides = {(0, 0): lambda x: x, (0, 1): lambda x: A.mul(x, e),
             (1, 0): lambda x: A.mul(e, x), (1, 1): lambda x: A.mul(A.mul(e, x), e)}
    T = f.zeros((H.dim, r.total.dim, r.total.dim))
    for (i, j), wrap in sides.items():
        S = blocks[i][j]
        for h in range(H.dim):
            for u in range(S.dim):
                img = wrap(p.act(f.unit_vector(H.dim, h), S.basis[u]))
                c = S.coords(img)
                if c is None:
                    raise CheckFailure(f"image leaves block ({i + 1},{j + 1})")
                T[h, r.offsets[i][j] + u, r.offsets[i][j]: r.offsets[i][j] + S.dim] = c
    q = PartialActionMap(H, r.total, "left", T)
    rep.extend(check_left_partial_action(q), "ring-action.")
    rep.extend(check_block_invariance(r, q), "ring-")
    return MoritaRingAction(r, q, blocks, rep)
