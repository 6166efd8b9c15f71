"""Morita contexts, their rings, Morita-equivalent partial actions and partial (B,H)-modules."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import FinDimAlgebra
from .gma import GeneralizedMatrixDatum, assemble, check_datum
from .gma_partial import (
    BlockPartialData,
    _collect,
    check_block_invariance,
    check_block_partial_data,
    synthesize,
)
from .linalg import DimensionMismatchError, Subspace, einsum, equal
from .partial_action import PartialActionMap, check_left_partial_action, check_right_partial_action
from .report import Report


@dataclass(frozen=True, eq=False)
class MoritaContextData:
    """Tensors are structure constants with the output index last.

    m_left[x, u, w]: a_x . m_u      m_right[u, y, w]: m_u . b_y
    n_left[y, v, w]: b_y . n_v      n_right[v, x, w]: n_v . a_x
    mu[u, v, x]: pairing M (x) N -> A      nu[v, u, y]: pairing N (x) M -> B
    """

    a: FinDimAlgebra
    b: FinDimAlgebra
    m_left: np.ndarray
    m_right: np.ndarray
    n_left: np.ndarray
    n_right: np.ndarray
    mu: np.ndarray
    nu: np.ndarray

    def __post_init__(self):
        da, db = self.a.dim, self.b.dim
        dm, dn = self.m_left.shape[1], self.n_left.shape[1]
        shapes = {
            "m_left": (self.m_left, (da, dm, dm)), "m_right": (self.m_right, (dm, db, dm)),
            "n_left": (self.n_left, (db, dn, dn)), "n_right": (self.n_right, (dn, da, dn)),
            "mu": (self.mu, (dm, dn, da)), "nu": (self.nu, (dn, dm, db)),
        }
        for name, (t, s) in shapes.items():
            if t.shape != s:
                raise DimensionMismatchError(f"{name} has shape {t.shape}, expected {s}")

    @property
    def dim_m(self) -> int:
        return self.m_left.shape[1]

    @property
    def dim_n(self) -> int:
        return self.n_left.shape[1]


def morita_ring(c: MoritaContextData) -> GeneralizedMatrixDatum:
    """Blocks (A, M; N, B)."""
    theta = {
        (0, 0, 0): c.a.mult, (0, 0, 1): c.m_left, (0, 1, 0): c.mu, (0, 1, 1): c.m_right,
        (1, 0, 0): c.n_right, (1, 0, 1): c.nu, (1, 1, 0): c.n_left, (1, 1, 1): c.b.mult,
    }
    dims = ((c.a.dim, c.dim_m), (c.dim_n, c.b.dim))
    return GeneralizedMatrixDatum(c.a.field, dims, theta, (c.a.unit, c.b.unit))


def context_from_datum(d: GeneralizedMatrixDatum) -> MoritaContextData:
    if d.n != 2:
        raise ValueError("a Morita context needs a 2-block datum")
    t = d.theta
    return MoritaContextData(d.diagonal_algebra(0), d.diagonal_algebra(1), t[(0, 0, 1)], t[(0, 1, 1)],
                             t[(1, 1, 0)], t[(1, 0, 0)], t[(0, 1, 0)], t[(1, 0, 1)])


def _bimodule(rep, name, f, L, R, la, ra):
    """Left action L by algebra la, right action R by algebra ra."""
    bad = {k: [] for k in ("left-unital", "left-associative", "right-unital", "right-associative", "compatible")}
    dm = L.shape[1]
    ident = f.identity(dm)
    _collect(bad["left-unital"], (), einsum(f, "x,xuw->uw", la.unit, L), ident)
    _collect(bad["left-associative"], (), einsum(f, "xyz,zuw->xyuw", la.mult, L), einsum(f, "yuv,xvw->xyuw", L, L))
    _collect(bad["right-unital"], (), einsum(f, "y,uyw->uw", ra.unit, R), ident)
    _collect(bad["right-associative"], (), einsum(f, "yzq,uqw->uyzw", ra.mult, R), einsum(f, "uyv,vzw->uyzw", R, R))
    _collect(bad["compatible"], (), einsum(f, "xuv,vyw->xuyw", L, R), einsum(f, "uyv,xvw->xuyw", R, L))
    for k, ws in bad.items():
        rep.add(f"{name}.{k}", not ws, ws)


def check_morita_context(c: MoritaContextData, strict: bool = True) -> Report:
    rep = Report("morita-context")
    f = c.a.field
    _bimodule(rep, "M", f, c.m_left, c.m_right, c.a, c.b)
    _bimodule(rep, "N", f, c.n_left, c.n_right, c.b, c.a)
    checks = {
        # mu(m b, n) = mu(m, b n)
        "mu.balanced": (einsum(f, "uyq,qvx->uyvx", c.m_right, c.mu), einsum(f, "yvq,uqx->uyvx", c.n_left, c.mu)),
        # mu(a m, n) = a mu(m, n)
        "mu.left-linear": (einsum(f, "zuq,qvx->zuvx", c.m_left, c.mu), einsum(f, "uvy,zyx->zuvx", c.mu, c.a.mult)),
        # mu(m, n a) = mu(m, n) a
        "mu.right-linear": (einsum(f, "vzq,uqx->uvzx", c.n_right, c.mu), einsum(f, "uvy,yzx->uvzx", c.mu, c.a.mult)),
        "nu.balanced": (einsum(f, "vxq,quy->vxuy", c.n_right, c.nu), einsum(f, "xuq,vqy->vxuy", c.m_left, c.nu)),
        "nu.left-linear": (einsum(f, "zvq,quy->zvuy", c.n_left, c.nu), einsum(f, "vuw,zwy->zvuy", c.nu, c.b.mult)),
        "nu.right-linear": (einsum(f, "uzq,vqy->vuzy", c.m_right, c.nu), einsum(f, "vuw,wzy->vuzy", c.nu, c.b.mult)),
        # mu(m, n) m' = m nu(n, m')
        "associative-M": (einsum(f, "uvx,xtw->uvtw", c.mu, c.m_left), einsum(f, "vty,uyw->uvtw", c.nu, c.m_right)),
        # nu(n, m) n' = n mu(m, n')
        "associative-N": (einsum(f, "vuy,ytw->vutw", c.nu, c.n_left), einsum(f, "utx,vxw->vutw", c.mu, c.n_right)),
    }
    for tag, (lhs, rhs) in checks.items():
        bad = []
        _collect(bad, (), lhs, rhs)
        rep.add(tag, not bad, bad)
    if strict:
        for tag, t, dim in (("mu.surjective", c.mu, c.a.dim), ("nu.surjective", c.nu, c.b.dim)):
            img = Subspace.span(list(t.reshape(-1, dim)), f, dim) if t.size else Subspace.span([], f, dim)
            rep.add(tag, img.dim == dim, [] if img.dim == dim else [(img.dim, dim)])
    rep.extend(check_datum(morita_ring(c)), "ring.")
    return rep


def check_morita_equivalent(pa: PartialActionMap, pb: PartialActionMap, c: MoritaContextData,
                            pr: PartialActionMap) -> Report:
    """pr acts on the Morita ring, keeps both corners, and restricts to pa and pb there."""
    rep = Report("morita-equivalence")
    r = assemble(morita_ring(c), validate=False)
    if pr.algebra.dim != r.total.dim or not equal(pr.algebra.mult, r.total.mult):
        raise DimensionMismatchError("ring action does not act on the Morita ring of the context")
    rep.extend(check_left_partial_action(pr), "ring-action.")
    inv = check_block_invariance(r, pr)
    for (i, j) in ((0, 0), (1, 1)):
        c_ = inv.get(f"invariant[{i + 1},{j + 1}]")
        rep.add(f"corner-invariant[{i + 1}]", c_.passed, c_.witnesses)
    for (i, j) in ((0, 1), (1, 0)):
        c_ = inv.get(f"invariant[{i + 1},{j + 1}]")
        rep.add(f"off-diagonal-invariant[{i + 1},{j + 1}]", c_.passed, c_.witnesses, informational=True)
    if not rep.passed:
        return rep
    for k, p in enumerate((pa, pb)):
        rows = list(r.block_range(k, k))
        restricted = pr.tensor[:, rows][:, :, rows]
        bad = []
        _collect(bad, (), restricted, p.tensor)
        rep.add(f"restriction[{k + 1}]", not bad, bad)
    return rep


def check_block_conditions(pa: PartialActionMap, pb: PartialActionMap, c: MoritaContextData,
                 blockdata: BlockPartialData) -> tuple[Report, PartialActionMap | None]:
    """Conditions (i)-(iii) on the two-block data, then synthesis and the equivalence check.

    Synthesis also needs multiplicativity on the blocks, so that is verified before it runs.
    """
    rep = Report("morita-block-conditions")
    if blockdata.n != 2 or not blockdata.datum.same_as(morita_ring(c)):
        raise DimensionMismatchError("block data is not over the Morita ring of the context")
    rep.extend(check_left_partial_action(pa), "i.A.")
    rep.extend(check_left_partial_action(pb), "i.B.")
    for k, p in enumerate((pa, pb)):
        ok = equal(blockdata.diag_actions[k].tensor, p.tensor)
        rep.add(f"i.diagonal-action[{k + 1}]", ok, [] if ok else [(k,)])
    full = check_block_partial_data(blockdata)
    for label, blk in (("ii", (0, 1)), ("iii", (1, 0))):
        for chk in full.checks:
            if chk.tag.startswith("action") or chk.tag == "c":
                continue
            ws = [w for w in chk.witnesses if tuple(w[:2]) == blk]
            if chk.tag == "b-action":
                continue
            rep.add(f"{label}.{chk.tag}", not ws, ws)
    cc = full.get("c")
    rep.add("multiplicative", cc.passed, cc.witnesses)
    if not rep.passed:
        rep.add("synthesis", False, [()], note="refused")
        return rep, None
    _, pr = synthesize(blockdata)
    rep.extend(check_morita_equivalent(pa, pb, c, pr), "equivalence.")
    return rep, pr


def check_partial_bh_module(nb: np.ndarray, nh: np.ndarray, b_action: PartialActionMap) -> Report:
    """nb[u, y, w]: n_u . b_y; nh[u, h, w]: n_u h. Axioms n 1_H = n and ((n k) b) h = (n (k h1)) (b . h2)."""
    if b_action.side != "right":
        raise ValueError("partial (B,H)-modules are typed against a right partial action")
    rep = Report("partial-bh-module")
    B, H, f = b_action.algebra, b_action.hopf, b_action.field
    dn = nb.shape[0]
    if nb.shape != (dn, B.dim, dn) or nh.shape != (dn, H.dim, dn):
        raise DimensionMismatchError("module tensors have wrong shape")
    rep.extend(check_right_partial_action(b_action), "action.")
    bad = {k: [] for k in ("module-unital", "module-associative", "unit-acts-trivially", "compatible")}
    ident = f.identity(dn)
    _collect(bad["module-unital"], (), einsum(f, "y,uyw->uw", B.unit, nb), ident)
    _collect(bad["module-associative"], (), einsum(f, "yzq,uqw->uyzw", B.mult, nb),
             einsum(f, "uyv,vzw->uyzw", nb, nb))
    _collect(bad["unit-acts-trivially"], (), einsum(f, "h,uhw->uw", H.unit, nh), ident)
    lhs = einsum(f, "ukv,vbx,xhw->ukbhw", nh, nb, nh)
    rhs = einsum(f, "hpq,kpl,ulv,bqy,vyw->ukbhw", H.comult, H.mult, nh, b_action.tensor, nb)
    _collect(bad["compatible"], (), lhs, rhs)
    for k, ws in bad.items():
        rep.add(k, not ws, ws)
    return rep
