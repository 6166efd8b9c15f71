"""Symmetric partial actions, partial representations, and the group-algebra bridge."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import isqrt

import numpy as np

from .algebra import FinDimAlgebra, LinearMap, endomorphism_algebra, opposite
from .hopf import GroupTable, HopfAlgebra, coproduct_tensor, group_algebra, variants
from .linalg import DimensionMismatchError, Field, Subspace, einsum, equal, inverse
from .report import CheckFailure, Report


@dataclass(frozen=True, eq=False)
class PartialActionMap:
    """Left: tensor[h, a, c] is the e_c-coefficient of e_h . e_a.
    Right: tensor[a, h, c] is the e_c-coefficient of e_a . e_h."""

    hopf: HopfAlgebra
    algebra: FinDimAlgebra
    side: str
    tensor: np.ndarray

    def __post_init__(self):
        if self.side not in ("left", "right"):
            raise ValueError(f"side must be left or right, got {self.side!r}")
        dh, da = self.hopf.dim, self.algebra.dim
        expect = (dh, da, da) if self.side == "left" else (da, dh, da)
        if self.tensor.shape != expect:
            raise DimensionMismatchError(f"action tensor shape {self.tensor.shape}, expected {expect}")
        if self.hopf.field != self.algebra.field:
            raise DimensionMismatchError("Hopf algebra and algebra live over different fields")

    @property
    def field(self) -> Field:
        return self.algebra.field

    def act(self, h, a) -> np.ndarray:
        h = np.asarray(h, dtype=object)
        a = np.asarray(a, dtype=object)
        if self.side == "left":
            return einsum(self.field, "h,a,hac->c", h, a, self.tensor)
        return einsum(self.field, "h,a,ahc->c", h, a, self.tensor)

    def unit_images(self) -> np.ndarray:
        """Row h holds h . 1_A (left) or 1_A . h (right)."""
        one = self.algebra.unit
        if self.side == "left":
            return einsum(self.field, "a,hac->hc", one, self.tensor)
        return einsum(self.field, "a,ahc->hc", one, self.tensor)

    def same_as(self, other: "PartialActionMap") -> bool:
        return self.side == other.side and equal(self.tensor, other.tensor)


def global_trivial_action(hopf: HopfAlgebra, alg: FinDimAlgebra, side: str = "left") -> PartialActionMap:
    """h . a = eps(h) a."""
    f = alg.field
    t = einsum(f, "h,ac->hac", hopf.counit, f.identity(alg.dim))
    if side == "right":
        t = np.ascontiguousarray(t.transpose(1, 0, 2))
    return PartialActionMap(hopf, alg, side, t)


def conjugation_action(hopf: HopfAlgebra, mats, alg: FinDimAlgebra | None = None) -> PartialActionMap:
    """g . X = T_g X T_g^-1 on End(k^n) for a group algebra; mats[g] is T_g."""
    if hopf.group is None:
        raise ValueError("conjugation needs a group algebra")
    f = hopf.field
    n = mats[0].shape[0]
    end = alg if alg is not None else endomorphism_algebra(n, f)
    t = f.zeros((hopf.dim, n * n, n * n))
    for g, T in enumerate(mats):
        Ti = inverse(T, f)
        if Ti is None:
            raise ValueError(f"matrix for element {g} is singular")
        for a in range(n * n):
            X = end.basis(a).reshape(n, n)
            t[g, a] = f.clean(T.dot(X).dot(Ti)).reshape(-1)
    return PartialActionMap(hopf, end, "left", t)


def transport_action(p: PartialActionMap, iso: np.ndarray, target: FinDimAlgebra) -> PartialActionMap:
    """Move a left action along iso: target -> p.algebra (columns are images)."""
    f = p.field
    back = inverse(iso, f)
    if back is None:
        raise ValueError("transport needs an invertible map")
    t = einsum(f, "ba,hbc,dc->had", iso, p.tensor, back)
    return PartialActionMap(p.hopf, target, "left", t)


def check_left_partial_action(p: PartialActionMap, deep: bool = False) -> Report:
    if p.side != "left":
        raise ValueError("left checker given a right action")
    rep = Report("left-partial-action")
    f, P = p.field, p.tensor
    H, A = p.hopf, p.algebra
    D, mH, mA = H.comult, H.mult, A.mult
    rep.add_equal("LPA1", einsum(f, "h,hac->ac", H.unit, P), f.identity(A.dim))
    lhs = einsum(f, "abm,hmc->habc", mA, P)
    rhs = einsum(f, "hpq,pax,qby,xyc->habc", D, P, P, mA)
    rep.add_equal("LPA2", lhs, rhs)
    U = p.unit_images()
    HK = einsum(f, "qkr,ray->qkay", mH, P)  # (q k) . a
    lhs = einsum(f, "kam,hmc->hkac", P, P)
    rep.add_equal("LPA3-left", lhs, einsum(f, "hpq,px,qkay,xyc->hkac", D, U, HK, mA))
    rep.add_equal("LPA3-right", lhs, einsum(f, "hpq,pkax,qy,xyc->hkac", D, HK, U, mA))
    if deep:
        _derived_identities(p, rep, HK, U)
    return rep


def _derived_identities(p: PartialActionMap, rep: Report, HK, U) -> None:
    f, P = p.field, p.tensor
    H, A = p.hopf, p.algebra
    D, mA = H.comult, A.mult
    D3 = coproduct_tensor(H, 3)
    KA = einsum(f, "kam,hmx->hkax", P, P)  # h . (k . a)
    a1 = einsum(f, "hpq,pkax,qby,xyc->hkabc", D, KA, P, mA)
    a2 = einsum(f, "hpqr,pkax,qu,rby,xuv,vyc->hkabc", D3, HK, U, P, mA, mA)
    a3 = einsum(f, "hpq,pkax,qby,xyc->hkabc", D, HK, P, mA)
    rep.add_equal("derived-1-middle", a1, a2, note="consequence of LPA2-3")
    rep.add_equal("derived-1", a1, a3, note="consequence of LPA2-3")
    b1 = einsum(f, "hpq,pax,qkby,xyc->hkabc", D, P, KA, mA)
    b2 = einsum(f, "hpqr,pax,qu,rkby,xuv,vyc->hkabc", D3, P, U, HK, mA, mA)
    b3 = einsum(f, "hpq,pax,qkby,xyc->hkabc", D, P, HK, mA)
    rep.add_equal("derived-2-middle", b1, b2, note="consequence of LPA2-3")
    rep.add_equal("derived-2", b1, b3, note="consequence of LPA2-3")


def check_right_partial_action(p: PartialActionMap) -> Report:
    if p.side != "right":
        raise ValueError("right checker given a left action")
    rep = Report("right-partial-action")
    f, P = p.field, p.tensor
    K, A = p.hopf, p.algebra
    D, mK, mA = K.comult, K.mult, A.mult
    rep.add_equal("RPA1", einsum(f, "h,ahc->ac", K.unit, P), f.identity(A.dim))
    lhs = einsum(f, "abm,mhc->abhc", mA, P)
    rhs = einsum(f, "hpq,apx,bqy,xyc->abhc", D, P, P, mA)
    rep.add_equal("RPA2", lhs, rhs)
    V = p.unit_images()
    KH = einsum(f, "kpr,arx->akpx", mK, P)  # a . (k p)
    lhs = einsum(f, "akm,mhc->akhc", P, P)
    rep.add_equal("RPA3-left", lhs, einsum(f, "hpq,akpx,qy,xyc->akhc", D, KH, V, mA))
    rep.add_equal("RPA3-right", lhs, einsum(f, "hpq,px,akqy,xyc->akhc", D, V, KH, mA))
    return rep


def check_partial_action(p: PartialActionMap, deep: bool = False) -> Report:
    if p.side == "left":
        return check_left_partial_action(p, deep)
    return check_right_partial_action(p)


def to_right(p: PartialActionMap, validate: bool = True) -> PartialActionMap:
    """a <| h := h . a, a right partial action of H^op."""
    if p.side != "left":
        raise ValueError("to_right needs a left action")
    if validate:
        rep = check_left_partial_action(p)
        if not rep.passed:
            raise CheckFailure(f"input action fails {rep.first_failure}", rep)
    return PartialActionMap(variants(p.hopf, "op"), p.algebra, "right",
                            np.ascontiguousarray(p.tensor.transpose(1, 0, 2)))


# partial representations

@dataclass(frozen=True, eq=False)
class PartialRepresentation:
    """matrix[:, h] is pi(e_h) in target coordinates."""

    hopf: HopfAlgebra
    target: FinDimAlgebra
    matrix: np.ndarray

    def __post_init__(self):
        if self.matrix.shape != (self.target.dim, self.hopf.dim):
            raise DimensionMismatchError("representation matrix has wrong shape")

    @property
    def as_map(self) -> LinearMap:
        return LinearMap(self.matrix)


@lru_cache(maxsize=32)
def _cached_end(n: int, field: Field) -> FinDimAlgebra:
    return endomorphism_algebra(n, field)


def _end_shape(b: FinDimAlgebra) -> tuple[int, bool] | None:
    """(n, reversed) when b is End(k^n) or its opposite in the matrix-unit basis."""
    n = isqrt(b.dim)
    if n == 0 or n * n != b.dim:
        return None
    end = _cached_end(n, b.field)
    if not equal(b.unit, end.unit):
        return None
    if equal(b.mult, end.mult):
        return n, False
    if equal(b.mult, end.mult.transpose(1, 0, 2)):
        return n, True
    return None


def _check_operator_representation(r: PartialRepresentation, n: int, rev: bool, rep: Report) -> Report:
    """Same identities as below, with products in End(k^n) done as n x n matrix products."""
    H, f = r.hopf, r.target.field
    S, D, mH = H.antipode, H.comult, H.mult
    O = np.ascontiguousarray(r.matrix.T).reshape(H.dim, n, n)

    def mm(spec_l: str, spec_r: str, out: str, x, y):
        # (x y) in the target: plain matrix product, reversed for the opposite algebra
        if rev:
            x, y, spec_l, spec_r = y, x, spec_r, spec_l
        return einsum(f, f"{spec_l}ab,{spec_r}bc->{out}ac", x, y)

    OS = einsum(f, "rh,rab->hab", S, O)
    rep.add_equal("PR1", einsum(f, "h,hab->ab", H.unit, O).reshape(1, n, n), f.identity(n).reshape(1, n, n),
                  out_axes=2)
    C = einsum(f, "kpq,pqac->kac", D, mm("p", "q", "pq", O, OS))
    C2 = einsum(f, "kpq,pqac->kac", D, mm("p", "q", "pq", OS, O))
    PiM = einsum(f, "hpr,rab->hpab", mH, O)
    rep.add_equal("PR2", mm("h", "k", "hk", O, C),
                  einsum(f, "kpq,hpqac->hkac", D, mm("hp", "q", "hpq", PiM, OS)), out_axes=2)
    SK = einsum(f, "rq,rks,sab->qkab", S, mH, O)
    rep.add_equal("PR3", mm("h", "k", "hk", C, O),
                  einsum(f, "hpq,pqkac->hkac", D, mm("p", "qk", "pqk", O, SK)), out_axes=2)
    HS = einsum(f, "rp,hrs,sab->hpab", S, mH, O)
    rep.add_equal("PR4", mm("h", "k", "hk", O, C2),
                  einsum(f, "kpq,hpqac->hkac", D, mm("hp", "q", "hpq", HS, O)), out_axes=2,
                  note="consequence of PR1-3")
    rep.add_equal("PR5", mm("h", "k", "hk", C2, O),
                  einsum(f, "hpq,pqkac->hkac", D, mm("p", "qk", "pqk", OS, PiM)), out_axes=2,
                  note="consequence of PR1-3")
    return rep


def check_partial_representation(r: PartialRepresentation, operator_form: bool = True) -> Report:
    """With operator_form, End(k^n) targets are multiplied as matrices instead of through mult."""
    rep = Report("partial-representation")
    shape = _end_shape(r.target) if operator_form else None
    if shape is not None:
        return _check_operator_representation(r, shape[0], shape[1], rep)
    H, B = r.hopf, r.target
    f = B.field
    Pi, S, D, mH, mB = r.matrix, H.antipode, H.comult, H.mult, B.mult
    SPi = f.clean(Pi.dot(S))
    rep.add_equal("PR1", f.clean(Pi.dot(H.unit)).reshape(1, -1), B.unit.reshape(1, -1))
    C = einsum(f, "kpq,yp,wq,ywu->ku", D, Pi, SPi, mB)  # pi(k1) pi(S k2)
    C2 = einsum(f, "kpq,yp,wq,ywu->ku", D, SPi, Pi, mB)  # pi(S k1) pi(k2)
    PiM = einsum(f, "hpr,xr->hpx", mH, Pi)  # pi(h p)
    rep.add_equal("PR2", einsum(f, "xh,ku,xuz->hkz", Pi, C, mB),
                  einsum(f, "kpq,hpx,wq,xwz->hkz", D, PiM, SPi, mB))
    SK = einsum(f, "rq,rks,ws->qkw", S, mH, Pi)  # pi(S(q) k)
    rep.add_equal("PR3", einsum(f, "hu,xk,uxz->hkz", C, Pi, mB),
                  einsum(f, "hpq,yp,qkw,ywz->hkz", D, Pi, SK, mB))
    HS = einsum(f, "rp,hrs,xs->hpx", S, mH, Pi)  # pi(h S(p))
    rep.add_equal("PR4", einsum(f, "xh,ku,xuz->hkz", Pi, C2, mB),
                  einsum(f, "kpq,hpx,wq,xwz->hkz", D, HS, Pi, mB), note="consequence of PR1-3")
    rep.add_equal("PR5", einsum(f, "hu,xk,uxz->hkz", C2, Pi, mB),
                  einsum(f, "hpq,yp,qkw,ywz->hkz", D, SPi, PiM, mB), note="consequence of PR1-3")
    return rep


def induced_representation(p: PartialActionMap, validate: bool = True) -> PartialRepresentation:
    """pi(h)(a) = h . a, into End(A) in the matrix-unit basis."""
    if p.side != "left":
        raise ValueError("induced representation needs a left action")
    if validate:
        rep = check_left_partial_action(p)
        if not rep.passed:
            raise CheckFailure(f"input action fails {rep.first_failure}", rep)
    n = p.algebra.dim
    end = endomorphism_algebra(n, p.field)
    cols = [np.ascontiguousarray(p.tensor[h].T).reshape(-1) for h in range(p.hopf.dim)]
    return PartialRepresentation(p.hopf, end, np.stack(cols, axis=1))


def opcop_representation(r: PartialRepresentation) -> PartialRepresentation:
    """The same linear map, read as H^opcop -> B^op."""
    return PartialRepresentation(variants(r.hopf, "opcop"), opposite(r.target), r.matrix)


def representation_from_operators(hopf: HopfAlgebra, ops: list[np.ndarray], field: Field) -> PartialRepresentation:
    n = ops[0].shape[0] if ops else 0
    end = endomorphism_algebra(n, field)
    return PartialRepresentation(hopf, end, np.stack([np.ascontiguousarray(o).reshape(-1) for o in ops], axis=1))


# unital partial group actions

@dataclass(frozen=True, eq=False)
class UnitalPartialGroupAction:
    """1_g generates D_g = A 1_g; alpha[g] maps the canonical basis of D_{g^-1} into A."""

    group: GroupTable
    algebra: FinDimAlgebra
    idempotents: np.ndarray  # order x dim
    alpha: tuple[np.ndarray, ...]

    @property
    def field(self) -> Field:
        return self.algebra.field

    def domain(self, g: int) -> Subspace:
        """D_g = A 1_g."""
        return ideal_of(self.algebra, self.idempotents[g])

    def apply(self, g: int, x) -> np.ndarray:
        """alpha_g(x) for x in D_{g^-1}; raises if x lies outside."""
        c = self.domain(self.group.inv(g)).coords(x)
        if c is None:
            raise ValueError(f"vector outside the domain of alpha_{g}")
        return self.field.clean(self.alpha[g].dot(c)) if c.size else self.field.zeros(self.algebra.dim)

    def same_as(self, other: "UnitalPartialGroupAction") -> bool:
        return (self.group.same_as(other.group) and equal(self.idempotents, other.idempotents)
                and len(self.alpha) == len(other.alpha)
                and all(a.shape == b.shape and equal(a, b) for a, b in zip(self.alpha, other.alpha)))


def ideal_of(alg: FinDimAlgebra, e) -> Subspace:
    """A e as a subspace (canonical basis)."""
    right = alg.right_mult_matrix(e)
    return Subspace.span([right[:, i] for i in range(alg.dim)], alg.field, alg.dim)


def check_group_action(u: UnitalPartialGroupAction) -> Report:
    rep = Report("unital-partial-group-action")
    G, A, f = u.group, u.algebra, u.field
    n = G.order
    bad_idem, bad_central = [], []
    for g in range(n):
        e = u.idempotents[g]
        if not equal(A.mul(e, e), e):
            bad_idem.append((g,))
        for i in range(A.dim):
            b = A.basis(i)
            if not equal(A.mul(e, b), A.mul(b, e)):
                bad_central.append((g, i))
    rep.add("idempotent", not bad_idem, bad_idem)
    rep.add("central", not bad_central, bad_central)
    rep.add("identity-domain", equal(u.idempotents[0], A.unit), [] if equal(u.idempotents[0], A.unit) else [(0,)])
    domains = [u.domain(g) for g in range(n)]
    shape_bad = [(g,) for g in range(n) if u.alpha[g].shape != (A.dim, domains[G.inv(g)].dim)]
    rep.add("alpha-shape", not shape_bad, shape_bad)
    if shape_bad:
        return rep
    ident_ok = equal(u.alpha[0], domains[0].embedding())
    rep.add("alpha-identity", ident_ok, [] if ident_ok else [(0,)])
    bad_img, bad_bij, bad_mult = [], [], []
    for g in range(n):
        src, dst = domains[G.inv(g)], domains[g]
        imgs = [u.alpha[g][:, c] for c in range(src.dim)]
        if not all(dst.contains(v) for v in imgs):
            bad_img.append((g,))
        if src.dim != dst.dim or Subspace.span(imgs, f, A.dim).dim != dst.dim:
            bad_bij.append((g,))
        for x in range(src.dim):
            for y in range(src.dim):
                prod = A.mul(src.basis[x], src.basis[y])
                c = src.coords(prod)
                lhs = f.clean(u.alpha[g].dot(c)) if c is not None and c.size else f.zeros(A.dim)
                if c is None or not equal(lhs, A.mul(imgs[x], imgs[y])):
                    bad_mult.append((g, x, y))
    rep.add("alpha-into-domain", not bad_img, bad_img)
    rep.add("alpha-bijective", not bad_bij, bad_bij)
    rep.add("alpha-multiplicative", not bad_mult, bad_mult)
    if bad_img or bad_bij:
        return rep
    bad_dom, bad_comp = [], []
    for g in range(n):
        for h in range(n):
            target = domains[G.inv(g)].intersect(domains[h])
            pre = [_preimage(u, h, t) for t in target.basis]
            gh = G.mul(g, h)
            for w_idx, w in enumerate(pre):
                if not domains[G.inv(gh)].contains(w):
                    bad_dom.append((g, h, w_idx))
                    continue
                if not equal(u.apply(g, u.apply(h, w)), u.apply(gh, w)):
                    bad_comp.append((g, h, w_idx))
    rep.add("composition-domain", not bad_dom, bad_dom)
    rep.add("composition", not bad_comp, bad_comp)
    return rep


def _preimage(u: UnitalPartialGroupAction, h: int, y) -> np.ndarray:
    """The unique x in D_{h^-1} with alpha_h(x) = y."""
    from .linalg import solve_linear
    src = u.domain(u.group.inv(h))
    sol = solve_linear(u.alpha[h], list(y), u.field)
    if sol is None:
        raise ValueError("vector outside the image of alpha")
    return u.field.clean(np.array(sol, dtype=object).dot(src.basis)) if src.dim else u.field.zeros(u.algebra.dim)


def group_to_hopf(u: UnitalPartialGroupAction, validate: bool = True) -> PartialActionMap:
    """g . a = alpha_g(a 1_{g^-1}) as a left partial action of kG."""
    if validate:
        rep = check_group_action(u)
        if not rep.passed:
            raise CheckFailure(f"group action fails {rep.first_failure}", rep)
    G, A, f = u.group, u.algebra, u.field
    hopf = group_algebra(G, f)
    t = f.zeros((G.order, A.dim, A.dim))
    for g in range(G.order):
        e = u.idempotents[G.inv(g)]
        for a in range(A.dim):
            t[g, a, :] = u.apply(g, A.mul(A.basis(a), e))
    return PartialActionMap(hopf, A, "left", t)


def hopf_to_group(p: PartialActionMap, validate: bool = True) -> UnitalPartialGroupAction:
    """1_g := g . 1_A, D_g := A 1_g, alpha_g := restriction of a -> g . a to D_{g^-1}."""
    if p.side != "left":
        raise ValueError("group bridge needs a left action")
    G = p.hopf.group
    if G is None:
        raise ValueError("Hopf algebra was not built as a group algebra")
    if validate:
        rep = check_left_partial_action(p)
        if not rep.passed:
            raise CheckFailure(f"input action fails {rep.first_failure}", rep)
    A, f = p.algebra, p.field
    ones = p.unit_images()
    rep = Report("group-bridge")
    bad_idem, bad_central = [], []
    for g in range(G.order):
        e = ones[g]
        if not equal(A.mul(e, e), e):
            bad_idem.append((g,))
        for i in range(A.dim):
            if not equal(A.mul(e, A.basis(i)), A.mul(A.basis(i), e)):
                bad_central.append((g, i))
    rep.add("idempotent", not bad_idem, bad_idem)
    rep.add("central", not bad_central, bad_central)
    if not rep.passed:
        raise CheckFailure(f"g . 1_A fails {rep.first_failure}", rep)
    alphas = []
    for g in range(G.order):
        dom = ideal_of(A, ones[G.inv(g)])
        cols = [p.act(f.unit_vector(G.order, g), b) for b in dom.basis]
        alphas.append(np.stack(cols, axis=1) if cols else f.zeros((A.dim, 0)))
    return UnitalPartialGroupAction(G, A, f.clean(ones), tuple(alphas))
