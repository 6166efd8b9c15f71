"""Partial smash products, covariant pairs, universal morphisms and partial crossed products."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import FinDimAlgebra, LinearMap, check_algebra, check_algebra_morphism, opposite
from .hopf import GroupTable, HopfAlgebra, variants
from .linalg import Field, Subspace, einsum, equal, solve_many
from .partial_action import (
    PartialActionMap,
    PartialRepresentation,
    UnitalPartialGroupAction,
    check_group_action,
    check_left_partial_action,
    check_partial_representation,
    check_right_partial_action,
    group_to_hopf,
    to_right,
)
from .report import CheckFailure, Report


@dataclass(frozen=True, eq=False)
class SmashAlgebra:
    """A subalgebra of A (x) H (left) or H (x) A (right) with its own canonical basis.

    sharp[a, h] (left) or sharp[h, a] (right) holds the coordinates of the generator a#h
    (resp. h#a) in the canonical basis.
    """

    side: str
    action: PartialActionMap
    ambient_mult: np.ndarray
    projector: np.ndarray
    space: Subspace
    algebra: FinDimAlgebra
    sharp: np.ndarray

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def field(self) -> Field:
        return self.action.field

    @property
    def basis(self) -> np.ndarray:
        return self.space.basis

    def coords(self, ambient_vector):
        return self.space.coords(ambient_vector)

    def to_ambient(self, coords) -> np.ndarray:
        return self.field.clean(np.asarray(coords, dtype=object).dot(self.space.basis))

    def element(self, a, h) -> np.ndarray:
        """Coordinates of a#h (left) or h#a (right) for vectors a in A and h in H."""
        a = np.asarray(a, dtype=object)
        h = np.asarray(h, dtype=object)
        if self.side == "left":
            return einsum(self.field, "a,h,ahr->r", a, h, self.sharp)
        return einsum(self.field, "a,h,har->r", a, h, self.sharp)

    def algebra_embedding(self) -> np.ndarray:
        """r x dim(A): column a is the coordinate vector of the A-generator a#1 or 1#a."""
        H = self.action.hopf
        if self.side == "left":
            return np.ascontiguousarray(einsum(self.field, "ahr,h->ra", self.sharp, H.unit))
        return np.ascontiguousarray(einsum(self.field, "har,h->ra", self.sharp, H.unit))

    def hopf_embedding(self) -> np.ndarray:
        """r x dim(H): column h is 1_A#h or h#1_A."""
        A = self.action.algebra
        if self.side == "left":
            return np.ascontiguousarray(einsum(self.field, "ahr,a->rh", self.sharp, A.unit))
        return np.ascontiguousarray(einsum(self.field, "har,a->rh", self.sharp, A.unit))


def _finish_smash(side, p, T, gens, one_amb, proj) -> SmashAlgebra:
    f = p.field
    N = T.shape[0]
    flat = gens.reshape(-1, N)
    space = Subspace.span(list(flat), f, N)
    rep = Report(f"{side}-smash")
    rep.add_equal("projector-idempotent", f.clean(proj.dot(proj)), proj)
    rep.add_equal("projector-on-generators", f.clean(proj.T), flat)  # proj e_(a,h) = a#h
    E = space.basis
    r = space.dim
    prods = einsum(f, "ix,jy,xyz->ijz", E, E, T)
    piv = list(space.pivots)
    coords = np.ascontiguousarray(prods[:, :, piv]) if r else f.zeros((0, 0, 0))
    recon = einsum(f, "ijr,rz->ijz", coords, E) if r else prods
    rep.add_equal("closure", recon, prods)
    unit = space.coords(one_amb)
    rep.add("unit-in-span", unit is not None, [] if unit is not None else [()])
    if not rep.passed:
        raise CheckFailure(f"smash construction fails {rep.first_failure}", rep)
    labels = _basis_labels(side, p, piv)
    alg = FinDimAlgebra(f, coords, unit, labels)
    arep = check_algebra(alg)
    if not arep.passed:
        raise CheckFailure(f"smash algebra fails {arep.first_failure}", arep)
    lead = gens.shape[:2]
    sharp = f.zeros(lead + (r,))
    for idx in np.ndindex(*lead):
        sharp[idx] = space.coords(gens[idx])
    return SmashAlgebra(side, p, T, proj, space, alg, sharp)


def _basis_labels(side, p, piv):
    A, H = p.algebra, p.hopf
    out = []
    for c in piv:
        if side == "left":
            a, h = divmod(c, H.dim)
            out.append(f"{A.labels[a]}#{H.alg.labels[h]}")
        else:
            h, a = divmod(c, A.dim)
            out.append(f"{H.alg.labels[h]}#{A.labels[a]}")
    return tuple(out)


def left_smash(p: PartialActionMap, validate: bool = True) -> SmashAlgebra:
    """Span of a#h = a(h1 . 1_A) (x) h2 inside A (x) H with (a x h)(b x k) = a(h1 . b) x h2 k."""
    if p.side != "left":
        raise ValueError("left smash needs a left action")
    if validate:
        rep = check_left_partial_action(p)
        if not rep.passed:
            raise CheckFailure(f"action fails {rep.first_failure}", rep)
    f, P, A, H = p.field, p.tensor, p.algebra, p.hopf
    dA, dH = A.dim, H.dim
    N = dA * dH
    T = einsum(f, "hpq,pbx,axc,qkl->ahbkcl", H.comult, P, A.mult, H.mult).reshape(N, N, N)
    U = p.unit_images()
    gens = einsum(f, "hpq,px,axc->ahcq", H.comult, U, A.mult).reshape(dA, dH, N)
    one_amb = einsum(f, "a,h->ah", A.unit, H.unit).reshape(N)
    proj = einsum(f, "j,ijk->ki", one_amb, T)
    return _finish_smash("left", p, T, gens, one_amb, proj)


def right_smash(p: PartialActionMap, validate: bool = True) -> SmashAlgebra:
    """Span of h#a = h1 (x) (1_A . h2) a inside H (x) A with (k x b)(h x a) = k h1 x (b . h2) a."""
    if p.side != "right":
        raise ValueError("right smash needs a right action")
    if validate:
        rep = check_right_partial_action(p)
        if not rep.passed:
            raise CheckFailure(f"action fails {rep.first_failure}", rep)
    f, P, A, K = p.field, p.tensor, p.algebra, p.hopf
    dA, dK = A.dim, K.dim
    N = dA * dK
    T = einsum(f, "hpq,kpl,bqx,xac->kbhalc", K.comult, K.mult, P, A.mult).reshape(N, N, N)
    V = p.unit_images()
    gens = einsum(f, "hlq,qx,xac->halc", K.comult, V, A.mult).reshape(dK, dA, N)
    one_amb = einsum(f, "h,a->ha", K.unit, A.unit).reshape(N)
    proj = einsum(f, "i,ijk->kj", one_amb, T)
    return _finish_smash("right", p, T, gens, one_amb, proj)


def smash_of(p: PartialActionMap, validate: bool = True) -> SmashAlgebra:
    return left_smash(p, validate) if p.side == "left" else right_smash(p, validate)


def check_smash_invariants(s: SmashAlgebra) -> Report:
    """Generator absorption: a#h = (a#1)(1#h) on the left, h#a = (h#1)(1#a) on the right."""
    f = s.field
    rep = Report(f"{s.side}-smash-invariants")
    emb_a, emb_h = s.algebra_embedding(), s.hopf_embedding()
    M = s.algebra.mult
    if s.side == "left":
        prods = einsum(f, "ra,sh,rst->aht", emb_a, emb_h, M)
    else:
        prods = einsum(f, "rh,sa,rst->hat", emb_h, emb_a, M)
    rep.add_equal("generator-absorption", prods, s.sharp)
    mrep = check_algebra_morphism(LinearMap(emb_a), s.action.algebra, s.algebra)
    rep.extend(mrep, "algebra-embedding.")
    gp = PartialRepresentation(_pair_hopf(s.action, "left" if s.side == "left" else "opposite"), s.algebra, emb_h)
    rep.extend(check_partial_representation(gp), "hopf-embedding.")
    return rep


# covariant pairs

@dataclass(frozen=True, eq=False)
class CovariantPairData:
    """psi: A -> B and pi: H -> B (left kind) or phi, gamma (opposite kind), as matrices."""

    psi: np.ndarray
    pi: np.ndarray
    target: FinDimAlgebra
    kind: str = "left"

    def __post_init__(self):
        if self.kind not in ("left", "opposite"):
            raise ValueError("kind must be left or opposite")


def _pair_hopf(action: PartialActionMap, kind: str) -> HopfAlgebra:
    """Source Hopf algebra of the representation component of a pair."""
    if kind == "left":
        return action.hopf
    return variants(action.hopf, "cop")


def canonical_pair(s: SmashAlgebra) -> CovariantPairData:
    kind = "left" if s.side == "left" else "opposite"
    return CovariantPairData(s.algebra_embedding(), s.hopf_embedding(), s.algebra, kind)


def check_covariant_pair(c: CovariantPairData, action: PartialActionMap) -> Report:
    expected = "left" if action.side == "left" else "opposite"
    if c.kind != expected:
        raise ValueError(f"{c.kind} pair cannot pair with a {action.side} action")
    rep = Report("covariant-pair" if c.kind == "left" else "opposite-covariant-pair")
    B, f = c.target, c.target.field
    A, H = action.algebra, action.hopf
    rep.extend(check_algebra_morphism(LinearMap(c.psi), A, B), "morphism.")
    rep.extend(check_partial_representation(PartialRepresentation(_pair_hopf(action, c.kind), B, c.pi)),
               "representation.")
    if not rep.passed:
        return rep
    D, mB, P = H.comult, B.mult, action.tensor
    S = H.antipode
    SPi = f.clean(c.pi.dot(S))
    if c.kind == "left":
        lhs = einsum(f, "hac,xc->hax", P, c.psi)
        rhs = einsum(f, "hpq,yp,xa,wq,yxu,uwz->haz", D, c.pi, c.psi, SPi, mB, mB)
        rep.add_equal("CP1", lhs, rhs)
        C2 = einsum(f, "hpq,yp,wq,ywu->hu", D, SPi, c.pi, mB)
        rep.add_equal("CP2", einsum(f, "xa,hu,xuz->haz", c.psi, C2, mB),
                      einsum(f, "hu,xa,uxz->haz", C2, c.psi, mB))
    else:
        # action.hopf is K = H^op; its antipode is the inverse antipode of H
        lhs = einsum(f, "ahc,xc->ahx", P, c.psi)
        rhs = einsum(f, "hpq,yp,xa,wq,yxu,uwz->ahz", D, SPi, c.psi, c.pi, mB, mB)
        rep.add_equal("OCP1", lhs, rhs)
        C = einsum(f, "hpq,yp,wq,ywu->hu", D, c.pi, SPi, mB)
        rep.add_equal("OCP2", einsum(f, "xa,hu,xuz->ahz", c.psi, C, mB),
                      einsum(f, "hu,xa,uxz->ahz", C, c.psi, mB))
    return rep


@dataclass(frozen=True, eq=False)
class UniversalMorphism:
    matrix: np.ndarray
    report: Report


def _solve_on_generators(gen_coords: np.ndarray, targets: np.ndarray, f: Field):
    """Find X with X g = t for every generator g; None if no consistent X exists."""
    r = gen_coords.shape[-1]
    G = gen_coords.reshape(-1, r)
    T = targets.reshape(G.shape[0], -1)
    sol = solve_many(G, T, f)
    if sol is None:
        return None
    return np.ascontiguousarray(sol.T)


def universal_morphism(c: CovariantPairData, s: SmashAlgebra, check_pair: bool = True) -> UniversalMorphism:
    """Phi(a#h) = psi(a) pi(h) on the left, Gamma(h#a) = gamma(h) phi(a) on the right."""
    f, B = s.field, c.target
    rep = Report("universal-morphism")
    if check_pair:
        prep = check_covariant_pair(c, s.action)
        rep.extend(prep, "pair.")
        if not prep.passed:
            raise CheckFailure(f"pair fails {prep.first_failure}", rep)
    if s.side == "left":
        targets = einsum(f, "xa,yh,xyz->ahz", c.psi, c.pi, B.mult)
    else:
        targets = einsum(f, "yh,xa,yxz->haz", c.pi, c.psi, B.mult)
    X = _solve_on_generators(s.sharp, targets, f)
    rep.add("well-defined", X is not None, [] if X is not None else [()])
    if X is None:
        raise CheckFailure("map on generators is not well defined", rep)
    rep.extend(check_algebra_morphism(LinearMap(X), s.algebra, B), "morphism.")
    emb_a, emb_h = s.algebra_embedding(), s.hopf_embedding()
    rep.add_equal("factor-algebra", f.clean(X.dot(emb_a)), c.psi, out_axes=2)
    rep.add_equal("factor-hopf", f.clean(X.dot(emb_h)), c.pi, out_axes=2)
    # rebuild from the factorizations alone: products of the two embeddings span
    M = s.algebra.mult
    if s.side == "left":
        prods = einsum(f, "ra,sh,rst->aht", emb_a, emb_h, M)
    else:
        prods = einsum(f, "rh,sa,rst->hat", emb_h, emb_a, M)
    X2 = _solve_on_generators(prods, targets, f)
    same = X2 is not None and equal(X2, X)
    rep.add("uniqueness", same, [] if same else [()])
    return UniversalMorphism(X, rep)


# partial crossed products

@dataclass(frozen=True, eq=False)
class CrossedProduct:
    group: GroupTable
    action: UnitalPartialGroupAction
    domains: tuple[Subspace, ...]
    offsets: tuple[int, ...]
    algebra: FinDimAlgebra

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def element(self, g: int, x) -> np.ndarray:
        """Coordinates of x delta_g for x in D_g."""
        f = self.algebra.field
        c = self.domains[g].coords(x)
        if c is None:
            raise ValueError(f"vector outside D_{g}")
        v = f.zeros(self.dim)
        v[self.offsets[g]: self.offsets[g] + self.domains[g].dim] = c
        return v


def crossed_product(u: UnitalPartialGroupAction, validate: bool = True) -> CrossedProduct:
    """a_g delta_g . a_h delta_h = a_g alpha_g(a_h 1_{g^-1}) delta_{gh}."""
    if validate:
        rep = check_group_action(u)
        if not rep.passed:
            raise CheckFailure(f"group action fails {rep.first_failure}", rep)
    G, A, f = u.group, u.algebra, u.field
    doms = tuple(u.domain(g) for g in range(G.order))
    offsets, total = [], 0
    for d in doms:
        offsets.append(total)
        total += d.dim
    mult = f.zeros((total, total, total))
    labels = []
    for g in range(G.order):
        for i in range(doms[g].dim):
            labels.append(f"d{i}@{G.labels[g]}")
    ginv = [G.inv(g) for g in range(G.order)]
    for g in range(G.order):
        for h in range(G.order):
            gh = G.mul(g, h)
            for i, x in enumerate(doms[g].basis):
                for j, y in enumerate(doms[h].basis):
                    z = A.mul(x, u.apply(g, A.mul(y, u.idempotents[ginv[g]])))
                    c = doms[gh].coords(z)
                    if c is None:
                        raise CheckFailure(f"product leaves D_{gh}")
                    mult[offsets[g] + i, offsets[h] + j, offsets[gh]: offsets[gh] + doms[gh].dim] = c
    unit = f.zeros(total)
    unit[offsets[0]: offsets[0] + doms[0].dim] = doms[0].coords(A.unit)
    alg = FinDimAlgebra(f, mult, unit, tuple(labels))
    arep = check_algebra(alg)
    if not arep.passed:
        raise CheckFailure(f"crossed product fails {arep.first_failure}", arep)
    return CrossedProduct(G, u, doms, tuple(offsets), alg)


@dataclass(frozen=True, eq=False)
class CrossedIsomorphism:
    which: str
    smash: SmashAlgebra
    crossed: FinDimAlgebra
    forward: np.ndarray
    backward: np.ndarray
    report: Report


def crossed_iso(u: UnitalPartialGroupAction, which: str = "left") -> CrossedIsomorphism:
    """eta: a#g -> a 1_g delta_g (left) or lambda: g#a -> a 1_g delta_g (right, opposite crossed product)."""
    G, A, f = u.group, u.algebra, u.field
    p = group_to_hopf(u)
    if which == "left":
        s = left_smash(p)
        cp = crossed_product(u)
        target = cp.algebra
    elif which == "right":
        s = right_smash(to_right(p))
        u_op = UnitalPartialGroupAction(G, opposite(A), u.idempotents, u.alpha)
        cp = crossed_product(u_op)
        target = opposite(cp.algebra)
    else:
        raise ValueError("which must be left or right")
    rep = Report(f"crossed-iso-{which}")
    rep.add("dimensions", s.dim == cp.dim, [] if s.dim == cp.dim else [(s.dim, cp.dim)])
    n = G.order
    if which == "left":
        targets = f.zeros((A.dim, n, cp.dim))
        for a in range(A.dim):
            for g in range(n):
                targets[a, g] = cp.element(g, A.mul(A.basis(a), u.idempotents[g]))
        gens = s.sharp
    else:
        targets = f.zeros((n, A.dim, cp.dim))
        for g in range(n):
            for a in range(A.dim):
                targets[g, a] = cp.element(g, A.mul(A.basis(a), u.idempotents[g]))
        gens = s.sharp
    X = _solve_on_generators(gens, targets, f)
    rep.add("well-defined", X is not None, [] if X is not None else [()])
    if X is None:
        return CrossedIsomorphism(which, s, target, None, None, rep)
    cols = []
    for g in range(n):
        for b in cp.domains[g].basis:
            cols.append(s.element(b, f.unit_vector(n, g)))
    Y = np.stack(cols, axis=1) if cols else f.zeros((s.dim, 0))
    rep.add_equal("forward-backward", f.clean(X.dot(Y)), f.identity(cp.dim), out_axes=1)
    rep.add_equal("backward-forward", f.clean(Y.dot(X)), f.identity(s.dim), out_axes=1)
    rep.extend(check_algebra_morphism(LinearMap(X), s.algebra, target), "morphism.")
    return CrossedIsomorphism(which, s, target, X, Y, rep)
