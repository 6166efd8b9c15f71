import numpy as np
import pytest

from partial_gma.algebra import diagonal_algebra, endomorphism_algebra
from partial_gma.hopf import cyclic_group, group_algebra, trivial_group
from partial_gma.linalg import equal, einsum
from partial_gma.partial_action import (
    UnitalPartialGroupAction,
    global_trivial_action,
    group_to_hopf,
    induced_representation,
    to_right,
)
from partial_gma.report import CheckFailure
from partial_gma.smash import (
    CovariantPairData,
    canonical_pair,
    check_covariant_pair,
    check_smash_invariants,
    crossed_iso,
    crossed_product,
    left_smash,
    right_smash,
    universal_morphism,
)

from conftest import Q, fixture_ws, hz2, oracle_rank, unit_zero_action, z2_on_k2


def generator_rank(p):
    """Rank of { a (h1 . 1) (x) h2 } computed straight from the structure constants."""
    A, H = p.algebra, p.hopf
    U = p.unit_images()
    rows = []
    for a in range(A.dim):
        for h in range(H.dim):
            v = np.zeros((A.dim, H.dim), dtype=object)
            for x in range(H.dim):
                for y in range(H.dim):
                    c = H.comult[h, x, y]
                    if c:
                        v[:, y] += c * A.mul(A.basis(a), U[x])
            rows.append(list(v.reshape(-1)))
    return oracle_rank(rows)


def test_left_smash_dimensions():
    s = left_smash(global_trivial_action(hz2(), diagonal_algebra(1, Q)))
    assert s.dim == 2
    assert left_smash(unit_zero_action()).dim == 1
    p = group_to_hopf(z2_on_k2())
    s = left_smash(p)
    assert s.dim == 3 == generator_rank(p)
    assert check_smash_invariants(s).passed


def test_right_smash_dimensions():
    h = hz2()
    assert right_smash(global_trivial_action(h, diagonal_algebra(1, Q), "right")).dim == 2
    assert right_smash(to_right(unit_zero_action())).dim == 1
    s = right_smash(to_right(group_to_hopf(z2_on_k2())))
    assert s.dim == 3 and check_smash_invariants(s).passed


@pytest.mark.parametrize("fx,name", [("sweedler", "P"), ("sweedler", "E"), ("k3_partial", "PK"),
                                     ("conjugation", "P"), ("z2_k2", "P")])
def test_smash_dimension_matches_independent_rank(fx, name):
    p = fixture_ws(fx)[name]
    assert left_smash(p).dim == generator_rank(p)


def test_canonical_pairs_pass():
    p = group_to_hopf(z2_on_k2())
    s = left_smash(p)
    assert check_covariant_pair(canonical_pair(s), p).passed
    r = to_right(p)
    t = right_smash(r)
    assert check_covariant_pair(canonical_pair(t), r).passed


def test_counit_representation_breaks_cp1():
    p = group_to_hopf(z2_on_k2())
    s = left_smash(p)
    c = canonical_pair(s)
    eps_pi = einsum(Q, "r,h->rh", s.algebra.unit, p.hopf.counit)
    rep = check_covariant_pair(CovariantPairData(c.psi, eps_pi, c.target, "left"), p)
    assert not rep.get("CP1").passed
    assert all(w[0] == 1 for w in rep.get("CP1").witnesses)


def test_universal_morphism_of_canonical_pair_is_identity():
    for p in (group_to_hopf(z2_on_k2()), fixture_ws("sweedler")["P"]):
        s = left_smash(p)
        um = universal_morphism(canonical_pair(s), s)
        assert um.report.passed and equal(um.matrix, Q.identity(s.dim))
        t = right_smash(to_right(p))
        um = universal_morphism(canonical_pair(t), t)
        assert um.report.passed and equal(um.matrix, Q.identity(t.dim))


def test_regular_module_pair():
    p = group_to_hopf(z2_on_k2())
    A = p.algebra
    end = endomorphism_algebra(A.dim, Q)
    psi = np.stack([A.left_mult_matrix(A.basis(a)).reshape(-1) for a in range(A.dim)], axis=1)
    c = CovariantPairData(psi, induced_representation(p).matrix, end, "left")
    s = left_smash(p)
    um = universal_morphism(c, s)
    assert um.report.passed
    # (a # h) acts on b as a (h . b)
    for a in range(A.dim):
        for h in range(2):
            op = Q.clean(um.matrix.dot(s.element(A.basis(a), Q.unit_vector(2, h)))).reshape(A.dim, A.dim)
            for b in range(A.dim):
                assert equal(Q.clean(op.dot(A.basis(b))), A.mul(A.basis(a), p.act(Q.unit_vector(2, h), A.basis(b))))


def test_broken_pair_is_refused():
    p = group_to_hopf(z2_on_k2())
    s = left_smash(p)
    c = canonical_pair(s)
    with pytest.raises(CheckFailure):
        universal_morphism(CovariantPairData(c.psi, Q.zeros(c.pi.shape), c.target, "left"), s)


def test_crossed_products():
    G = cyclic_group(2)
    k = diagonal_algebra(1, Q)
    glob = UnitalPartialGroupAction(G, k, Q.array([[1], [1]]), (Q.identity(1), Q.identity(1)))
    cp = crossed_product(glob)
    assert cp.dim == 2
    assert cp.algebra.same_as(group_algebra(G, Q).alg)
    assert crossed_product(z2_on_k2()).dim == 3
    a = endomorphism_algebra(2, Q)
    triv = UnitalPartialGroupAction(trivial_group(), a, a.unit.reshape(1, -1), (Q.identity(4),))
    assert crossed_product(triv).algebra.same_as(a)


@pytest.mark.parametrize("which", ["left", "right"])
def test_crossed_isomorphisms(which):
    G = cyclic_group(2)
    glob = UnitalPartialGroupAction(G, diagonal_algebra(1, Q), Q.array([[1], [1]]),
                                    (Q.identity(1), Q.identity(1)))
    iso = crossed_iso(glob, which)
    assert iso.report.passed and iso.forward.shape == (2, 2)
    iso = crossed_iso(z2_on_k2(), which)
    assert iso.report.passed
    assert iso.forward.shape == (3, 3)
    assert oracle_rank(iso.forward.tolist()) == 3
    with pytest.raises(ValueError):
        crossed_iso(z2_on_k2(), "middle")
