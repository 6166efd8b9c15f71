import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from partial_gma.algebra import FinDimAlgebra, diagonal_algebra, endomorphism_algebra
from partial_gma.hopf import cyclic_group, group_algebra, sweedler_h4, symmetric_group_3
from partial_gma.linalg import einsum, equal, inverse
from partial_gma.partial_action import (
    PartialActionMap,
    UnitalPartialGroupAction,
    check_group_action,
    check_left_partial_action,
    check_partial_representation,
    check_right_partial_action,
    conjugation_action,
    global_trivial_action,
    group_to_hopf,
    hopf_to_group,
    induced_representation,
    opcop_representation,
    representation_from_operators,
    to_right,
    transport_action,
)
from partial_gma.report import CheckFailure

from conftest import Q, fixture_ws, hz2, sign_conjugation, unit_zero_action, z2_on_k2


def test_global_actions_pass():
    for h in (hz2(), sweedler_h4(Q), group_algebra(symmetric_group_3(), Q)):
        for a in (diagonal_algebra(2, Q), endomorphism_algebra(2, Q)):
            assert check_left_partial_action(global_trivial_action(h, a), deep=True).passed
            assert check_right_partial_action(global_trivial_action(h, a, "right")).passed


def test_unit_zero_action_passes_and_doubling_fails():
    assert check_left_partial_action(unit_zero_action(), deep=True).passed
    rep = check_left_partial_action(unit_zero_action(scale=2))
    assert not rep.get("LPA2").passed
    assert rep.get("LPA2").witnesses == [(1, 0, 0)]


def test_to_right():
    p = unit_zero_action()
    r = to_right(p)
    assert r.side == "right"
    assert check_right_partial_action(r).passed
    assert r.tensor[0, 1, 0] == 0
    assert equal(r.tensor.transpose(1, 0, 2), p.tensor)
    g = global_trivial_action(hz2(), diagonal_algebra(2, Q))
    assert equal(to_right(g).tensor, global_trivial_action(g.hopf, g.algebra, "right").tensor)
    with pytest.raises(CheckFailure):
        to_right(unit_zero_action(scale=2))


def test_right_mutation_fails():
    r = to_right(unit_zero_action())
    # a <| g = a is the global trivial action, so it must pass; a <| g = 2a must not
    t = r.tensor.copy()
    t[0, 1, 0] = 1
    assert check_right_partial_action(PartialActionMap(r.hopf, r.algebra, "right", t)).passed
    t[0, 1, 0] = 2
    rep = check_right_partial_action(PartialActionMap(r.hopf, r.algebra, "right", t))
    assert not rep.get("RPA2").passed
    assert rep.get("RPA2").witnesses == [(0, 0, 1)]


def test_sweedler_right_action_from_left():
    for name in ("E", "P"):
        p = fixture_ws("sweedler")[name]
        assert check_right_partial_action(to_right(p)).passed


def test_representations_from_morphisms_and_induced():
    h = hz2()
    # the regular representation of kZ/2 on itself is a morphism into End(k^2)
    ops = [Q.identity(2), Q.array([[0, 1], [1, 0]])]
    assert check_partial_representation(representation_from_operators(h, ops, Q)).passed
    pi = induced_representation(unit_zero_action())
    assert equal(pi.matrix, Q.array([[1, 0]]))
    assert check_partial_representation(pi).passed
    bad = representation_from_operators(h, [Q.identity(1), Q.array([[2]])], Q)
    rep = check_partial_representation(bad)
    assert not rep.get("PR2").passed


def test_induced_representation_examples():
    p = global_trivial_action(hz2(), diagonal_algebra(2, Q))
    pi = induced_representation(p)
    assert equal(pi.matrix[:, 1], Q.identity(2).reshape(-1))
    pi = induced_representation(sign_conjugation())
    op = pi.matrix[:, 1].reshape(4, 4)
    assert equal(op, np.diag(Q.array([1, -1, -1, 1])))


@pytest.mark.parametrize("operator_form", [True, False])
def test_both_representation_paths_agree_on_fixtures(operator_form):
    for fx, name in (("sweedler", "P"), ("sweedler", "E"), ("z3_m3", "P"), ("k3_partial", "PK")):
        p = fixture_ws(fx)[name]
        a = check_partial_representation(induced_representation(p), operator_form=True)
        b = check_partial_representation(induced_representation(p), operator_form=operator_form)
        assert [(c.tag, c.passed, c.witnesses) for c in a.checks] == [(c.tag, c.passed, c.witnesses)
                                                                      for c in b.checks]
        assert a.passed


def test_opcop():
    pi = induced_representation(fixture_ws("sweedler")["P"])
    twice = opcop_representation(opcop_representation(pi))
    assert twice.hopf.same_as(pi.hopf) and twice.target.same_as(pi.target)
    assert equal(twice.matrix, pi.matrix)
    assert check_partial_representation(opcop_representation(pi)).passed
    com = induced_representation(unit_zero_action())
    a, b = check_partial_representation(com), check_partial_representation(opcop_representation(com))
    assert a.passed == b.passed


def test_group_bridge_examples():
    G = cyclic_group(2)
    swap = UnitalPartialGroupAction(G, diagonal_algebra(2, Q), Q.array([[1, 1], [1, 1]]),
                                    (Q.identity(2), Q.array([[0, 1], [1, 0]])))
    p = group_to_hopf(swap)
    assert equal(p.tensor[1], Q.array([[0, 1], [1, 0]]))
    u = z2_on_k2()
    assert check_group_action(u).passed
    p = group_to_hopf(u)
    assert equal(p.tensor[1], Q.array([[1, 0], [0, 0]]))
    assert hopf_to_group(p).same_as(u)
    assert hopf_to_group(group_to_hopf(swap)).same_as(swap)


def test_group_action_failures_are_reported():
    u = z2_on_k2()
    bad = UnitalPartialGroupAction(u.group, u.algebra, Q.array([[1, 1], [0, 1]]), u.alpha)
    assert not check_group_action(bad).passed
    bad = UnitalPartialGroupAction(u.group, u.algebra, u.idempotents, (u.alpha[0], Q.array([[2], [0]])))
    assert not check_group_action(bad).passed
    with pytest.raises(CheckFailure):
        group_to_hopf(bad)


def test_transport_keeps_axioms():
    p = sign_conjugation()
    T = Q.array([[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 2, 1]])
    Ti = inverse(T, Q)
    mult = einsum(Q, "ai,bj,abc,kc->ijk", T, T, p.algebra.mult, Ti)
    target = FinDimAlgebra(Q, mult, Q.clean(Ti.dot(p.algebra.unit)))
    q = transport_action(p, T, target)
    assert check_left_partial_action(q, deep=True).passed


def random_involution(rng, n):
    """S diag(+-1) S^-1 with S a random invertible integer matrix."""
    while True:
        S = Q.array(rng.integers(-2, 3, size=(n, n)).tolist())
        Si = inverse(S, Q)
        if Si is not None:
            break
    D = np.diag(Q.array(rng.choice([-1, 1], size=n).tolist()))
    return Q.clean(S.dot(D).dot(Si))


@settings(max_examples=15, deadline=None)
@given(st.integers(min_value=0, max_value=10**6))
def test_global_conjugations_are_partial_actions(seed):
    rng = np.random.default_rng(seed)
    T = random_involution(rng, 2)
    p = conjugation_action(hz2(), [Q.identity(2), T])
    assert check_left_partial_action(p, deep=True).passed
    assert check_partial_representation(induced_representation(p)).passed


@settings(max_examples=20, deadline=None)
@given(st.integers(min_value=0, max_value=10**6))
def test_restricted_global_actions_are_partial(seed):
    # restrict the swap on k^4 to the ideal spanned by a random subset of coordinates
    rng = np.random.default_rng(seed)
    n = 4
    perm = [1, 0, 3, 2]
    keep = rng.integers(0, 2, size=n).tolist()
    # e . a = a; g . a = 1_g perm(a 1_{g^-1}) where 1_g = keep * perm(keep)
    one_g = [keep[i] * keep[perm[i]] for i in range(n)]
    t = Q.zeros((2, n, n))
    for a in range(n):
        t[0, a, a] = 1
        if one_g[a]:
            t[1, a, perm[a]] = 1
    p = PartialActionMap(hz2(), diagonal_algebra(n, Q), "left", t)
    rep = check_left_partial_action(p, deep=True)
    assert rep.passed
    u = hopf_to_group(p)
    assert check_group_action(u).passed
    assert group_to_hopf(u).same_as(p)
