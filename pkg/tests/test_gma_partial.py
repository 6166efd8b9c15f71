import numpy as np
import pytest

from partial_gma.gma import assemble
from partial_gma.gma_partial import (
    check_block_invariance,
    check_block_partial_data,
    check_c,
    check_c_prime,
    check_mixed_actions,
    decompose,
    invariance_table,
    morita_ring_action,
    restrict_blocks,
    same_modules,
    synthesize,
)
from partial_gma.linalg import equal
from partial_gma.partial_action import (
    PartialActionMap,
    check_left_partial_action,
    check_partial_representation,
    global_trivial_action,
)
from partial_gma.report import CheckFailure

from conftest import Q, fixture_ws, hz2, scalar_datum


def conj():
    ws = fixture_ws("conjugation")
    return ws.blocked("G"), ws["P"]


def split_action(g_diag):
    """Z/2 on k x k (blocks of a zero-off-diagonal datum) with g acting by diag(g_diag)."""
    r = assemble(scalar_datum(off_diagonal=0))
    t = Q.zeros((2, 2, 2))
    t[0] = Q.identity(2)
    t[1] = np.diag(Q.array(g_diag))
    return r, PartialActionMap(hz2(), r.total, "left", t)


def test_invariance_tables():
    r, p = conj()
    assert invariance_table(check_block_invariance(r, p), 2) == [[True, True], [True, True]]
    eps = global_trivial_action(p.hopf, r.total)
    assert check_block_invariance(r, eps).passed
    ws = fixture_ws("swap")
    table = invariance_table(check_block_invariance(ws.blocked("G"), ws["P"]), 2)
    assert table[0][1] is False and table[1][0] is False


def test_restrict_blocks_on_conjugation():
    r, p = conj()
    res = restrict_blocks(r, p)
    assert res.report.passed
    for a in res.actions:
        assert equal(a.tensor, Q.array([[[1]], [[1]]]))
    assert equal(res.pis[(0, 1)].matrix[:, 1], Q.array([-1]))
    assert check_partial_representation(res.gammas[(0, 1)]).passed
    eps = global_trivial_action(p.hopf, r.total)
    for (i, j), pi in restrict_blocks(r, eps).pis.items():
        assert equal(pi.matrix[:, 1], Q.identity(r.datum.dims[i][j]).reshape(-1))


def test_decompose_signs():
    r, p = conj()
    b = decompose(r, p)
    assert equal(b.hopf_left(0, 1)[1], Q.array([[-1]]))
    assert equal(b.hopf_right(0, 1)[1], Q.array([[-1]]))
    assert equal(b.hopf_left(0, 1), b.hopf_right(0, 1))
    assert check_block_partial_data(b).passed


def test_decompose_eps_factors_through_counit():
    r, p = conj()
    b = decompose(r, global_trivial_action(p.hopf, r.total))
    for (i, j) in b.left:
        assert equal(b.hopf_left(i, j)[1], Q.identity(r.datum.dims[i][j]))


def test_block_diagonal_decompose_and_synthesize():
    r, p = split_action([0, 1])
    b = decompose(r, p)
    assert b.left[(0, 1)].shape[1:] == (0, 0) and b.right[(1, 0)].shape[0] == 0
    r2, p2 = synthesize(b)
    assert equal(p2.tensor, p.tensor)
    assert equal(p2.unit_images()[1], Q.array([0, 1]))


def test_round_trips_on_conjugation():
    r, p = conj()
    b = decompose(r, p)
    _, p2 = synthesize(b)
    assert equal(p2.tensor, p.tensor)
    r3, p3 = synthesize(fixture_ws("conjugation")["B"])
    assert same_modules(decompose(r3, p3), fixture_ws("conjugation")["B"])
    _, pe = synthesize(decompose(r, global_trivial_action(p.hopf, r.total)))
    assert equal(pe.tensor, global_trivial_action(p.hopf, r.total).tensor)


def flip_right(b, i=0, j=1, y=None):
    right = dict(b.right)
    t = right[(i, j)].copy()
    s = b.right_smashes[j]
    gcol = s.hopf_embedding()[:, 1]
    y = int(np.nonzero(gcol)[0][0]) if y is None else y
    t[:, y, :] = -t[:, y, :]
    right[(i, j)] = t
    return b.with_modules(right=right)


def test_c_prime():
    r, p = conj()
    b = decompose(r, p)
    rep = check_c_prime(b)
    assert rep.passed and rep.get("c-agrees-with-c-prime").passed
    bad = flip_right(b)
    rep = check_c_prime(bad)
    assert not rep.passed
    assert rep.get("c-prime").witnesses


def test_c_implies_c_prime_on_fixture_data():
    for fx, name in (("conjugation", "B"), ("z3_m3", "B"), ("k3_partial", "B"), ("morita_sign", "B")):
        b = fixture_ws(fx)[name]
        assert check_c(b).passed
        assert check_c_prime(b).passed


def test_mixed_action_identities():
    r, p = conj()
    rep = check_mixed_actions(decompose(r, p))
    assert rep.passed and rep.get("bimodule").passed
    rep = check_mixed_actions(decompose(r, global_trivial_action(p.hopf, r.total)))
    assert rep.get("bimodule").passed
    # Z/2 cannot separate the two sides; Z/3 with 1_g != 1_{g^2} does, at h = g, k = g^2
    assert check_mixed_actions(fixture_ws("k3_partial")["B"]).get("bimodule").passed
    rep = check_mixed_actions(fixture_ws("z3_k2")["B"])
    assert rep.passed
    assert not rep.get("bimodule").passed
    assert {w[2:4] for w in rep.get("bimodule").witnesses} == {(1, 2), (2, 1)}


def test_morita_ring_action_examples():
    eps = global_trivial_action(hz2(), fixture_ws("ring_reject")["K3"])
    m = morita_ring_action(eps, Q.array([1, 1, 0]))
    assert m.report.passed
    assert equal(m.action.tensor, global_trivial_action(eps.hopf, m.blocked.total).tensor)
    p = fixture_ws("ring_reject")["P"]
    with pytest.raises(CheckFailure) as exc:
        morita_ring_action(p, Q.array([1, 1, 0]))
    assert exc.value.report.get("counit-fixes-idempotent").witnesses == [(1,)]
    p = fixture_ws("ring_accept")["P"]
    m = morita_ring_action(p, Q.array([1, 0]))
    assert m.report.passed
    assert check_left_partial_action(m.action).passed
    assert check_block_invariance(m.blocked, m.action).passed


def test_synthesize_refuses_broken_data():
    r, p = conj()
    with pytest.raises(CheckFailure):
        synthesize(flip_right(decompose(r, p)))
