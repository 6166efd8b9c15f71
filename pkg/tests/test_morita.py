import pytest

from partial_gma.algebra import diagonal_algebra, endomorphism_algebra
from partial_gma.gma import assemble
from partial_gma.gma_partial import decompose
from partial_gma.linalg import equal
from partial_gma.morita import (
    MoritaContextData,
    check_block_conditions,
    check_morita_context,
    check_morita_equivalent,
    check_partial_bh_module,
    context_from_datum,
    morita_ring,
)
from partial_gma.partial_action import PartialActionMap, global_trivial_action, to_right

from conftest import Q, fixture_ws, hz2, unit_zero_action


def scalar_context(mu=1):
    one = Q.array([[[1]]])
    k = diagonal_algebra(1, Q)
    return MoritaContextData(k, k, one, one, one, one, Q.array([[[mu]]]), one)


def test_scalar_context_is_strict_and_gives_m2():
    c = scalar_context()
    assert check_morita_context(c).passed
    r = assemble(morita_ring(c))
    assert r.total.same_as(endomorphism_algebra(2, Q))


def test_zero_pairing_is_not_strict():
    c = scalar_context(mu=0)
    rep = check_morita_context(c)
    assert not rep.passed
    assert not rep.get("mu.surjective").passed
    assert rep.get("mu.surjective").witnesses == [(0, 1)]


def test_column_and_row_spaces():
    c = fixture_ws("morita_peirce")["C"]
    assert (c.a.dim, c.b.dim, c.dim_m, c.dim_n) == (4, 1, 2, 2)
    assert check_morita_context(c).passed
    assert assemble(morita_ring(c)).total.dim == 9


def test_eps_actions_are_equivalent():
    c = fixture_ws("morita_peirce")["C"]
    r = assemble(morita_ring(c))
    H = hz2()
    rep = check_morita_equivalent(global_trivial_action(H, c.a), global_trivial_action(H, c.b), c,
                                  global_trivial_action(H, r.total))
    assert rep.passed


def test_sign_action_links_trivial_actions():
    ws = fixture_ws("conjugation")
    r, p = ws.blocked("G"), ws["P"]
    c = context_from_datum(r.datum)
    assert check_morita_context(c).passed
    triv = global_trivial_action(hz2(), diagonal_algebra(1, Q))
    assert check_morita_equivalent(triv, triv, c, p).passed
    t = p.tensor.copy()
    t[1, 0, 0] = 2
    rep = check_morita_equivalent(triv, triv, c, PartialActionMap(p.hopf, p.algebra, "left", t))
    assert not rep.passed


def test_restriction_mismatch_is_reported():
    ws = fixture_ws("conjugation")
    r, p = ws.blocked("G"), ws["P"]
    c = context_from_datum(r.datum)
    triv = global_trivial_action(hz2(), diagonal_algebra(1, Q))
    rep = check_morita_equivalent(unit_zero_action(), triv, c, p)
    assert not rep.get("restriction[1]").passed
    assert rep.get("restriction[2]").passed


def test_block_conditions_on_conjugation_and_eps():
    ws = fixture_ws("conjugation")
    r, p = ws.blocked("G"), ws["P"]
    c = context_from_datum(r.datum)
    b = decompose(r, p)
    rep, pr = check_block_conditions(b.diag_actions[0], b.diag_actions[1], c, b)
    assert rep.passed and equal(pr.tensor, p.tensor)
    be = decompose(r, global_trivial_action(p.hopf, r.total))
    rep, pr = check_block_conditions(be.diag_actions[0], be.diag_actions[1], c, be)
    assert rep.passed


def test_block_conditions_refuse_flipped_sign():
    b = fixture_ws("morita_flipped")["BF"]
    c = context_from_datum(b.datum)
    rep, pr = check_block_conditions(b.diag_actions[0], b.diag_actions[1], c, b)
    assert pr is None
    assert not rep.passed
    # modules and compatibility are intact; only multiplicativity breaks
    assert [t for t in rep.failed_tags() if t != "synthesis"] == ["multiplicative"]
    assert rep.get("synthesis").note == "refused"


def bh_module_from_action(q):
    """N = B with n . b the product and n h the right action itself."""
    B = q.algebra
    return B.mult, q.tensor


def test_partial_bh_modules():
    q = to_right(fixture_ws("z2_k2")["P"])
    nb, nh = bh_module_from_action(q)
    assert check_partial_bh_module(nb, nh, q).passed
    g = global_trivial_action(q.hopf, q.algebra, "right")
    eps_nh = g.tensor
    assert check_partial_bh_module(nb, eps_nh, g).passed
    rep = check_partial_bh_module(nb, eps_nh, q)
    assert not rep.get("compatible").passed
    assert rep.get("compatible").witnesses
    with pytest.raises(ValueError):
        check_partial_bh_module(nb, nh, fixture_ws("z2_k2")["P"])
