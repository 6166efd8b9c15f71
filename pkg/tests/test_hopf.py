import numpy as np
import pytest

from partial_gma.hopf import (
    HopfAlgebra,
    check_hopf,
    coproduct_tensor,
    cyclic_group,
    group_algebra,
    iterated_coproduct,
    sweedler_h4,
    symmetric_group_3,
    trivial_group,
    variants,
)
from partial_gma.linalg import Field, equal, matmul

from conftest import F7, Q


def test_group_algebras_pass():
    for g in (trivial_group(), cyclic_group(2), cyclic_group(3), symmetric_group_3()):
        assert check_hopf(group_algebra(g, Q)).passed
    assert check_hopf(group_algebra(cyclic_group(3), F7)).passed


def test_group_algebra_antipodes():
    h2 = group_algebra(cyclic_group(2), Q)
    assert h2.dim == 2 and equal(h2.antipode, Q.identity(2))
    h3 = group_algebra(cyclic_group(3), Q)
    assert equal(h3.antipode, Q.array([[1, 0, 0], [0, 0, 1], [0, 1, 0]]))
    assert group_algebra(symmetric_group_3(), Q).dim == 6


def test_identity_antipode_fails():
    h = group_algebra(cyclic_group(3), Q)
    bad = HopfAlgebra(h.alg, h.comult, h.counit, Q.identity(3), Q.identity(3), h.group)
    rep = check_hopf(bad)
    assert not rep.passed
    assert (1,) in rep.get("antipode-left").witnesses


def test_sweedler_axioms():
    h = sweedler_h4(Q)
    assert check_hopf(h).passed
    assert check_hopf(sweedler_h4(F7)).passed
    assert list(h.counit) == [1, 1, 0, 0]
    with pytest.raises(ValueError):
        sweedler_h4(Field.prime(2))


def test_sweedler_square_of_antipode_is_conjugation_by_g():
    h = sweedler_h4(Q)
    S2 = matmul(Q, h.antipode, h.antipode)
    g = Q.unit_vector(4, 1)
    conj = np.stack([h.alg.mul(h.alg.mul(g, h.alg.basis(i)), g) for i in range(4)], axis=1)
    assert equal(S2, conj)
    assert not equal(S2, Q.identity(4))


def test_variants():
    h = group_algebra(cyclic_group(3), Q)
    assert variants(h, "cop").same_as(h)
    s = sweedler_h4(Q)
    assert variants(variants(s, "opcop"), "opcop").same_as(s)
    cop = variants(s, "cop")
    # Delta_cop(x) = 1 (x) x + x (x) g
    expect = Q.zeros((4, 4))
    expect[0, 2] = 1
    expect[2, 1] = 1
    assert equal(cop.comult[2], expect)
    for w in ("op", "cop", "opcop"):
        assert check_hopf(variants(s, w)).passed
    with pytest.raises(ValueError):
        variants(s, "co")


def test_iterated_coproduct():
    h = group_algebra(cyclic_group(3), Q)
    t = iterated_coproduct(h, Q.unit_vector(3, 2), 3)
    expect = Q.zeros((3, 3, 3))
    expect[2, 2, 2] = 1
    assert equal(t, expect)
    s = sweedler_h4(Q)
    x2 = iterated_coproduct(s, Q.unit_vector(4, 2), 2)
    expect = Q.zeros((4, 4))
    expect[2, 0] = expect[1, 2] = 1
    assert equal(x2, expect)


@pytest.mark.parametrize("legs", [2, 3, 4])
def test_counit_on_one_leg_drops_a_leg(legs):
    s = sweedler_h4(Q)
    full = coproduct_tensor(s, legs)
    shorter = coproduct_tensor(s, legs - 1)
    for leg in range(1, legs + 1):
        contracted = np.moveaxis(full, leg, -1).dot(s.counit)
        assert equal(Q.clean(contracted), shorter)
    with pytest.raises(ValueError):
        iterated_coproduct(s, s.unit, 0)
