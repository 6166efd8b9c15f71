from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from partial_gma import linalg
from partial_gma.linalg import (
    Field,
    FieldMismatchError,
    ModP,
    Subspace,
    einsum,
    equal,
    infer_field,
    inverse,
    nullspace,
    rank,
    row_space_basis,
    solve_linear,
)

from conftest import F7, Q, oracle_rank

small = st.integers(min_value=-6, max_value=6)
fractions = st.builds(Fraction, small, st.integers(min_value=1, max_value=5))


def test_additive_inverse_and_reciprocal_are_exact():
    for x in (Fraction(3, 7), 5, Fraction(-2, 9)):
        assert Q.normalize(x + (-x)) == 0
        assert Q.normalize(x * Q.inv(x)) == 1
    for v in range(1, 7):
        a = F7.coerce(v)
        assert a + (-a) == 0
        assert a * F7.inv(a) == 1


def test_prime_required():
    with pytest.raises(ValueError, match="prime required"):
        Field.prime(0)
    with pytest.raises(ValueError, match="prime required"):
        Field.prime(9)


def test_one_descriptor_per_computation():
    with pytest.raises(FieldMismatchError):
        infer_field([ModP(1, 5), ModP(1, 7)])
    with pytest.raises(FieldMismatchError):
        Q.coerce(ModP(2, 7))
    with pytest.raises(FieldMismatchError):
        Q.coerce(0.5)
    assert infer_field([1, Fraction(1, 2)]) == Q
    assert infer_field([ModP(3, 7), 2]) == F7


def test_row_space_basis_examples():
    assert row_space_basis([(1, 0), (0, 1), (1, 1)]) == [(1, 0), (0, 1)]
    assert row_space_basis([]) == []
    assert row_space_basis([(2, 4), (1, 2)]) == [(1, 2)]


def test_solve_linear_examples():
    assert solve_linear([[1, 0], [0, 1]], [3, 5]) == (3, 5)
    assert solve_linear([[1, 1]], [2]) == (2, 0)
    assert solve_linear([[1], [1]], [0, 1]) is None


def test_inverse_and_nullspace():
    m = Q.array([[1, 2], [3, 4]])
    inv = inverse(m, Q)
    assert equal(linalg.matmul(Q, m, inv), Q.identity(2))
    assert inverse(Q.array([[1, 2], [2, 4]]), Q) is None
    ns = nullspace(Q.array([[1, 2], [2, 4]]), Q)
    assert ns.shape == (1, 2)
    assert equal(Q.clean(Q.array([[1, 2]]).dot(ns[0])), [0])


def test_mod_p_reduction_and_denominators():
    assert F7.scalar(1, 2) == ModP(4, 7)
    with pytest.raises(ZeroDivisionError):
        F7.scalar(1, 7)


def test_subspace_operations():
    u = Subspace.span([Q.array([1, 0, 0]), Q.array([0, 1, 0])], Q, 3)
    w = Subspace.span([Q.array([0, 1, 0]), Q.array([0, 0, 1])], Q, 3)
    i = u.intersect(w)
    assert i.dim == 1 and i.contains(Q.array([0, 5, 0]))
    assert not u.contains(Q.array([0, 0, 1]))
    assert Subspace.full(Q, 3).contains_space(u)
    assert u.coords(Q.array([2, 3, 0])) is not None


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(fractions, min_size=3, max_size=3), min_size=0, max_size=5))
def test_rank_matches_independent_elimination(rows):
    assert rank(rows, Q) == oracle_rank(rows)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3),
       st.lists(small, min_size=3, max_size=3))
def test_solution_satisfies_system(m, b):
    sol = solve_linear(m, b, Q)
    if sol is None:
        assert oracle_rank([r + [x] for r, x in zip(m, b)]) > oracle_rank(m)
    else:
        assert [sum(Fraction(a) * s for a, s in zip(r, sol)) for r in m] == b


def _object_einsum(field, spec, *ops):
    out = np.einsum(spec, *[np.asarray(o, dtype=object) for o in ops], optimize=False)
    return field.clean(np.asarray(out, dtype=object))


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=2**31), st.sampled_from([Q, F7, Field.prime(2**31 - 1)]))
def test_native_einsum_agrees_with_object_path(seed, field):
    rng = np.random.default_rng(seed)
    a = field.array(rng.integers(-9, 10, size=(3, 4)).tolist())
    b = field.array(rng.integers(-9, 10, size=(4, 2, 3)).tolist())
    c = field.array(rng.integers(-9, 10, size=(3,)).tolist())
    fast = einsum(field, "ij,jkl,l->ik", a, b, c)
    slow = _object_einsum(field, "ij,jkl,l->ik", a, b, c)
    assert equal(fast, slow)
    assert all(type(x) is type(field.zero) or isinstance(x, (int, Fraction)) for x in fast.reshape(-1))


def test_einsum_with_fractions_and_overflowing_entries():
    a = Q.array([[Fraction(1, 3), 2**70]])
    b = Q.array([[3], [2**70]])
    assert einsum(Q, "ij,jk->ik", a, b)[0, 0] == 1 + 2**140
