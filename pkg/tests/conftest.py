from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import numpy as np
import pytest

from partial_gma.fileformat import Workspace, parse
from partial_gma.fixtures import fixture_by_name
from partial_gma.linalg import Field

Q = Field.rationals()
F7 = Field.prime(7)


@lru_cache(maxsize=None)
def fixture_ws(name: str) -> Workspace:
    return Workspace(parse(fixture_by_name(name).text()))


def oracle_rank(rows) -> int:
    """Plain Gaussian elimination over Fraction, kept apart from the package's own echelon code."""
    m = [[Fraction(int(x)) if not isinstance(x, Fraction) else x for x in r] for r in rows]
    m = [r for r in m if r]
    if not m:
        return 0
    rank, cols = 0, len(m[0])
    for c in range(cols):
        piv = next((i for i in range(rank, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][c] != 0:
                k = m[i][c] / m[rank][c]
                m[i] = [a - k * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def mat(field: Field, rows) -> np.ndarray:
    return field.array(rows)


@pytest.fixture
def Qf():
    return Q


# small examples shared by several test modules

def hz2(field=Q):
    from partial_gma.hopf import cyclic_group, group_algebra
    return group_algebra(cyclic_group(2), field)


def unit_zero_action(scale=0):
    """Z/2 on k: e acts as the identity, g as multiplication by scale (0 gives 1_g = 0)."""
    from partial_gma.algebra import diagonal_algebra
    from partial_gma.partial_action import PartialActionMap
    return PartialActionMap(hz2(), diagonal_algebra(1, Q), "left", Q.array([[[1]], [[scale]]]))


def z2_on_k2():
    """Z/2 on k^2 with D_g = k e1 and alpha_g the identity there."""
    from partial_gma.algebra import diagonal_algebra
    from partial_gma.hopf import cyclic_group
    from partial_gma.partial_action import UnitalPartialGroupAction
    return UnitalPartialGroupAction(cyclic_group(2), diagonal_algebra(2, Q), Q.array([[1, 1], [1, 0]]),
                                    (Q.identity(2), Q.array([[1], [0]])))


def sign_conjugation():
    """Conjugation by diag(1, -1) on M2."""
    from partial_gma.partial_action import conjugation_action
    return conjugation_action(hz2(), [Q.identity(2), Q.array([[1, 0], [0, -1]])])


def scalar_datum(theta121=1, off_diagonal=1):
    """Two blocks, every block k, products are multiplication (theta_121 scaled)."""
    from partial_gma.gma import GeneralizedMatrixDatum
    m = off_diagonal
    dims = ((1, m), (m, 1))
    theta = {}
    for i in range(2):
        for j in range(2):
            for k in range(2):
                shape = (dims[i][j], dims[j][k], dims[i][k])
                t = Q.zeros(shape)
                if 0 not in shape:
                    t[0, 0, 0] = 1
                theta[(i, j, k)] = t
    if m:
        theta[(0, 1, 0)] = Q.array([[[theta121]]])
    return GeneralizedMatrixDatum(Q, dims, theta, (Q.array([1]), Q.array([1])))


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        ok, title, detail = results[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {title}  ({detail})")
