"""Finite-dimensional unital algebras given by structure constants."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import DimensionMismatchError, Field, einsum, equal
from .report import Report


@dataclass(frozen=True, eq=False)
class FinDimAlgebra:
    """e_i e_j = sum_k mult[i, j, k] e_k, with 1 = sum_k unit[k] e_k."""

    field: Field
    mult: np.ndarray
    unit: np.ndarray
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        d = self.unit.shape[0]
        if self.mult.shape != (d, d, d):
            raise DimensionMismatchError(f"mult shape {self.mult.shape} does not match unit length {d}")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"e{i}" for i in range(d)))
        elif len(self.labels) != d:
            raise DimensionMismatchError("wrong number of basis labels")

    @property
    def dim(self) -> int:
        return self.unit.shape[0]

    def mul(self, x, y) -> np.ndarray:
        return einsum(self.field, "i,j,ijk->k", np.asarray(x, dtype=object), np.asarray(y, dtype=object), self.mult)

    def basis(self, i: int) -> np.ndarray:
        return self.field.unit_vector(self.dim, i)

    def left_mult_matrix(self, x) -> np.ndarray:
        """Matrix of y -> x y (columns = images of basis vectors)."""
        return einsum(self.field, "i,ijk->kj", np.asarray(x, dtype=object), self.mult)

    def right_mult_matrix(self, x) -> np.ndarray:
        return einsum(self.field, "j,ijk->ki", np.asarray(x, dtype=object), self.mult)

    def same_as(self, other: "FinDimAlgebra") -> bool:
        return (self.field == other.field and self.dim == other.dim
                and equal(self.mult, other.mult) and equal(self.unit, other.unit))


@dataclass(frozen=True, eq=False)
class LinearMap:
    """Columns of matrix are the images of the domain basis vectors."""

    matrix: np.ndarray

    @property
    def domain_dim(self) -> int:
        return self.matrix.shape[1]

    @property
    def codomain_dim(self) -> int:
        return self.matrix.shape[0]

    def __call__(self, v) -> np.ndarray:
        return self.matrix.dot(np.asarray(v, dtype=object))


def algebra(field: Field, mult, unit, labels=()) -> FinDimAlgebra:
    return FinDimAlgebra(field, field.array(mult), field.array(unit), tuple(labels))


def check_algebra(a: FinDimAlgebra) -> Report:
    rep = Report("algebra")
    f, c = a.field, a.mult
    lhs = einsum(f, "ijm,mkl->ijkl", c, c)
    rhs = einsum(f, "jkm,iml->ijkl", c, c)
    rep.add_equal("associativity", lhs, rhs)
    ident = f.identity(a.dim)
    rep.add_equal("left-unit", einsum(f, "i,ijk->jk", a.unit, c), ident)
    rep.add_equal("right-unit", einsum(f, "j,ijk->ik", a.unit, c), ident)
    return rep


def opposite(a: FinDimAlgebra) -> FinDimAlgebra:
    return FinDimAlgebra(a.field, np.ascontiguousarray(a.mult.transpose(1, 0, 2)), a.unit, a.labels)


def endomorphism_algebra(n: int, field: Field) -> FinDimAlgebra:
    """End(k^n) in the matrix-unit basis E_pq (index p*n+q), with (fg)(v) = f(g(v))."""
    if n < 1:
        raise ValueError("endomorphism algebra needs n >= 1")
    d = n * n
    mult = field.zeros((d, d, d))
    for p in range(n):
        for q in range(n):
            for s in range(n):
                mult[p * n + q, q * n + s, p * n + s] = field.one
    unit = field.zeros(d)
    for p in range(n):
        unit[p * n + p] = field.one
    labels = tuple(f"E{p + 1}{q + 1}" for p in range(n) for q in range(n))
    return FinDimAlgebra(field, mult, unit, labels)


def operator_to_end(op: np.ndarray) -> np.ndarray:
    """Flatten an n x n operator matrix to matrix-unit coordinates."""
    return np.ascontiguousarray(op).reshape(-1)


def end_to_operator(v: np.ndarray, n: int) -> np.ndarray:
    return np.asarray(v, dtype=object).reshape(n, n)


def check_algebra_morphism(f: LinearMap, a: FinDimAlgebra, b: FinDimAlgebra) -> Report:
    if f.matrix.shape != (b.dim, a.dim):
        raise DimensionMismatchError(f"map shape {f.matrix.shape}, expected {(b.dim, a.dim)}")
    rep = Report("algebra-morphism")
    fld = a.field
    m = f.matrix
    lhs = einsum(fld, "ijk,lk->ijl", a.mult, m)
    rhs = einsum(fld, "xi,yj,xyl->ijl", m, m, b.mult)
    rep.add_equal("multiplicative", lhs, rhs)
    rep.add_equal("unital", fld.clean(m.dot(a.unit)).reshape(1, -1), b.unit.reshape(1, -1))
    return rep


def direct_product(a: FinDimAlgebra, b: FinDimAlgebra) -> FinDimAlgebra:
    f = a.field
    d = a.dim + b.dim
    mult = f.zeros((d, d, d))
    mult[: a.dim, : a.dim, : a.dim] = a.mult
    mult[a.dim:, a.dim:, a.dim:] = b.mult
    unit = np.concatenate([a.unit, b.unit])
    return FinDimAlgebra(f, mult, unit, a.labels + b.labels)


def diagonal_algebra(n: int, field: Field) -> FinDimAlgebra:
    """k^n with orthogonal idempotent basis."""
    mult = field.zeros((n, n, n))
    for i in range(n):
        mult[i, i, i] = field.one
    unit = field.array([1] * n)
    return FinDimAlgebra(field, mult, unit, tuple(f"e{i + 1}" for i in range(n)))
