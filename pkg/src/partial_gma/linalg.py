"""Exact scalars over Q and F_p, plus dense linear algebra on object arrays."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Integral
from typing import Iterable, Sequence

import numpy as np


class FieldMismatchError(ValueError):
    """Scalars from different fields were combined."""


class DimensionMismatchError(ValueError):
    """Operands have incompatible shapes."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class ModP:
    """Residue class modulo a prime. Interoperates with plain ints."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.p = p
        self.v = v % p

    def _other(self, o) -> int:
        t = type(o)
        if t is ModP and o.p == self.p:
            return o.v
        if t is int:
            return o
        if isinstance(o, ModP):
            if o.p != self.p:
                raise FieldMismatchError(f"cannot combine F_{self.p} with F_{o.p}")
            return o.v
        if isinstance(o, Integral):
            return int(o)
        if isinstance(o, Fraction):
            if o.denominator == 1:
                return o.numerator
            return o.numerator * pow(o.denominator, -1, self.p)
        raise FieldMismatchError(f"cannot combine F_{self.p} with {type(o).__name__}")

    def __add__(self, o):
        if type(o) is ModP and o.p == self.p:
            r = object.__new__(ModP)
            r.p = self.p
            r.v = (self.v + o.v) % self.p
            return r
        return ModP(self.v + self._other(o), self.p)

    __radd__ = __add__

    def __sub__(self, o):
        return ModP(self.v - self._other(o), self.p)

    def __rsub__(self, o):
        return ModP(self._other(o) - self.v, self.p)

    def __mul__(self, o):
        if type(o) is ModP and o.p == self.p:
            r = object.__new__(ModP)
            r.p = self.p
            r.v = (self.v * o.v) % self.p
            return r
        return ModP(self.v * self._other(o), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return ModP(-self.v, self.p)

    def __pos__(self):
        return self

    def inverse(self) -> "ModP":
        if self.v == 0:
            raise ZeroDivisionError("zero has no inverse")
        return ModP(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, o):
        return self * ModP(self._other(o), self.p).inverse()

    def __rtruediv__(self, o):
        return ModP(self._other(o), self.p) * self.inverse()

    def __eq__(self, o):
        try:
            return (self.v - self._other(o)) % self.p == 0
        except FieldMismatchError:
            return False

    def __ne__(self, o):
        return not self.__eq__(o)

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"{self.v}"


@dataclass(frozen=True)
class Field:
    """Descriptor for Q (characteristic 0) or a prime field F_p."""

    characteristic: int = 0

    def __post_init__(self):
        if self.characteristic != 0 and not _is_prime(self.characteristic):
            raise ValueError(f"prime required, got {self.characteristic}")

    @classmethod
    def rationals(cls) -> "Field":
        return cls(0)

    @classmethod
    def prime(cls, p: int) -> "Field":
        if p == 0 or not _is_prime(p):
            raise ValueError(f"prime required, got {p}")
        return cls(p)

    @property
    def is_rational(self) -> bool:
        return self.characteristic == 0

    def __str__(self):
        return "Q" if self.is_rational else f"F_{self.characteristic}"

    # scalars

    def scalar(self, num, den=1):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if self.is_rational:
            return _norm_q(Fraction(num, den) if den != 1 else num)
        p = self.characteristic
        if den % p == 0:
            raise ZeroDivisionError(f"denominator divisible by {p}")
        return ModP(num * pow(den, -1, p), p)

    def coerce(self, x):
        if self.is_rational:
            if isinstance(x, ModP):
                raise FieldMismatchError("residue used over Q")
            if isinstance(x, Integral):
                return int(x)
            if isinstance(x, Fraction):
                return _norm_q(x)
            raise FieldMismatchError(f"not an exact scalar: {x!r}")
        if isinstance(x, ModP):
            if x.p != self.characteristic:
                raise FieldMismatchError(f"F_{x.p} scalar used over {self}")
            return x
        if isinstance(x, Integral):
            return ModP(int(x), self.characteristic)
        if isinstance(x, Fraction):
            return self.scalar(x.numerator, x.denominator)
        raise FieldMismatchError(f"not an exact scalar: {x!r}")

    @property
    def zero(self):
        return self.coerce(0)

    @property
    def one(self):
        return self.coerce(1)

    def inv(self, x):
        if self.is_rational:
            if x == 0:
                raise ZeroDivisionError("zero has no inverse")
            return _norm_q(Fraction(1) / x)
        return self.coerce(x).inverse()

    def div(self, x, y):
        return self.normalize(x * self.inv(y))

    def normalize(self, x):
        if self.is_rational and isinstance(x, Fraction):
            return _norm_q(x)
        return x

    def to_pair(self, x) -> tuple[int, int]:
        """Canonical (numerator, denominator); residues use 0 <= v < p."""
        if self.is_rational:
            f = Fraction(x)
            return f.numerator, f.denominator
        return self.coerce(x).v, 1

    # arrays

    def array(self, data) -> np.ndarray:
        arr = np.array(data, dtype=object)
        out = np.empty(arr.shape, dtype=object)
        flat_in = arr.reshape(-1)
        flat_out = out.reshape(-1)
        for idx in range(flat_in.size):
            flat_out[idx] = self.coerce(flat_in[idx])
        return out

    def zeros(self, shape) -> np.ndarray:
        return np.full(shape, self.zero, dtype=object)

    def identity(self, n: int) -> np.ndarray:
        m = self.zeros((n, n))
        for i in range(n):
            m[i, i] = self.one
        return m

    def unit_vector(self, n: int, i: int) -> np.ndarray:
        v = self.zeros(n)
        v[i] = self.one
        return v

    def clean(self, arr: np.ndarray) -> np.ndarray:
        """Re-canonicalize entries produced by arithmetic (Fraction n/1 to int)."""
        arr = np.asarray(arr, dtype=object)
        if arr.size == 0:
            return np.empty(arr.shape, dtype=object)
        conv = _CLEAN_Q if self.is_rational else np.frompyfunc(self._coerce_fast, 1, 1)
        return np.asarray(conv(arr), dtype=object).reshape(arr.shape)

    def _coerce_fast(self, x):
        if type(x) is ModP and x.p == self.characteristic:
            return x
        return self.coerce(x)


def _norm_q(x):
    if type(x) is int:
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, ModP):
        raise FieldMismatchError("residue used over Q")
    return int(x)


_CLEAN_Q = np.frompyfunc(_norm_q, 1, 1)


def infer_field(values: Iterable) -> Field:
    """Field of a collection of scalars; plain integers and fractions mean Q."""
    p = None
    fractional = False
    for x in values:
        if isinstance(x, ModP):
            if p is not None and p != x.p:
                raise FieldMismatchError(f"mixed fields F_{p} and F_{x.p}")
            p = x.p
        elif isinstance(x, Fraction):
            if x.denominator != 1:
                fractional = True
        elif not isinstance(x, Integral):
            raise FieldMismatchError(f"not an exact scalar: {x!r}")
    if p is None:
        return Field.rationals()
    if fractional:
        raise FieldMismatchError(f"non-integral rational mixed with F_{p}")
    return Field.prime(p)


def is_zero(arr) -> bool:
    return all(x == 0 for x in np.asarray(arr, dtype=object).reshape(-1))


def equal(a, b) -> bool:
    a = np.asarray(a, dtype=object)
    b = np.asarray(b, dtype=object)
    if a.shape != b.shape:
        return False
    return is_zero(a - b)


# echelon machinery (row lists of scalars)

def _rows_of(vectors, field: Field | None) -> tuple[list[list], int, Field]:
    rows = [list(v) for v in vectors]
    if field is None:
        field = infer_field(x for r in rows for x in r)
    else:
        for r in rows:
            for x in r:
                field.coerce(x)
    if rows:
        n = len(rows[0])
        if any(len(r) != n for r in rows):
            raise DimensionMismatchError("vectors have different lengths")
    else:
        n = 0
    rows = [[field.coerce(x) for x in r] for r in rows]
    return rows, n, field


def _rref_inplace(rows: list[list], ncols: int, field: Field, stop_col: int | None = None) -> list[int]:
    """Gauss-Jordan reduction; pivots are searched only in columns < stop_col."""
    limit = ncols if stop_col is None else stop_col
    pivots: list[int] = []
    r = 0
    for c in range(limit):
        if r >= len(rows):
            break
        sel = None
        for i in range(r, len(rows)):
            if rows[i][c] != 0:
                sel = i
                break
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        piv = rows[r][c]
        if piv != 1:
            inv = field.inv(piv)
            rows[r] = [field.normalize(x * inv) for x in rows[r]]
        pr = rows[r]
        for i in range(len(rows)):
            if i != r:
                f = rows[i][c]
                if f != 0:
                    rows[i] = [field.normalize(x - f * y) for x, y in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
    if stop_col is None:
        del rows[r:]
    return pivots


def rref(vectors, field: Field | None = None) -> tuple[np.ndarray, list[int]]:
    """Canonical reduced row-echelon basis of the span and its pivot columns."""
    rows, n, field = _rows_of(vectors, field)
    pivots = _rref_inplace(rows, n, field)
    out = np.empty((len(rows), n), dtype=object)
    for i, r in enumerate(rows):
        out[i, :] = r
    return out, pivots


def row_space_basis(vectors, field: Field | None = None) -> list[tuple]:
    """Linearly independent spanning set of the input span, in canonical RREF."""
    basis, _ = rref(vectors, field)
    return [tuple(r) for r in basis]


def rank(vectors, field: Field | None = None) -> int:
    return len(rref(vectors, field)[1])


def solve_linear(m, b, field: Field | None = None):
    """One solution of m x = b with free variables zeroed, or None if inconsistent."""
    m = np.asarray(m, dtype=object)
    b = list(b)
    if m.ndim != 2:
        raise DimensionMismatchError("matrix must be two-dimensional")
    if m.shape[0] != len(b):
        raise DimensionMismatchError(f"{m.shape[0]} rows but right side of length {len(b)}")
    sol = solve_many(m, np.array(b, dtype=object).reshape(-1, 1), field)
    if sol is None:
        return None
    return tuple(sol[:, 0])


def solve_many(m, rhs, field: Field | None = None):
    """Solve m X = rhs column by column; None if any column is inconsistent."""
    m = np.asarray(m, dtype=object)
    rhs = np.asarray(rhs, dtype=object)
    rows_, cols = m.shape
    if rhs.shape[0] != rows_:
        raise DimensionMismatchError("right side has wrong number of rows")
    k = rhs.shape[1]
    aug = [list(m[i]) + list(rhs[i]) for i in range(rows_)]
    rows, n, field = _rows_of(aug, field) if aug else ([], cols + k, field or Field.rationals())
    pivots = _rref_inplace(rows, cols + k, field, stop_col=cols)
    r = len(pivots)
    for i in range(r, len(rows)):
        if any(x != 0 for x in rows[i][cols:]):
            return None
    x = field.zeros((cols, k))
    for i, c in enumerate(pivots):
        x[c, :] = rows[i][cols:]
    return x


def nullspace(m, field: Field | None = None) -> np.ndarray:
    """Canonical RREF basis (as rows) of the kernel of m acting on column vectors."""
    m = np.asarray(m, dtype=object)
    rows_, cols = m.shape
    if field is None:
        field = infer_field(m.reshape(-1)) if m.size else Field.rationals()
    red, pivots = rref(list(m), field) if rows_ else (np.empty((0, cols), dtype=object), [])
    free = [c for c in range(cols) if c not in pivots]
    vecs = []
    for fcol in free:
        v = field.zeros(cols)
        v[fcol] = field.one
        for i, pc in enumerate(pivots):
            v[pc] = field.normalize(-red[i, fcol])
        vecs.append(v)
    if not vecs:
        return np.empty((0, cols), dtype=object)
    return rref(vecs, field)[0]


def coordinates(basis: np.ndarray, pivots: Sequence[int], v, field: Field):
    """Coordinates of v in an RREF basis, or None if v is outside the span."""
    v = np.asarray(v, dtype=object)
    if len(pivots) == 0:
        return np.empty(0, dtype=object) if is_zero(v) else None
    c = np.array([v[p] for p in pivots], dtype=object)
    if not equal(field.clean(c.dot(basis)), v):
        return None
    return c


def in_span(vectors, v, field: Field | None = None) -> bool:
    basis, piv = rref(vectors, field) if len(vectors) else (None, [])
    fld = field or infer_field(np.asarray(v, dtype=object).reshape(-1))
    if not piv:
        return is_zero(v)
    return coordinates(basis, piv, v, fld) is not None


def contains(big, small, field: Field | None = None) -> bool:
    """Whether span(small) is contained in span(big)."""
    if len(small) == 0:
        return True
    if len(big) == 0:
        return all(is_zero(s) for s in small)
    return rank(list(big) + list(small), field) == rank(big, field)


def same_span(u, w, field: Field | None = None) -> bool:
    if len(u) == 0 or len(w) == 0:
        return all(is_zero(x) for x in list(u) + list(w))
    bu = rref(u, field)[0]
    bw = rref(w, field)[0]
    return bu.shape == bw.shape and equal(bu, bw)


def intersect(u, w, field: Field) -> np.ndarray:
    """RREF basis of span(u) and span(w) intersected."""
    if len(u) == 0 or len(w) == 0:
        n = (np.asarray(u).shape[1] if len(u) else np.asarray(w).shape[1]) if (len(u) or len(w)) else 0
        return np.empty((0, n), dtype=object)
    bu = rref(u, field)[0]
    bw = rref(w, field)[0]
    stacked = np.concatenate([bu, -bw], axis=0).T  # columns are generators
    kern = nullspace(stacked, field)
    if kern.shape[0] == 0:
        return np.empty((0, bu.shape[1]), dtype=object)
    vecs = [field.clean(k[: bu.shape[0]].dot(bu)) for k in kern]
    return rref(vecs, field)[0]


def inverse(m, field: Field) -> np.ndarray | None:
    m = np.asarray(m, dtype=object)
    n = m.shape[0]
    if m.shape != (n, n):
        raise DimensionMismatchError("inverse needs a square matrix")
    sol = solve_many(m, field.identity(n), field)
    if sol is None:
        return None
    if not equal(field.clean(m.dot(sol)), field.identity(n)):
        return None
    return sol


def matmul(field: Field, *ms) -> np.ndarray:
    out = ms[0]
    for m in ms[1:]:
        out = out.dot(m)
    return field.clean(np.asarray(out, dtype=object))


_INT64_LIMIT = 2 ** 62


def _small_ints(field: Field, arr) -> tuple[np.ndarray, int] | None:
    """int64 copy of an array of integers (or residues) with its largest absolute entry."""
    arr = np.asarray(arr, dtype=object)
    vals = arr.ravel().tolist()
    if field.is_rational:
        if not all(type(x) is int for x in vals):
            return None
    else:
        p = field.characteristic
        if not all(type(x) is ModP and x.p == p for x in vals):
            return None
        vals = [x.v for x in vals]
    top = max((abs(x) for x in vals), default=0)
    if top >= _INT64_LIMIT:
        return None
    return np.array(vals, dtype=np.int64).reshape(arr.shape), top


@lru_cache(maxsize=64)
def _residue_table(p: int) -> np.ndarray:
    table = np.empty(p, dtype=object)
    for i in range(p):
        table[i] = ModP(i, p)
    return table


_PATHS: dict = {}


def _path(spec: str, ops):
    """Contraction order, computed once per (spec, shapes); pairwise products need none."""
    if len(ops) <= 2:
        return False
    key = (spec,) + tuple(np.shape(o) for o in ops)
    path = _PATHS.get(key)
    if path is None:
        path = np.einsum_path(spec, *[np.empty(np.shape(o), dtype=np.int8) for o in ops], optimize="greedy")[0]
        _PATHS[key] = path
    return path


def _native_einsum(field: Field, spec: str, ops) -> np.ndarray | None:
    """Machine-integer contraction when no intermediate can overflow; None otherwise."""
    if "->" not in spec or "." in spec:
        return None
    inputs, output = spec.split("->")
    terms = inputs.split(",")
    if len(terms) != len(ops):
        return None
    converted = []
    bound = 1
    sizes: dict[str, int] = {}
    for term, op in zip(terms, ops):
        c = _small_ints(field, op)
        if c is None:
            return None
        converted.append(c[0])
        bound *= max(c[1], 1)
        for letter, n in zip(term, c[0].shape):
            sizes[letter] = n
    for letter, n in sizes.items():
        if letter not in output:
            bound *= max(n, 1)
    if bound >= _INT64_LIMIT:
        return None
    out = np.asarray(np.einsum(spec, *converted, optimize=_path(spec, converted)), dtype=np.int64)
    if field.is_rational:
        return out.astype(object)
    p = field.characteristic
    out %= p
    if p <= 1 << 16:
        return _residue_table(p)[out]
    return np.frompyfunc(lambda v: ModP(int(v), p), 1, 1)(out).astype(object)


def einsum(field: Field, spec: str, *ops) -> np.ndarray:
    fast = _native_einsum(field, spec, ops)
    if fast is not None:
        return fast
    out = np.einsum(spec, *ops, optimize=_path(spec, ops))
    return field.clean(np.asarray(out, dtype=object))


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of k^n held as its canonical RREF basis."""

    field: Field
    ambient: int
    basis: np.ndarray
    pivots: tuple[int, ...]

    @classmethod
    def span(cls, vectors, field: Field, ambient: int) -> "Subspace":
        vecs = [v for v in vectors]
        if not vecs:
            return cls(field, ambient, np.empty((0, ambient), dtype=object), ())
        basis, piv = rref(vecs, field)
        if basis.shape[0] == 0:
            basis = np.empty((0, ambient), dtype=object)
        return cls(field, ambient, basis, tuple(piv))

    @classmethod
    def full(cls, field: Field, ambient: int) -> "Subspace":
        return cls(field, ambient, field.identity(ambient), tuple(range(ambient)))

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def coords(self, v):
        v = np.asarray(v, dtype=object)
        if self.dim == 0:
            return np.empty(0, dtype=object) if is_zero(v) else None
        return coordinates(self.basis, self.pivots, v, self.field)

    def contains(self, v) -> bool:
        return self.coords(v) is not None

    def contains_space(self, other: "Subspace") -> bool:
        return all(self.contains(b) for b in other.basis)

    def same_as(self, other: "Subspace") -> bool:
        return self.ambient == other.ambient and self.pivots == other.pivots and equal(self.basis, other.basis)

    def intersect(self, other: "Subspace") -> "Subspace":
        if self.dim == 0 or other.dim == 0:
            return Subspace.span([], self.field, self.ambient)
        return Subspace.span(list(intersect(self.basis, other.basis, self.field)), self.field, self.ambient)

    def embedding(self) -> np.ndarray:
        """ambient x dim matrix whose columns are the basis vectors."""
        return np.ascontiguousarray(self.basis.T) if self.dim else np.empty((self.ambient, 0), dtype=object)
