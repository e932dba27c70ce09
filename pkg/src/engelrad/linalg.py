"""Exact dense linear algebra on raw field payloads.

Vectors are tuples of raw payloads, matrices are lists of rows.  All
routines take the :class:`~engelrad.exactfield.Field` explicitly.
"""
from __future__ import annotations

from typing import Iterable, List, Sequence, Tuple

from .exactfield import Field


def rref(field: Field, rows: Iterable[Sequence]) -> Tuple[List[tuple], List[int]]:
    """Reduced row echelon form: (nonzero rows, pivot columns)."""
    is_zero, mul, sub, inv = field.is_zero, field.mul, field.sub, field.inv
    mat = [list(r) for r in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(mat)) if not is_zero(mat[i][c])), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        s = inv(mat[r][c])
        mat[r] = [mul(s, v) for v in mat[r]]
        for i in range(len(mat)):
            if i != r and not is_zero(mat[i][c]):
                f = mat[i][c]
                row_r = mat[r]
                mat[i] = [sub(a, mul(f, b)) for a, b in zip(mat[i], row_r)]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return [tuple(row) for row in mat[:r]], pivots


def rank(field: Field, rows) -> int:
    return len(rref(field, rows)[0])


def nullspace(field: Field, rows: Sequence[Sequence], ncols: int) -> List[tuple]:
    """Basis of {x : A x = 0} for A given by ``rows`` (each of length ``ncols``)."""
    red, pivots = rref(field, rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [field.zero] * ncols
        v[f] = field.one
        for row, p in zip(red, pivots):
            v[p] = field.neg(row[f])
        basis.append(tuple(v))
    return basis


def matmul(field: Field, a, b):
    mul, add, zero = field.mul, field.add, field.zero
    bt = list(zip(*b))
    out = []
    for row in a:
        new = []
        for col in bt:
            s = zero
            for x, y in zip(row, col):
                if x and y:
                    s = add(s, mul(x, y))
            new.append(s)
        out.append(new)
    return out


def matvec(field: Field, a, v) -> tuple:
    mul, add, zero = field.mul, field.add, field.zero
    out = []
    for row in a:
        s = zero
        for x, y in zip(row, v):
            if x and y:
                s = add(s, mul(x, y))
        out.append(s)
    return tuple(out)


def is_zero_matrix(field: Field, a) -> bool:
    return all(field.is_zero(x) for row in a for x in row)


def trace(field: Field, a):
    s = field.zero
    for i in range(len(a)):
        s = field.add(s, a[i][i])
    return s


def identity(field: Field, n: int):
    return [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]


def nilpotency_index(field: Field, a) -> int:
    """Least n >= 1 with a^n = 0, or 0 if ``a`` is not nilpotent."""
    n = len(a)
    if n == 0:
        return 1
    power = a
    for k in range(1, n + 1):
        if is_zero_matrix(field, power):
            return k
        power = matmul(field, power, a)
    return 0


class Subspace:
    """Subspace of field^d stored as its reduced row echelon basis."""

    __slots__ = ("field", "dim_ambient", "basis", "pivots")

    def __init__(self, field: Field, dim_ambient: int, vectors: Iterable[Sequence] = ()):
        self.field = field
        self.dim_ambient = dim_ambient
        vectors = [tuple(v) for v in vectors]
        for v in vectors:
            if len(v) != dim_ambient:
                raise ValueError(f"vector of length {len(v)} in a space of dimension {dim_ambient}")
        self.basis, self.pivots = rref(field, vectors)

    @classmethod
    def full(cls, field: Field, d: int) -> "Subspace":
        return cls(field, d, identity(field, d))

    @classmethod
    def zero(cls, field: Field, d: int) -> "Subspace":
        return cls(field, d)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return self.dim

    def is_zero(self) -> bool:
        return not self.basis

    def is_full(self) -> bool:
        return self.dim == self.dim_ambient

    def reduce(self, v: Sequence) -> tuple:
        """Remainder of ``v`` after eliminating the pivot columns."""
        f = self.field
        v = list(v)
        for row, p in zip(self.basis, self.pivots):
            c = v[p]
            if not f.is_zero(c):
                v = [f.sub(a, f.mul(c, b)) for a, b in zip(v, row)]
        return tuple(v)

    def contains(self, v: Sequence) -> bool:
        return all(self.field.is_zero(c) for c in self.reduce(v))

    __contains__ = contains

    def coordinates(self, v: Sequence) -> tuple:
        """Coefficients of ``v`` in the echelon basis (v must lie in the subspace)."""
        return tuple(v[p] for p in self.pivots)

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace(self.field, self.dim_ambient, list(self.basis) + list(other.basis))

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.field == other.field
                and self.dim_ambient == other.dim_ambient and self.basis == other.basis)

    def __hash__(self):
        return hash((self.dim_ambient, tuple(self.basis)))

    def complement_indices(self) -> List[int]:
        """Standard basis indices spanning a complement (non-pivot columns)."""
        return [c for c in range(self.dim_ambient) if c not in self.pivots]

    def to_text(self) -> List[List[str]]:
        return [[self.field.format(c) for c in row] for row in self.basis]

    def __repr__(self):
        return f"Subspace(dim={self.dim}/{self.dim_ambient}, basis={self.to_text()})"
