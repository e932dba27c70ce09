"""Finite-dimensional Lie algebras given by structure constants.

``c[i][j][k]`` is the coefficient of ``b_k`` in ``[b_i, b_j]`` and
``ad(b_i)`` is the matrix with ``ad(b_i)[k][j] = c[i][j][k]`` (column j holds
``[b_i, b_j]``).

Over Q everything runs on ``Fraction`` payloads, with sparse polynomials for
the symbolic-in-x tests.  Over prime fields the exhaustive scans are batched
in numpy: a batch of vectors is an ``(N, d)`` float64 array of residues, and
``[U, V]`` is ``(U (x) V) @ C mod p`` with ``C`` the ``(d*d, d)`` table.  All
intermediate values stay below ``d^2 p^2 < 2^53``, so float64 is exact.

Witness order.  Over Q, candidate vectors are integer points scanned by total
weight ``sum |c_i|`` and then lexicographically, with coordinate values ranked
``1, -1, 2, -2, ..., 0``.  Over GF(p) they are scanned by Hamming weight and
then lexicographically with values ranked ``1, 2, ..., p-1, 0``.  Every test
used here is homogeneous in x, so only vectors whose first nonzero coordinate
is 1 need to be visited; those are exactly the least members of their lines.
"""
from __future__ import annotations

import itertools
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .errors import (
    AntisymmetryViolation,
    EnumerationTooLarge,
    JacobiViolation,
    NotASubalgebra,
    SymbolicBlowup,
    UnsupportedCharacteristic,
)
from .exactfield import PRIME, Field, FieldScalar
from .linalg import Subspace, identity, is_zero_matrix, matmul, matvec, nilpotency_index, nullspace, rank, trace
from .poly import MultiPoly
from .report import Report, Timer
from .words import get_sequence

ENUMERATION_CAP = 10 ** 7
PAIR_CAP = 10 ** 8
DEFAULT_MAX_N = 50
CHUNK_ROWS = 1 << 15


# ---------------------------------------------------------------- vectors

class LieVector:
    """Coordinates (raw payloads) relative to the basis of ``algebra``."""

    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: "LieAlgebra", coords: Sequence):
        if len(coords) != algebra.dim:
            raise ValueError(f"expected {algebra.dim} coordinates, got {len(coords)}")
        self.algebra = algebra
        self.coords = tuple(coords)

    @property
    def scalars(self) -> Tuple[FieldScalar, ...]:
        f = self.algebra.field
        return tuple(FieldScalar(f, c) for c in self.coords)

    def is_zero(self) -> bool:
        return all(self.algebra.field.is_zero(c) for c in self.coords)

    def _other(self, other) -> tuple:
        if not isinstance(other, LieVector) or other.algebra is not self.algebra:
            raise TypeError("vectors belong to different algebras")
        return other.coords

    def __add__(self, other):
        add = self.algebra.field.add
        return LieVector(self.algebra, [add(a, b) for a, b in zip(self.coords, self._other(other))])

    def __sub__(self, other):
        sub = self.algebra.field.sub
        return LieVector(self.algebra, [sub(a, b) for a, b in zip(self.coords, self._other(other))])

    def __neg__(self):
        neg = self.algebra.field.neg
        return LieVector(self.algebra, [neg(a) for a in self.coords])

    def __mul__(self, scalar):
        f = self.algebra.field
        s = f(scalar).value if not isinstance(scalar, FieldScalar) else scalar.value
        return LieVector(self.algebra, [f.mul(s, a) for a in self.coords])

    __rmul__ = __mul__

    def bracket(self, other: "LieVector") -> "LieVector":
        return LieVector(self.algebra, self.algebra.bracket_raw(self.coords, self._other(other)))

    def __eq__(self, other):
        return isinstance(other, LieVector) and other.algebra is self.algebra and other.coords == self.coords

    def __hash__(self):
        return hash(self.coords)

    def to_text(self) -> List[str]:
        return [self.algebra.field.format(c) for c in self.coords]

    def __str__(self):
        return self.algebra.format_vector(self.coords)

    def __repr__(self):
        return f"LieVector({self})"


# ---------------------------------------------------------------- algebra

class LieAlgebra:
    """Validated structure-constant algebra; immutable after construction."""

    def __init__(self, field: Field, names: Sequence[str], table: Dict[Tuple[int, int], Dict[int, object]],
                 label: Optional[str] = None, validate: bool = True):
        d = len(names)
        if len(set(names)) != d:
            raise ValueError("basis names must be distinct")
        self.field = field
        self.dim = d
        self.names = tuple(names)
        self.label = label or f"L{d}"
        const = [[{} for _ in range(d)] for _ in range(d)]
        for (i, j), row in table.items():
            if i == j:
                if any(not field.is_zero(v) for v in row.values()):
                    raise AntisymmetryViolation(i, i)
                continue
            for k, v in row.items():
                if field.is_zero(v):
                    continue
                const[i][j][k] = v
                const[j][i][k] = field.neg(v)
        self._const = const
        self._pairs = {(i, j): sorted(const[i][j].items()) for i in range(d) for j in range(d) if const[i][j]}
        self.ad_matrices = [
            [[const[i][j].get(k, field.zero) for j in range(d)] for k in range(d)] for i in range(d)
        ]
        if validate:
            self._check_jacobi()
        self._np = _NumpyTables(self) if field.spec.kind == PRIME else None
        self._cache: dict = {}

    # construction helpers ------------------------------------------
    def structure_constant(self, i: int, j: int, k: int) -> FieldScalar:
        return FieldScalar(self.field, self._const[i][j].get(k, self.field.zero))

    def table(self) -> Dict[Tuple[int, int], Dict[int, object]]:
        """Upper-triangle table ``(i, j) -> {k: raw}`` with i < j."""
        return {(i, j): dict(self._const[i][j]) for i in range(self.dim) for j in range(i + 1, self.dim)
                if self._const[i][j]}

    def tensor(self) -> List[List[List[FieldScalar]]]:
        d = self.dim
        return [[[self.structure_constant(i, j, k) for k in range(d)] for j in range(d)] for i in range(d)]

    def _check_jacobi(self):
        d, f = self.dim, self.field
        basis = [self.basis_raw(i) for i in range(d)]
        for i in range(d):
            for j in range(i + 1, d):
                bij = self.bracket_raw(basis[i], basis[j])
                for k in range(j + 1, d):
                    s1 = self.bracket_raw(bij, basis[k])
                    s2 = self.bracket_raw(self.bracket_raw(basis[j], basis[k]), basis[i])
                    s3 = self.bracket_raw(self.bracket_raw(basis[k], basis[i]), basis[j])
                    if any(not f.is_zero(f.add(f.add(a, b), c)) for a, b, c in zip(s1, s2, s3)):
                        raise JacobiViolation(i, j, k)

    # vectors ---------------------------------------------------------
    def basis_raw(self, i: int) -> tuple:
        f = self.field
        return tuple(f.one if k == i else f.zero for k in range(self.dim))

    def zero_raw(self) -> tuple:
        return (self.field.zero,) * self.dim

    def basis(self, i) -> LieVector:
        if isinstance(i, str):
            i = self.index(i)
        return LieVector(self, self.basis_raw(i))

    def __getitem__(self, name) -> LieVector:
        return self.basis(name)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"{self.label} has no basis element {name!r}") from None

    def zero(self) -> LieVector:
        return LieVector(self, self.zero_raw())

    def vector(self, value) -> LieVector:
        """Coerce a LieVector, basis name, {name: coeff} dict or coordinate sequence."""
        if isinstance(value, LieVector):
            if value.algebra is not self:
                if value.algebra != self:
                    raise TypeError("vector belongs to another algebra")
                return LieVector(self, value.coords)
            return value
        if isinstance(value, str):
            return self.parse_vector(value)
        f = self.field
        if isinstance(value, dict):
            coords = [f.zero] * self.dim
            for name, c in value.items():
                coords[self.index(name)] = f(c).value
            return LieVector(self, coords)
        return LieVector(self, [f(c).value for c in value])

    def parse_vector(self, text: str) -> LieVector:
        """Basis name, comma separated coordinates, a JSON list, or ``c*name + c*name``."""
        t = text.strip()
        if t in self.names:
            return self.basis(t)
        f = self.field
        if t.startswith("[") and t.endswith("]"):
            try:
                items = json.loads(t)
            except ValueError:
                items = None
            if isinstance(items, list) and len(items) == self.dim:
                return LieVector(self, [f(str(c)).value for c in items])
        parts = [s.strip() for s in t.split(",")]
        if len(parts) == self.dim and all(parts):
            try:
                return LieVector(self, [f.parse(s) for s in parts])
            except ValueError:
                pass
        coords = [f.zero] * self.dim
        for sign, term in _split_terms(t):
            coef, _, name = term.rpartition("*")
            c = f.parse(coef.strip()) if coef else f.one
            if sign < 0:
                c = f.neg(c)
            i = self.index(name.strip())
            coords[i] = f.add(coords[i], c)
        return LieVector(self, coords)

    def format_vector(self, coords: Sequence) -> str:
        f = self.field
        parts = []
        for c, name in zip(coords, self.names):
            if f.is_zero(c):
                continue
            text = f.format(c)
            if text == "1":
                parts.append(("+", name))
            elif text == "-1":
                parts.append(("-", name))
            elif text.startswith("-"):
                parts.append(("-", f"{text[1:]}*{name}"))
            else:
                parts.append(("+", f"{text}*{name}"))
        if not parts:
            return "0"
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, t in parts[1:]:
            out += f" {sign} {t}"
        return out

    # bracket ---------------------------------------------------------
    def bracket_raw(self, u: Sequence, v: Sequence) -> tuple:
        f = self.field
        mul, add, is_zero = f.mul, f.add, f.is_zero
        out = [f.zero] * self.dim
        nz_u = [(i, a) for i, a in enumerate(u) if not is_zero(a)]
        nz_v = [(j, b) for j, b in enumerate(v) if not is_zero(b)]
        pairs = self._pairs
        for i, a in nz_u:
            for j, b in nz_v:
                row = pairs.get((i, j))
                if row:
                    ab = mul(a, b)
                    for k, c in row:
                        out[k] = add(out[k], mul(ab, c))
        return tuple(out)

    def bracket(self, u, v) -> LieVector:
        return LieVector(self, self.bracket_raw(self.vector(u).coords, self.vector(v).coords))

    def ad_raw(self, y: Sequence) -> List[List]:
        """Matrix of ``ad y`` (columns are images of basis vectors)."""
        f = self.field
        d = self.dim
        mat = [[f.zero] * d for _ in range(d)]
        for i, a in enumerate(y):
            if f.is_zero(a):
                continue
            adi = self.ad_matrices[i]
            for k in range(d):
                for j in range(d):
                    c = adi[k][j]
                    if c:
                        mat[k][j] = f.add(mat[k][j], f.mul(a, c))
        return mat

    def ad(self, y) -> List[List[FieldScalar]]:
        f = self.field
        return [[FieldScalar(f, c) for c in row] for row in self.ad_raw(self.vector(y).coords)]

    # subspaces -------------------------------------------------------
    def span(self, vectors: Iterable) -> Subspace:
        rows = [v.coords if isinstance(v, LieVector) else tuple(v) for v in vectors]
        return Subspace(self.field, self.dim, rows)

    def whole(self) -> Subspace:
        return Subspace.full(self.field, self.dim)

    def bracket_spaces(self, a: Subspace, b: Subspace) -> Subspace:
        return self.span(self.bracket_raw(u, v) for u in a.basis for v in b.basis)

    def is_subalgebra(self, s: Subspace) -> bool:
        return all(s.contains(self.bracket_raw(u, v)) for u in s.basis for v in s.basis)

    def is_ideal(self, s: Subspace) -> bool:
        return all(s.contains(self.bracket_raw(self.basis_raw(i), v)) for i in range(self.dim) for v in s.basis)

    def __eq__(self, other):
        return (isinstance(other, LieAlgebra) and self.field == other.field
                and self.names == other.names and self._const == other._const)

    def __hash__(self):
        return hash((self.field, self.names))

    def __repr__(self):
        return f"LieAlgebra({self.label}, dim={self.dim}, field={self.field})"


def _split_terms(text: str):
    text = text.replace(" ", "")
    if not text:
        raise ValueError("empty vector text")
    pos, sign, out = 0, 1, []
    if text[0] in "+-":
        sign = -1 if text[0] == "-" else 1
        pos = 1
    start = pos
    depth = 0
    for i in range(pos, len(text)):
        ch = text[i]
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        elif ch in "+-" and depth == 0 and i > start and text[i - 1] not in "*/_":
            out.append((sign, text[start:i]))
            sign = -1 if ch == "-" else 1
            start = i + 1
    out.append((sign, text[start:]))
    return out


def make_algebra(field: Field, tensor, names: Optional[Sequence[str]] = None, label: Optional[str] = None) -> LieAlgebra:
    """Validate a dense ``d x d x d`` tensor and build the algebra."""
    d = len(tensor)
    names = list(names) if names is not None else [f"b{i}" for i in range(d)]
    if len(names) != d:
        raise ValueError("names and tensor dimension differ")
    raw = []
    for i in range(d):
        if len(tensor[i]) != d:
            raise ValueError("tensor must have shape d x d x d")
        raw.append([])
        for j in range(d):
            if len(tensor[i][j]) != d:
                raise ValueError("tensor must have shape d x d x d")
            raw[i].append([field(c).value if not isinstance(c, FieldScalar) else c.value for c in tensor[i][j]])
    for i in range(d):
        if any(not field.is_zero(c) for c in raw[i][i]):
            raise AntisymmetryViolation(i, i)
        for j in range(i + 1, d):
            if any(not field.is_zero(field.add(a, b)) for a, b in zip(raw[i][j], raw[j][i])):
                raise AntisymmetryViolation(i, j)
    table = {(i, j): {k: c for k, c in enumerate(raw[i][j]) if not field.is_zero(c)}
             for i in range(d) for j in range(i + 1, d)}
    return LieAlgebra(field, names, table, label=label)


def bracket(L: LieAlgebra, u, v) -> LieVector:
    return L.bracket(u, v)


def direct_sum(*algebras: LieAlgebra, label: Optional[str] = None) -> LieAlgebra:
    field = algebras[0].field
    if any(a.field != field for a in algebras):
        raise ValueError("summands must share the field")
    names, table, offset = [], {}, 0
    seen = set()
    for a in algebras:
        for n in a.names:
            name = n if n not in seen else f"{n}'{offset}"
            names.append(name)
            seen.add(name)
        for (i, j), row in a.table().items():
            table[(i + offset, j + offset)] = {k + offset: v for k, v in row.items()}
        offset += a.dim
    return LieAlgebra(field, names, table, label=label or "+".join(a.label for a in algebras), validate=False)


def quotient(L: LieAlgebra, ideal: Subspace) -> Tuple[LieAlgebra, List[int]]:
    """L / ideal on the complement spanned by the non-pivot basis vectors."""
    if not L.is_ideal(ideal):
        raise ValueError("not an ideal")
    comp = ideal.complement_indices()
    pos = {c: n for n, c in enumerate(comp)}
    table = {}
    for a, i in enumerate(comp):
        for b, j in enumerate(comp):
            if a < b:
                red = ideal.reduce(L.bracket_raw(L.basis_raw(i), L.basis_raw(j)))
                row = {pos[k]: v for k, v in enumerate(red) if not L.field.is_zero(v)}
                if row:
                    table[(a, b)] = row
    names = [L.names[i] for i in comp]
    return LieAlgebra(L.field, names, table, label=f"{L.label}/I", validate=False), comp


# ---------------------------------------------------------------- structure

def series(L: LieAlgebra, kind: str = "derived", within: Optional[Subspace] = None) -> List[Subspace]:
    """Derived or lower central series of ``within`` (default L).

    The list stops as soon as a term is zero or equals its predecessor.
    """
    start = within if within is not None else L.whole()
    if not L.is_subalgebra(start):
        raise NotASubalgebra("series requires a subalgebra")
    if kind not in ("derived", "lower-central"):
        raise ValueError(f"unknown series kind {kind!r}")
    out = [start]
    while not out[-1].is_zero():
        prev = out[-1]
        nxt = L.bracket_spaces(prev, prev) if kind == "derived" else L.bracket_spaces(start, prev)
        out.append(nxt)
        if nxt == prev:
            break
    return out


def is_solvable(L: LieAlgebra, within: Optional[Subspace] = None) -> bool:
    return series(L, "derived", within)[-1].is_zero()


def is_nilpotent(L: LieAlgebra, within: Optional[Subspace] = None) -> bool:
    return series(L, "lower-central", within)[-1].is_zero()


def derived_length(L: LieAlgebra, within: Optional[Subspace] = None) -> int:
    """Number of derived steps needed to reach 0 (0 for the zero subspace)."""
    s = series(L, "derived", within)
    if not s[-1].is_zero():
        raise ValueError("not solvable")
    return len(s) - 1


def ideal_generated(L: LieAlgebra, y) -> Subspace:
    y = L.vector(y)
    space = L.span([y.coords])
    frontier = list(space.basis)
    while frontier:
        new = []
        for v in frontier:
            for i in range(L.dim):
                w = L.bracket_raw(L.basis_raw(i), v)
                if not space.contains(w):
                    space = space + L.span([w])
                    new.append(w)
        frontier = new
    return space


def killing_form(L: LieAlgebra) -> List[List]:
    f = L.field
    ads = L.ad_matrices
    return [[trace(f, matmul(f, ads[i], ads[j])) for j in range(L.dim)] for i in range(L.dim)]


def _require_char0(L: LieAlgebra, what: str):
    if L.field.characteristic != 0:
        raise UnsupportedCharacteristic(f"{what} is only implemented in characteristic 0")


def solvable_radical(L: LieAlgebra) -> Subspace:
    """Killing-orthogonal complement of [L, L], self-checked."""
    _require_char0(L, "solvable_radical")
    key = "radical"
    if key in L._cache:
        return L._cache[key]
    f = L.field
    kf = killing_form(L)
    derived = L.bracket_spaces(L.whole(), L.whole())
    rows = [matvec(f, kf, d) for d in derived.basis]
    R = L.span(nullspace(f, rows, L.dim))
    if not L.is_ideal(R) or not is_solvable(L, R):
        raise AssertionError("radical self-check failed: not a solvable ideal")
    if not R.is_full():
        Q, _ = quotient(L, R)
        if rank(f, killing_form(Q)) != Q.dim:
            raise AssertionError("radical self-check failed: quotient is not semisimple")
    L._cache[key] = R
    return R


def _associative_closure(f: Field, gens: List[List[List]], d: int) -> List[List[List]]:
    """Basis of the unital associative matrix algebra generated by ``gens``."""
    flat = lambda m: tuple(c for row in m for c in row)
    unflat = lambda v: [list(v[r * d:(r + 1) * d]) for r in range(d)]
    space = Subspace(f, d * d, [flat(identity(f, d))])
    frontier = list(space.basis)
    while frontier:
        new = []
        for v in frontier:
            m = unflat(v)
            for g in gens:
                w = flat(matmul(f, m, g))
                if not space.contains(w):
                    space = space + Subspace(f, d * d, [w])
                    new.append(w)
        frontier = new
    return [unflat(v) for v in space.basis]


def nilradical(L: LieAlgebra) -> Subspace:
    """Largest nilpotent ideal, self-checked.

    With A the unital associative algebra generated by ``ad(R)``, an element
    ``x`` of R has ``ad x`` nilpotent iff ``tr(ad x . a) = 0`` for every a in A
    (A is triangularizable by Lie's theorem; the converse uses ``tr((ad x)^k) = 0``
    in characteristic 0).  This makes the nilradical a linear kernel.
    """
    _require_char0(L, "nilradical")
    key = "nilradical"
    if key in L._cache:
        return L._cache[key]
    f = L.field
    R = solvable_radical(L)
    if R.is_zero():
        N = R
    else:
        ad_r = [L.ad_raw(r) for r in R.basis]
        alg = _associative_closure(f, ad_r, L.dim)
        # x = sum_s lambda_s r_s; constraint per a: sum_s lambda_s tr(ad r_s a) = 0
        rows = [[trace(f, matmul(f, adr, a)) for adr in ad_r] for a in alg]
        lambdas = nullspace(f, rows, R.dim)
        vecs = []
        for lam in lambdas:
            v = L.zero_raw()
            for c, r in zip(lam, R.basis):
                v = tuple(f.add(a, f.mul(c, b)) for a, b in zip(v, r))
            vecs.append(v)
        N = L.span(vecs)
    if not L.is_ideal(N) or not is_nilpotent(L, N):
        raise AssertionError("nilradical self-check failed")
    if any(nilpotency_index(f, L.ad_raw(v)) == 0 for v in N.basis):
        raise AssertionError("nilradical self-check failed: non-nilpotent basis element")
    L._cache[key] = N
    return N


def center(L: LieAlgebra) -> Subspace:
    f = L.field
    rows = []
    for i in range(L.dim):
        rows.extend(L.ad_matrices[i])  # rows of ad(b_i): coefficient of b_k in [b_i, x]
    return L.span(nullspace(f, rows, L.dim))


# ---------------------------------------------------------------- grids

def integer_grid(d: int, radius: int = 2) -> Iterator[tuple]:
    """Nonzero integer vectors in [-radius, radius]^d in graded order."""
    order = [v for r in range(1, radius + 1) for v in (r, -r)] + [0]

    def rec(pos, rem):
        if pos == d:
            if rem == 0:
                yield ()
            return
        room = radius * (d - pos - 1)
        for v in order:
            a = abs(v)
            if a <= rem and rem - a <= room:
                for tail in rec(pos + 1, rem - a):
                    yield (v,) + tail

    for w in range(1, radius * d + 1):
        yield from rec(0, w)


def finite_graded(p: int, d: int, projective: bool = False) -> np.ndarray:
    """All vectors of GF(p)^d (minus 0) as an ``(N, d)`` int array in graded order."""
    n = p ** d
    if n > ENUMERATION_CAP:
        raise EnumerationTooLarge(f"{p}^{d} = {n} vectors exceed cap {ENUMERATION_CAP}")
    idx = np.arange(n, dtype=np.int64)
    ranks = np.empty((n, d), dtype=np.int16)
    for col in range(d - 1, -1, -1):
        ranks[:, col] = idx % p
        idx //= p
    values = (ranks + 1) % p
    weight = np.count_nonzero(values, axis=1)
    order = np.argsort(weight, kind="stable")
    values = values[order][1:]  # drop the zero vector
    if projective:
        first = values[np.arange(len(values)), np.argmax(values != 0, axis=1)]
        values = values[first == 1]
    return values


# ---------------------------------------------------------------- numpy batches

class _NumpyTables:
    def __init__(self, L: LieAlgebra):
        d, p = L.dim, L.field.characteristic
        if d * d * (p - 1) ** 3 >= 2 ** 53:
            raise UnsupportedCharacteristic("field too large for exact float64 batches")
        self.p, self.d = p, d
        C = np.zeros((d, d, d), dtype=np.float64)
        for (i, j), row in L._pairs.items():
            for k, v in row:
                C[i, j, k] = v
        self.C3 = C
        self.C2 = C.reshape(d * d, d)
        self.inverses = np.array([0] + [pow(a, -1, p) for a in range(1, p)], dtype=np.float64)

    def bracket(self, U: np.ndarray, V: np.ndarray) -> np.ndarray:
        n, d = U.shape
        # entries are reduced and nonnegative, so fmod equals mod and sums stay exact
        P = (U[:, :, None] * V[:, None, :]).reshape(n, d * d)
        return np.fmod(P @ self.C2, self.p)

    def normalize(self, V: np.ndarray) -> np.ndarray:
        """Scale each nonzero row so its first nonzero entry is 1."""
        lead = V[np.arange(len(V)), np.argmax(V != 0, axis=1)].astype(np.int64)
        return np.fmod(V * self.inverses[lead][:, None], self.p)

    def right_matrix(self, y: Sequence) -> np.ndarray:
        """B with ``[x, y] = x @ B``."""
        return np.mod(np.einsum("ijk,j->ik", self.C3, np.asarray(y, dtype=np.float64)), self.p)

    def left_matrix(self, x: Sequence) -> np.ndarray:
        """B with ``[x, y] = y @ B``."""
        return np.mod(np.einsum("ijk,i->jk", self.C3, np.asarray(x, dtype=np.float64)), self.p)

    def ad_batch(self, T: np.ndarray) -> np.ndarray:
        """``(N, d, d)`` stack of row-action matrices: ``z @ M[n] = [T[n], z]``."""
        return np.mod(np.einsum("ni,ijk->njk", T, self.C3), self.p)


def _nonzero_rows(A: np.ndarray) -> np.ndarray:
    return np.any(A != 0, axis=1)


def _run_chunks(func, chunks: Sequence, threads: int, stop) -> list:
    """Apply ``func`` to chunks in order; stop early once ``stop(result)`` holds.

    Results are returned in chunk order, so merges are independent of scheduling.
    """
    results = []
    if threads <= 1:
        for ch in chunks:
            r = func(ch)
            results.append(r)
            if stop(r):
                break
        return results
    with ThreadPoolExecutor(max_workers=threads) as pool:
        for start in range(0, len(chunks), threads):
            batch = list(pool.map(func, chunks[start:start + threads]))
            for r in batch:
                results.append(r)
                if stop(r):
                    return results
    return results


def _chunks(arr: np.ndarray, size: int = CHUNK_ROWS) -> List[Tuple[int, np.ndarray]]:
    return [(s, arr[s:s + size]) for s in range(0, len(arr), size)]


# ---------------------------------------------------------------- sequences

def evaluate_sequence(L: LieAlgebra, seq, n: int, x, y, z=None) -> List[LieVector]:
    """Values ``u_1, ..., u_n`` of a Lie sequence at concrete vectors."""
    seq = get_sequence(seq, "lie")
    xr, yr = L.vector(x).coords, L.vector(y).coords
    zr = L.vector(z).coords if z is not None else None
    if seq.arity == 3 and zr is None:
        raise ValueError(f"{seq.id} needs a third argument z")
    br = L.bracket_raw
    if seq.id == "v-lie" or seq.id == "r-lie":
        t = br(xr, yr)
        cur = xr if seq.id == "v-lie" else br(zr, t)
        out = [cur]
        for _ in range(n - 1):
            cur = br(cur, t)
            out.append(cur)
    else:
        cur = seq.seed(xr, yr, zr, br)
        out = [cur]
        for _ in range(n - 1):
            cur = seq.step(cur, xr, yr, zr, br)
            out.append(cur)
    return [LieVector(L, v) for v in out]


def _poly_bracket(L: LieAlgebra, U: List[MultiPoly], V: List[MultiPoly], nvars: int) -> List[MultiPoly]:
    f = L.field
    out = [MultiPoly.zero(f, nvars) for _ in range(L.dim)]
    for (i, j), row in L._pairs.items():
        if U[i].is_identically_zero() or V[j].is_identically_zero():
            continue
        prod = U[i] * V[j]
        for k, c in row:
            out[k] = out[k] + prod.scale(c)
    return out


def _poly_const(L: LieAlgebra, v: Sequence, nvars: int) -> List[MultiPoly]:
    return [MultiPoly.constant(L.field, nvars, FieldScalar(L.field, c)) for c in v]


def symbolic_sequence(L: LieAlgebra, seq, n: int, y=None) -> List[List[MultiPoly]]:
    """Coordinate polynomials of ``u_1..u_n``.

    With ``y`` given the polynomials are in the d coordinates of x; otherwise
    in 2d variables (x coordinates first, then y).
    """
    seq = get_sequence(seq, "lie")
    if seq.arity != 2:
        raise ValueError("symbolic evaluation supports two-variable sequences")
    d, f = L.dim, L.field
    nvars = d if y is not None else 2 * d
    X = [MultiPoly.variable(f, nvars, i) for i in range(d)]
    Y = _poly_const(L, L.vector(y).coords, nvars) if y is not None else \
        [MultiPoly.variable(f, nvars, d + i) for i in range(d)]
    br = lambda a, b: _poly_bracket(L, a, b, nvars)
    if seq.id == "v-lie":
        t = br(X, Y)
        cur = X
        out = [cur]
        for _ in range(n - 1):
            cur = br(cur, t)
            out.append(cur)
        return out
    cur = seq.seed(X, Y, None, br)
    out = [cur]
    for _ in range(n - 1):
        cur = seq.step(cur, X, Y, None, br)
        out.append(cur)
    return out


def _all_zero(polys: Sequence[MultiPoly]) -> bool:
    return all(p.is_identically_zero() for p in polys)


# ---------------------------------------------------------------- verdicts

@dataclass
class EngelVerdict:
    kind: str
    outcome: str                  # engel | not-engel | undetermined
    n: Optional[int] = None
    witness: Optional[LieVector] = None
    certificate: dict = dc_field(default_factory=dict)
    iterations: int = 0
    method: str = ""

    @property
    def is_engel(self) -> bool:
        return self.outcome == "engel"

    def __str__(self):
        if self.outcome == "engel":
            return f"engel({self.n})"
        if self.outcome == "not-engel":
            return f"not-engel(x = {self.witness})"
        return f"undetermined({self.iterations})"

    def to_report(self, L: LieAlgebra, y, config: Optional[dict] = None, millis: int = 0) -> Report:
        y = L.vector(y)
        witness = None
        if self.outcome == "not-engel":
            witness = {"x": str(self.witness), "x_coords": self.witness.to_text()}
            witness.update(self.certificate)
        return Report(
            claim=f"lie.engel.{self.kind}",
            inputs={"algebra": L.label, "field": L.field.spec.label(), "y": str(y), "kind": self.kind},
            verdict=self.outcome,
            witness=witness,
            iterations=self.iterations,
            millis=millis,
            config=dict(config or {}),
            details={"n": self.n, "method": self.method},
        )


KINDS = ("e", "v", "w", "strict", "total")


def engel_test(L: LieAlgebra, y, kind: str, *, max_n: int = DEFAULT_MAX_N, cap: int = ENUMERATION_CAP,
               threads: int = 1, grid_radius: int = 2, prescreen: int = 256) -> EngelVerdict:
    """Decide whether ``y`` is an Engel element of the given kind."""
    y = L.vector(y)
    if kind not in KINDS:
        raise ValueError(f"unknown Engel kind {kind!r}")
    if kind == "e":
        return _engel_e(L, y)
    if kind == "total":
        return _engel_total(L, y, grid_radius)
    finite = L.field.is_finite
    if finite:
        _require_batches(L)
        n_x = L.field.order ** L.dim
        if n_x > cap:
            raise EnumerationTooLarge(f"{n_x} vectors x exceed cap {cap}")
    if kind == "v":
        if finite:
            return _engel_v_finite(L, y, threads)
        return _engel_v_char0(L, y, grid_radius, prescreen)
    if kind == "w":
        if finite:
            return _engel_w_finite(L, y, threads)
        return _engel_w_char0(L, y, max_n, grid_radius)
    # strict
    base = _engel_e(L, y)
    if not base.is_engel:
        base.kind = "strict"
        base.method = "ad y not nilpotent"
        return base
    if finite:
        return _engel_strict_finite(L, y, base, threads)
    return _engel_strict_char0(L, y, base, grid_radius, prescreen)


def _require_batches(L: LieAlgebra):
    if L._np is None:
        raise UnsupportedCharacteristic("exhaustive scans are implemented over prime fields")


def _first_nonvanishing_basis(L: LieAlgebra, mat) -> Optional[int]:
    for j in range(L.dim):
        if any(not L.field.is_zero(mat[k][j]) for k in range(L.dim)):
            return j
    return None


def _engel_e(L: LieAlgebra, y: LieVector) -> EngelVerdict:
    f = L.field
    ad_y = L.ad_raw(y.coords)
    idx = nilpotency_index(f, ad_y)
    if idx:
        return EngelVerdict("e", "engel", n=max(idx, 1), iterations=idx, method="ad nilpotency")
    power = ad_y
    for _ in range(L.dim - 1):
        power = matmul(f, power, ad_y)
    j = _first_nonvanishing_basis(L, power)
    return EngelVerdict("e", "not-engel", witness=L.basis(j), iterations=L.dim,
                        certificate={"ad_power": L.dim}, method="ad nilpotency")


def _engel_total(L: LieAlgebra, y: LieVector, grid_radius: int) -> EngelVerdict:
    I = ideal_generated(L, y)
    lc = series(L, "lower-central", I)
    if lc[-1].is_zero():
        return EngelVerdict("total", "engel", n=len(lc) - 1, iterations=len(lc), method="ideal nilpotency")
    # some element of the ideal is not ad-nilpotent (Engel's theorem); find one
    f = L.field
    for coeffs in _coefficient_points(L, I.dim, grid_radius):
        z = L.zero_raw()
        for c, b in zip(coeffs, I.basis):
            z = tuple(f.add(a, f.mul(c, e)) for a, e in zip(z, b))
        if nilpotency_index(f, L.ad_raw(z)) == 0:
            zv = LieVector(L, z)
            return EngelVerdict("total", "not-engel", witness=zv, iterations=len(lc),
                                certificate={"z": str(zv), "ideal_dim": I.dim},
                                method="ideal nilpotency")
    raise AssertionError("non-nilpotent ideal without a non-nilpotent element")


def _coefficient_points(L: LieAlgebra, m: int, radius: int):
    f = L.field
    if f.is_finite:
        arr = finite_graded(f.characteristic, m) if f.spec.kind == PRIME else None
        if arr is None:
            for tup in itertools.product(range(f.order), repeat=m):
                if any(tup):
                    yield tup
            return
        for row in arr:
            yield tuple(int(c) for c in row)
        return
    r = radius
    while True:
        for pt in integer_grid(m, r):
            yield tuple(Fraction(c) for c in pt)
        r += 1


def _grid(L: LieAlgebra, radius: int):
    """Integer grid in graded order, widened one step at a time once exhausted."""
    seen = set()
    r = radius
    while True:
        for pt in integer_grid(L.dim, r):
            if pt in seen:
                continue
            seen.add(pt)
            yield tuple(Fraction(c) for c in pt)
        r += 1
        if r > radius + 8:
            return


def _v_value(L: LieAlgebra, x: tuple, y: tuple, n: int) -> tuple:
    t = L.bracket_raw(x, y)
    cur = x
    for _ in range(n - 1):
        cur = L.bracket_raw(cur, t)
    return cur


def _is_zero_raw(L: LieAlgebra, v) -> bool:
    return all(L.field.is_zero(c) for c in v)


def _engel_v_char0(L: LieAlgebra, y: LieVector, radius: int, prescreen: int) -> EngelVerdict:
    d = L.dim
    bound = d + 1
    tested = 0
    for x in itertools.islice(_grid(L, radius), prescreen):
        tested += 1
        val = _v_value(L, x, y.coords, bound)
        if not _is_zero_raw(L, val):
            return _v_not_engel(L, x, val, bound, tested, "grid evaluation")
    sym = symbolic_sequence(L, "v-lie", bound, y=y)
    for n, vec in enumerate(sym, start=1):
        if _all_zero(vec):
            return EngelVerdict("v", "engel", n=n, iterations=tested + n, method="symbolic")
    for x in _grid(L, radius):
        tested += 1
        val = _v_value(L, x, y.coords, bound)
        if not _is_zero_raw(L, val):
            return _v_not_engel(L, x, val, bound, tested, "symbolic + grid witness")
    raise AssertionError("nonzero polynomial without a grid witness")


def _v_not_engel(L, x, val, bound, tested, method):
    return EngelVerdict("v", "not-engel", witness=LieVector(L, x), iterations=tested,
                        certificate={"n": bound, "value": L.format_vector(val)}, method=method)


def _engel_v_finite(L: LieAlgebra, y: LieVector, threads: int) -> EngelVerdict:
    tabs = L._np
    d, p = L.dim, tabs.p
    xs = finite_graded(p, d, projective=True)
    B = tabs.right_matrix(y.coords)

    def work(chunk):
        start, X = chunk
        X = X.astype(np.float64)
        T = np.mod(X @ B, p)
        V = X
        first_zero = np.full(len(X), 0, dtype=np.int64)
        for n in range(1, d + 2):
            z = ~_nonzero_rows(V)
            first_zero[(first_zero == 0) & z] = n
            if n <= d:
                V = tabs.bracket(V, T)
        bad = np.flatnonzero(first_zero == 0)
        return (start + int(bad[0]) if len(bad) else None, int(first_zero.max(initial=1)))

    results = _run_chunks(work, _chunks(xs), threads, stop=lambda r: r[0] is not None)
    fails = [r[0] for r in results if r[0] is not None]
    if fails:
        x = tuple(int(c) for c in xs[fails[0]])
        val = _v_value(L, x, y.coords, d + 1)
        return EngelVerdict("v", "not-engel", witness=LieVector(L, x), iterations=fails[0] + 1,
                            certificate={"n": d + 1, "value": L.format_vector(val)}, method="exhaustive")
    n = max(r[1] for r in results) if results else 1
    return EngelVerdict("v", "engel", n=n, iterations=len(xs), method="exhaustive")


def _w_step(L, w, x, y):
    return L.bracket_raw(L.bracket_raw(w, x), L.bracket_raw(w, y))


def _projective_key(L: LieAlgebra, v: tuple):
    f = L.field
    lead = next(c for c in v if not f.is_zero(c))
    inv = f.inv(lead)
    return tuple(f.mul(inv, c) for c in v)


def _height(v: tuple) -> int:
    return max((max(abs(c.numerator), c.denominator).bit_length() for c in v), default=0)


def _engel_w_char0(L: LieAlgebra, y: LieVector, max_n: int, radius: int,
                   grid_budget: int = 2000, height_cap: int = 4096) -> EngelVerdict:
    R = solvable_radical(L)
    if R.contains(y.coords):
        bound = derived_length(L, R) + 1
        sym = symbolic_sequence(L, "w-lie", bound, y=y)
        for n, vec in enumerate(sym, start=1):
            if _all_zero(vec):
                return EngelVerdict("w", "engel", n=n, iterations=n, method="radical bound + symbolic")
        raise AssertionError("w-sequence of a radical element did not vanish within the derived-length bound")
    iterations = 0
    for x in itertools.islice(_grid(L, radius), grid_budget):
        w = L.bracket_raw(x, y.coords)
        seen = {}
        for n in range(1, max_n + 1):
            iterations += 1
            if _is_zero_raw(L, w):
                break
            key = _projective_key(L, w)
            if key in seen:
                return EngelVerdict("w", "not-engel", witness=LieVector(L, x), iterations=iterations,
                                    certificate={"projective_cycle": [seen[key], n]},
                                    method="projective cycle")
            seen[key] = n
            if _height(w) > height_cap:
                break
            w = _w_step(L, w, x, y.coords)
    return EngelVerdict("w", "undetermined", iterations=iterations, method="projective cycle search",
                        certificate={"max_n": max_n})


def _brent_w(tabs: _NumpyTables, X: np.ndarray, y):
    """Per row of X: least n with w_n = 0, or 0 if the orbit cycles away from 0.

    ``y`` is one vector or an array with one row per row of X. The step is
    homogeneous of degree 2 in w, so orbits are tracked on projective
    classes: a repeated class among nonzero values can never reach 0.
    """
    Yb = np.asarray(y, dtype=np.float64)
    if Yb.ndim == 1:
        Yb = np.broadcast_to(Yb, X.shape)
    N = len(X)

    def step(W, Xs, Ys):
        return tabs.normalize(tabs.bracket(tabs.bracket(W, Xs), tabs.bracket(W, Ys)))

    result = np.full(N, -1, dtype=np.int64)
    W1 = tabs.normalize(tabs.bracket(X, Yb))
    zero1 = ~_nonzero_rows(W1)
    result[zero1] = 1
    idx = np.flatnonzero(~zero1)
    tort = W1[idx]
    hare = step(tort, X[idx], Yb[idx])
    m = 2
    power = np.ones(len(idx), dtype=np.int64)
    lam = np.ones(len(idx), dtype=np.int64)
    limit = tabs.p ** tabs.d + 2
    while len(idx):
        z = ~_nonzero_rows(hare)
        cyc = ~z & np.all(hare == tort, axis=1)
        result[idx[z]] = m
        result[idx[cyc]] = 0
        keep = ~(z | cyc)
        idx, tort, hare, power, lam = idx[keep], tort[keep], hare[keep], power[keep], lam[keep]
        if not len(idx):
            break
        reset = power == lam
        tort[reset] = hare[reset]
        power[reset] *= 2
        lam[reset] = 0
        hare = step(hare, X[idx], Yb[idx])
        lam += 1
        m += 1
        if m > limit:
            raise AssertionError("orbit longer than the state space")
    return result


def _engel_w_finite(L: LieAlgebra, y: LieVector, threads: int) -> EngelVerdict:
    tabs = L._np
    xs = finite_graded(tabs.p, L.dim, projective=True)

    def work(chunk):
        start, X = chunk
        res = _brent_w(tabs, X.astype(np.float64), y.coords)
        bad = np.flatnonzero(res == 0)
        return (start + int(bad[0]) if len(bad) else None, int(res.max(initial=1)))

    results = _run_chunks(work, _chunks(xs, 1 << 13), threads, stop=lambda r: r[0] is not None)
    fails = [r[0] for r in results if r[0] is not None]
    if fails:
        x = tuple(int(c) for c in xs[fails[0]])
        return EngelVerdict("w", "not-engel", witness=LieVector(L, x), iterations=fails[0] + 1,
                            certificate={"cycle": "orbit of w_n avoids 0"}, method="exhaustive cycle detection")
    n = max(r[1] for r in results)
    return EngelVerdict("w", "engel", n=n, iterations=len(xs), method="exhaustive cycle detection")


def _engel_strict_finite(L: LieAlgebra, y: LieVector, base: EngelVerdict, threads: int) -> EngelVerdict:
    tabs = L._np
    d, p = L.dim, tabs.p
    xs = finite_graded(p, d, projective=True)
    B = tabs.right_matrix(y.coords)

    def work(chunk):
        start, X = chunk
        T = np.mod(X.astype(np.float64) @ B, p)
        M = tabs.ad_batch(T)
        P = M
        for _ in range(d - 1):
            P = np.mod(P @ M, p)
        bad = np.flatnonzero(np.any(P.reshape(len(X), -1) != 0, axis=1))
        return start + int(bad[0]) if len(bad) else None

    results = _run_chunks(work, _chunks(xs, 1 << 12), threads, stop=lambda r: r is not None)
    fails = [r for r in results if r is not None]
    if fails:
        x = tuple(int(c) for c in xs[fails[0]])
        t = LieVector(L, L.bracket_raw(x, y.coords))
        return EngelVerdict("strict", "not-engel", witness=LieVector(L, x), iterations=fails[0] + 1,
                            certificate={"bracket": str(t), "reason": "ad [x,y] not nilpotent"},
                            method="exhaustive")
    return EngelVerdict("strict", "engel", n=base.n, iterations=len(xs), method="exhaustive")


def _engel_strict_char0(L: LieAlgebra, y: LieVector, base: EngelVerdict, radius: int,
                        prescreen: int) -> EngelVerdict:
    f, d = L.field, L.dim
    tested = 0

    def nonnilpotent(x):
        return nilpotency_index(f, L.ad_raw(L.bracket_raw(x, y.coords))) == 0

    for x in itertools.islice(_grid(L, radius), prescreen):
        tested += 1
        if nonnilpotent(x):
            return _strict_witness(L, x, y, tested, "grid evaluation")
    # symbolic: M(x) = ad [x, y] is linear in x; test M^d == 0 as a polynomial matrix
    nv = d
    X = [MultiPoly.variable(f, nv, i) for i in range(d)]
    T = _poly_bracket(L, X, _poly_const(L, y.coords, nv), nv)
    M = [[MultiPoly.zero(f, nv) for _ in range(d)] for _ in range(d)]
    for i in range(d):
        if T[i].is_identically_zero():
            continue
        adi = L.ad_matrices[i]
        for k in range(d):
            for j in range(d):
                if adi[k][j]:
                    M[k][j] = M[k][j] + T[i].scale(adi[k][j])
    power, n_t = M, 1
    while not all(e.is_identically_zero() for row in power for e in row):
        if n_t >= d:
            for x in _grid(L, radius):
                tested += 1
                if nonnilpotent(x):
                    return _strict_witness(L, x, y, tested, "symbolic + grid witness")
            raise AssertionError("non-nilpotent polynomial matrix without a grid witness")
        power = _poly_matmul(power, M, f, nv)
        n_t += 1
    return EngelVerdict("strict", "engel", n=max(base.n, n_t), iterations=tested + n_t, method="symbolic")


def _strict_witness(L, x, y, tested, method):
    t = LieVector(L, L.bracket_raw(x, y.coords))
    return EngelVerdict("strict", "not-engel", witness=LieVector(L, x), iterations=tested,
                        certificate={"bracket": str(t), "reason": "ad [x,y] not nilpotent"}, method=method)


def _poly_matmul(A, B, f, nv):
    d = len(A)
    out = [[MultiPoly.zero(f, nv) for _ in range(d)] for _ in range(d)]
    for i in range(d):
        for k in range(d):
            if A[i][k].is_identically_zero():
                continue
            for j in range(d):
                if not B[k][j].is_identically_zero():
                    out[i][j] = out[i][j] + A[i][k] * B[k][j]
    return out


# ---------------------------------------------------------------- identities

def identity_check(L: LieAlgebra, seq, n: int, *, method: str = "auto", cap: int = ENUMERATION_CAP,
                   threads: int = 1, grid_radius: int = 2, prescreen: int = 256) -> Report:
    """Does ``u_n(x, y) = 0`` hold for all x, y in L?

    Characteristic 0: symbolic in the 2d coordinates of (x, y), with an
    evaluation prescreen when ``method="auto"``.  Prime fields: pairs are
    scanned in order (x in graded order, then y); a failure needs no complete
    scan, while confirming the identity requires visiting every pair up to
    scaling and is refused above ``cap``.
    """
    seq = get_sequence(seq, "lie")
    if seq.id not in ("v-lie", "w-lie", "e-lie"):
        raise ValueError(f"identity_check supports v-lie, w-lie and e-lie, not {seq.id}")
    timer = Timer()
    config = {"method": method, "cap": cap, "grid_radius": grid_radius}
    inputs = {"algebra": L.label, "field": L.field.spec.label(), "seq": seq.id, "n": n}
    if L.field.is_finite:
        verdict, witness, its, details = _identity_finite(L, seq, n, cap, threads)
    else:
        verdict, witness, its, details = _identity_char0(L, seq, n, method, grid_radius, prescreen)
    return Report(claim="lie.identity", inputs=inputs, verdict=verdict, witness=witness, iterations=its,
                  millis=timer.millis(), config=config, details=details)


def _seq_value(L: LieAlgebra, seq, n: int, x: tuple, y: tuple) -> tuple:
    return evaluate_sequence(L, seq, n, LieVector(L, x), LieVector(L, y))[-1].coords


def _pair_grid(L: LieAlgebra, radius: int):
    """Pairs of distinct basis vectors first, then the integer grid on L x L."""
    d = L.dim
    unit = [tuple(Fraction(int(i == k)) for i in range(d)) for k in range(d)]
    for i, j in itertools.permutations(range(d), 2):
        yield unit[i], unit[j]
    for pt in integer_grid(2 * d, radius):
        yield tuple(Fraction(c) for c in pt[:d]), tuple(Fraction(c) for c in pt[d:])


def _pair_witness(L, x, y, val):
    return {"x": L.format_vector(x), "y": L.format_vector(y),
            "x_coords": [L.field.format(c) for c in x], "y_coords": [L.field.format(c) for c in y],
            "value": L.format_vector(val)}


def _identity_char0(L, seq, n, method, radius, prescreen):
    tested = 0
    if method in ("auto", "numeric"):
        for x, y in itertools.islice(_pair_grid(L, radius), prescreen):
            tested += 1
            val = _seq_value(L, seq, n, x, y)
            if not _is_zero_raw(L, val):
                return "fails", _pair_witness(L, x, y, val), tested, {"method": "evaluation"}
    sym = symbolic_sequence(L, seq, n)[-1]
    if _all_zero(sym):
        return "holds", None, tested, {"method": "symbolic", "symbolic_zero": True}
    for r in range(radius, radius + 8):
        for x, y in _pair_grid(L, r):
            tested += 1
            val = _seq_value(L, seq, n, x, y)
            if not _is_zero_raw(L, val):
                details = {"method": "symbolic", "symbolic_zero": False,
                           "monomials": sum(len(p) for p in sym)}
                return "fails", _pair_witness(L, x, y, val), tested, details
    raise AssertionError("nonzero polynomial without a grid witness")


def _seq_batch_fixed_x(tabs: _NumpyTables, seq, n: int, x: np.ndarray, Y: np.ndarray) -> np.ndarray:
    p = tabs.p
    Bx = tabs.left_matrix(x)
    X = np.broadcast_to(x, Y.shape)
    T = np.mod(Y @ Bx, p)      # [x, y]
    if seq.id == "v-lie":
        cur = np.array(X, dtype=np.float64)
        for _ in range(n - 1):
            cur = tabs.bracket(cur, T)
        return cur
    cur = T
    for _ in range(n - 1):
        if seq.id == "e-lie":
            cur = tabs.bracket(cur, Y)
        else:
            cur = tabs.bracket(tabs.bracket(cur, X), tabs.bracket(cur, Y))
    return cur


def _identity_finite(L, seq, n, cap, threads):
    _require_batches(L)
    tabs = L._np
    vecs = finite_graded(tabs.p, L.dim, projective=True).astype(np.float64)
    total = len(vecs) * len(vecs)
    xs = vecs
    visited = 0
    # both sequences are homogeneous in x and in y, so lines suffice
    block = max(1, min(len(xs), threads * 4))
    for start in range(0, len(xs), block):
        chunk = list(enumerate(xs[start:start + block], start=start))

        def work(item):
            i, x = item
            V = _seq_batch_fixed_x(tabs, seq, n, x, vecs)
            bad = np.flatnonzero(_nonzero_rows(V))
            return (i, int(bad[0])) if len(bad) else None

        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                res = list(pool.map(work, chunk))
        else:
            res = [work(c) for c in chunk]
        for r in res:
            visited += len(vecs)
            if r is not None:
                x = tuple(int(c) for c in xs[r[0]])
                y = tuple(int(c) for c in vecs[r[1]])
                val = _seq_value(L, seq, n, x, y)
                return "fails", _pair_witness(L, x, y, val), visited, {"method": "exhaustive", "pairs": total}
        if visited > cap and visited < total:
            raise EnumerationTooLarge(f"no counterexample among {visited} pairs; {total} exceed cap {cap}")
    return "holds", None, visited, {"method": "exhaustive", "pairs": total}


# ---------------------------------------------------------------- Engel sets

def engel_set(L: LieAlgebra, kind: str, *, cap: int = ENUMERATION_CAP, threads: int = 1,
              max_n: int = DEFAULT_MAX_N) -> Tuple[List[LieVector], Report]:
    """All Engel elements of the given kind (prime fields only)."""
    if not L.field.is_finite:
        raise UnsupportedCharacteristic("engel_set enumerates elements; use a finite field")
    _require_batches(L)
    timer = Timer()
    p, d = L.field.characteristic, L.dim
    if p ** d > cap:
        raise EnumerationTooLarge(f"{p}^{d} elements exceed cap {cap}")
    reps = finite_graded(p, d, projective=True)
    if kind in ("v", "w"):
        if len(reps) ** 2 > PAIR_CAP:
            raise EnumerationTooLarge(f"{len(reps)}^2 pairs (x, y) exceed cap {PAIR_CAP}")
        flags = _engel_flags_by_pairs(L, kind, reps, threads)
        engel_reps = [LieVector(L, tuple(int(c) for c in row)) for row, ok in zip(reps, flags) if ok]
    else:
        engel_reps = []
        for row in reps:
            y = LieVector(L, tuple(int(c) for c in row))
            if engel_test(L, y, kind, max_n=max_n, cap=cap, threads=threads).is_engel:
                engel_reps.append(y)
    members = [L.zero()]
    for y in engel_reps:
        members.extend(y * c for c in range(1, p))
    members.sort(key=lambda v: _finite_rank(v.coords, p))
    solvable = is_solvable(L)
    perfect = L.bracket_spaces(L.whole(), L.whole()).is_full()
    report = Report(
        claim=f"lie.engel-set.{kind}",
        inputs={"algebra": L.label, "field": L.field.spec.label(), "kind": kind},
        verdict="holds",
        iterations=len(reps),
        millis=timer.millis(),
        config={"cap": cap},
        details={"size": len(members), "order": p ** d, "solvable": solvable, "perfect": perfect,
                 "lines": [str(v) for v in engel_reps[:50]]},
    )
    return members, report


def _engel_flags_by_pairs(L: LieAlgebra, kind: str, reps: np.ndarray, threads: int) -> List[bool]:
    """For each row y of ``reps``: is y a v- or w-Engel element, scanning all x in ``reps``."""
    tabs = L._np
    d, p = L.dim, tabs.p
    X_all = reps.astype(np.float64)
    block = max(1, (1 << 16) // len(reps))
    chunks = [(s, X_all[s:s + block]) for s in range(0, len(reps), block)]

    def work(chunk):
        _, Ys = chunk
        Y = np.repeat(Ys, len(X_all), axis=0)
        X = np.tile(X_all, (len(Ys), 1))
        if kind == "w":
            ok = _brent_w(tabs, X, Y) != 0
        else:
            T = tabs.bracket(X, Y)
            V = X
            for _ in range(d):
                V = tabs.bracket(V, T)
            ok = ~_nonzero_rows(V)
        return ok.reshape(len(Ys), len(X_all)).all(axis=1).tolist()

    results = _run_chunks(work, chunks, threads, stop=lambda r: False)
    return [flag for r in results for flag in r]


def _finite_rank(coords, p):
    ranks = tuple((c - 1) % p for c in coords)
    return (sum(1 for c in coords if c), ranks)


def all_vectors(p: int, d: int) -> np.ndarray:
    """Every vector of GF(p)^d, zero included, as an ``(p^d, d)`` int array."""
    n = p ** d
    if n > ENUMERATION_CAP:
        raise EnumerationTooLarge(f"{p}^{d} = {n} vectors exceed cap {ENUMERATION_CAP}")
    idx = np.arange(n, dtype=np.int64)
    out = np.empty((n, d), dtype=np.int16)
    for col in range(d - 1, -1, -1):
        out[:, col] = idx % p
        idx //= p
    return out


def vanishes_everywhere(L: LieAlgebra, seq, n: int, y, *, threads: int = 1) -> Report:
    """Evaluate ``u_n(x, y)`` at every x of a finite-field algebra (no projective shortcut)."""
    timer = Timer()
    seq = get_sequence(seq, "lie")
    if seq.arity != 2:
        raise ValueError(f"{seq.id} takes three arguments")
    _require_batches(L)
    tabs = L._np
    y = L.vector(y)
    xs = all_vectors(tabs.p, L.dim)
    yrow = np.asarray(y.coords, dtype=np.float64)

    def work(chunk):
        start, X = chunk
        X = X.astype(np.float64)
        Y = np.broadcast_to(yrow, X.shape)
        cur = seq.seed(X, Y, None, tabs.bracket)
        for _ in range(n - 1):
            cur = seq.step(cur, X, Y, None, tabs.bracket)
        bad = np.flatnonzero(_nonzero_rows(cur))
        return start + int(bad[0]) if len(bad) else None, int(len(bad))

    results = _run_chunks(work, _chunks(xs, 1 << 14), threads, stop=lambda r: False)
    fails = [r[0] for r in results if r[0] is not None]
    witness = None
    if fails:
        x = LieVector(L, tuple(int(c) for c in xs[fails[0]]))
        witness = {"x": str(x), "x_coords": x.to_text(),
                   "value": str(evaluate_sequence(L, seq, n, x, y)[-1])}
    return Report(claim=f"lie.vanishes.{seq.id}",
                  inputs={"algebra": L.label, "field": L.field.spec.label(), "y": str(y), "n": n},
                  verdict="fails" if witness else "holds", witness=witness, iterations=len(xs),
                  millis=timer.millis(), config={},
                  details={"vectors": len(xs), "nonvanishing": sum(r[1] for r in results)})
