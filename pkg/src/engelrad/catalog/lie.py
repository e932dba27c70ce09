"""Builtin Lie algebras with fixed basis orders.

=============  ==========================================  =====================
name           basis                                       brackets
=============  ==========================================  =====================
sl2            e_+, e_-, h                                 [h,e_+]=2e_+, [h,e_-]=-2e_-, [e_+,e_-]=h
gl2            e_+, e_-, h, z                              sl2 plus central z (identity matrix)
b2             h, e                                        [h,e]=e
heis3 / n3     x, y, z                                     [x,y]=z
sl3            e12, e23, e13, e21, e32, e31, h1, h2        matrix commutators, h1=E11-E22, h2=E22-E33
jacobson:p     e, f, e_1..e_p                              [e,f]=e, [e_i,e]=e_{i+1}, [e_p,e]=e_1, [e_i,f]=(i-1)e_i
witt:p         e_-1, e_0, ..., e_{p-2}                     [e_i,e_j]=(j-i)e_{i+j} when -1 <= i+j <= p-2
abelian:d      a_1..a_d                                    all zero
A+B            concatenated bases                          direct sum
=============  ==========================================  =====================
"""
from __future__ import annotations

from typing import Dict, Optional, Tuple

from sympy import isprime

from ..errors import BadParams
from ..exactfield import QQ, Field, GF
from ..liealg import LieAlgebra, direct_sum

CHAR0_NAMES = ("sl2", "gl2", "b2", "heis3", "n3", "sl3", "abelian")
CHARP_NAMES = ("jacobson", "witt")


def _table(field: Field, entries: Dict[Tuple[int, int], Dict[int, int]]):
    return {ij: {k: field(v).value for k, v in row.items()} for ij, row in entries.items()}


def sl2(field: Field = QQ) -> LieAlgebra:
    t = {(0, 1): {2: 1}, (0, 2): {0: -2}, (1, 2): {1: 2}}
    return LieAlgebra(field, ["e_+", "e_-", "h"], _table(field, t), label="sl2")


def gl2(field: Field = QQ) -> LieAlgebra:
    t = {(0, 1): {2: 1}, (0, 2): {0: -2}, (1, 2): {1: 2}}
    return LieAlgebra(field, ["e_+", "e_-", "h", "z"], _table(field, t), label="gl2")


def b2(field: Field = QQ) -> LieAlgebra:
    return LieAlgebra(field, ["h", "e"], _table(field, {(0, 1): {1: 1}}), label="b2")


def heis3(field: Field = QQ, label: str = "heis3") -> LieAlgebra:
    return LieAlgebra(field, ["x", "y", "z"], _table(field, {(0, 1): {2: 1}}), label=label)


def abelian(d: int, field: Field = QQ) -> LieAlgebra:
    if d < 1:
        raise BadParams("abelian algebra needs dimension >= 1")
    return LieAlgebra(field, [f"a_{i + 1}" for i in range(d)], {}, label=f"abelian:{d}")


def _sl3_basis():
    def unit(i, j):
        m = [[0] * 3 for _ in range(3)]
        m[i][j] = 1
        return m

    off = [(0, 1), (1, 2), (0, 2), (1, 0), (2, 1), (2, 0)]
    mats = [unit(i, j) for i, j in off]
    mats.append([[1, 0, 0], [0, -1, 0], [0, 0, 0]])
    mats.append([[0, 0, 0], [0, 1, 0], [0, 0, -1]])
    names = [f"e{i + 1}{j + 1}" for i, j in off] + ["h1", "h2"]
    return off, mats, names


def _decompose_sl3(m, off):
    coords = [m[i][j] for i, j in off]
    a, b = m[0][0], m[1][1]
    coords += [a, a + b]
    return coords


def sl3(field: Field = QQ) -> LieAlgebra:
    off, mats, names = _sl3_basis()

    def mm(a, b):
        return [[sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3)] for i in range(3)]

    table = {}
    for i in range(8):
        for j in range(i + 1, 8):
            ab, ba = mm(mats[i], mats[j]), mm(mats[j], mats[i])
            comm = [[ab[r][c] - ba[r][c] for c in range(3)] for r in range(3)]
            row = {k: v for k, v in enumerate(_decompose_sl3(comm, off)) if v}
            if row:
                table[(i, j)] = row
    return LieAlgebra(field, names, _table(field, table), label="sl3")


def jacobson(p: int, field: Optional[Field] = None) -> LieAlgebra:
    if not isprime(p):
        raise BadParams(f"jacobson needs a prime p, got {p}")
    field = field or GF(p)
    if field.characteristic != p:
        raise BadParams(f"jacobson({p}) lives in characteristic {p}, not over {field}")
    names = ["e", "f"] + [f"e_{i}" for i in range(1, p + 1)]
    E = lambda i: i + 1      # index of e_i
    # e_i sits to the left in the e- and f-relations; this is the ordering
    # for which the Jacobi identity holds
    t: Dict[Tuple[int, int], Dict[int, int]] = {(0, 1): {0: 1}}
    for i in range(1, p + 1):
        t[(0, E(i))] = {E(i + 1 if i < p else 1): -1}
        if (i - 1) % p:
            t[(1, E(i))] = {E(i): -(i - 1)}
    return LieAlgebra(field, names, _table(field, t), label=f"jacobson:{p}")


def witt(p: int, field: Optional[Field] = None) -> LieAlgebra:
    if not isprime(p) or p < 3:
        raise BadParams(f"witt needs a prime p > 2, got {p}")
    field = field or GF(p)
    if field.characteristic != p:
        raise BadParams(f"witt({p}) lives in characteristic {p}, not over {field}")
    idx = list(range(-1, p - 1))
    names = [f"e_{i}" for i in idx]
    t = {}
    for a, i in enumerate(idx):
        for b, j in enumerate(idx):
            if a < b and -1 <= i + j <= p - 2 and (j - i) % p:
                t[(a, b)] = {idx.index(i + j): j - i}
    return LieAlgebra(field, names, _table(field, t), label=f"witt:{p}")


def builtin_lie(name: str, params: Optional[dict] = None, field: Optional[Field] = None) -> LieAlgebra:
    """Build a named algebra; ``name`` may carry parameters (``witt:7``) or be a sum (``sl2+b2``)."""
    params = dict(params or {})
    if "+" in name:
        parts = [builtin_lie(part.strip(), params, field) for part in name.split("+")]
        return direct_sum(*parts, label=name)
    base, _, arg = name.partition(":")
    base = base.strip().lower()
    if arg:
        try:
            params.setdefault("p" if base in CHARP_NAMES else "d", int(arg))
        except ValueError:
            raise BadParams(f"bad parameter in {name!r}") from None
    if base in CHARP_NAMES:
        if "p" not in params:
            if field is None or not field.characteristic:
                raise BadParams(f"{base} needs a prime p (e.g. {base}:5)")
            params["p"] = field.characteristic
        return (jacobson if base == "jacobson" else witt)(int(params["p"]), field)
    field = field or QQ
    if base == "sl2":
        return sl2(field)
    if base == "gl2":
        return gl2(field)
    if base == "b2":
        return b2(field)
    if base in ("heis3", "n3"):
        return heis3(field, label=base)
    if base == "sl3":
        return sl3(field)
    if base == "abelian":
        return abelian(int(params.get("d", 1)), field)
    raise BadParams(f"unknown Lie algebra {name!r}")


def lie_names():
    return ["sl2", "gl2", "b2", "heis3", "n3", "sl3", "jacobson:p", "witt:p", "abelian:d", "A+B"]


__all__ = ["builtin_lie", "sl2", "gl2", "b2", "heis3", "sl3", "jacobson", "witt", "abelian", "lie_names"]
