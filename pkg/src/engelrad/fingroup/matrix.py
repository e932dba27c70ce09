"""Matrix groups over finite fields, realized through their action on vectors.

Elements are enumerated as permutations of the nonzero row vectors (or of the
projective points when working modulo scalars), with ``v -> v M``.  The
matrix of an element is recovered along the Schreier tree and, for projective
groups, scaled so its first nonzero entry in row-major order is 1.
"""
from __future__ import annotations

import itertools
from typing import List, Optional, Sequence

import numpy as np

from ..errors import ValidationError
from ..exactfield import Field
from ..linalg import identity, matmul
from .core import DEFAULT_ORDER_CAP, FiniteGroup, from_permutations, restrict_faithful


def _points(field: Field, n: int, projective: bool):
    elems = list(field.elements())
    pts = []
    for v in itertools.product(elems, repeat=n):
        if all(field.is_zero(c) for c in v):
            continue
        if projective:
            lead = next(c for c in v if not field.is_zero(c))
            if lead != field.one:
                continue
        pts.append(tuple(v))
    return pts


def _normalize(field: Field, v):
    lead = next(c for c in v if not field.is_zero(c))
    s = field.inv(lead)
    return tuple(field.mul(s, c) for c in v)


def canonical_matrix(field: Field, m, projective: bool):
    if not projective:
        return [list(r) for r in m]
    flat = [c for r in m for c in r]
    lead = next(c for c in flat if not field.is_zero(c))
    s = field.inv(lead)
    return [[field.mul(s, c) for c in r] for r in m]


def _determinant_nonzero(field: Field, m) -> bool:
    from ..linalg import rank
    return rank(field, m) == len(m)


def matrix_group(field: Field, generators: Sequence, *, modulo_center: bool = False,
                 cap: int = DEFAULT_ORDER_CAP, name: str = "G", descriptor: Optional[dict] = None) -> FiniteGroup:
    """Enumerate the group generated by invertible matrices over a finite field.

    ``generators`` are square matrices of raw field payloads.
    """
    if not field.is_finite:
        raise ValidationError("matrix groups need a finite field")
    mats = [[list(r) for r in g] for g in generators]
    n = len(mats[0]) if mats else 1
    for g in mats:
        if len(g) != n or any(len(r) != n for r in g):
            raise ValidationError("generators must be square matrices of one size")
        if not _determinant_nonzero(field, g):
            raise ValidationError("generator matrix is singular")
    pts = _points(field, n, modulo_center)
    index = {p: i for i, p in enumerate(pts)}
    perms = []
    for g in mats:
        img = []
        for p in pts:
            w = tuple(_vecmat(field, p, g))
            if modulo_center:
                w = _normalize(field, w)
            img.append(index[w])
        perms.append(img)
    full = from_permutations(perms, len(pts), cap=cap, name=name)
    pts_keep = restrict_faithful(full.gen_perms, full) if len(full.gen_perms) else None
    gen_order = [list(map(int, r)) for r in full.gen_perms]
    if pts_keep is not None and len(pts_keep) < len(pts):
        pos = {int(p): i for i, p in enumerate(pts_keep)}
        restricted = [[pos[int(r[p])] for p in pts_keep] for r in full.gen_perms]
        G = from_permutations(restricted, len(pts_keep), cap=cap, name=name, sort_generators=False)
        if G.order != full.order:
            raise AssertionError("restriction to an orbit lost faithfulness")
    else:
        G = full
    # map generator positions in G back to matrices
    perm_to_mat = {tuple(p): m for p, m in zip(map(tuple, perms), mats)}
    gen_mats = [perm_to_mat[tuple(r)] for r in gen_order]
    G.extra.update(field=field, dimension=n, projective=modulo_center, gen_mats=gen_mats)
    G.kind = "matrix"
    G.descriptor = descriptor
    G._labeler = _matrix_label
    return G


def _vecmat(field: Field, v, m):
    out = []
    for j in range(len(m)):
        s = field.zero
        for i, c in enumerate(v):
            if not field.is_zero(c):
                s = field.add(s, field.mul(c, m[i][j]))
        out.append(s)
    return out


def element_matrix(G: FiniteGroup, a: int):
    field = G.extra["field"]
    cache = G._cache.setdefault("matrices", {0: identity(field, G.extra["dimension"])})
    chain = []
    x = int(a)
    while x not in cache:
        chain.append(x)
        x = int(G.parent[x])
    m = cache[x]
    for y in reversed(chain):
        m = matmul(field, m, G.extra["gen_mats"][int(G.parent_gen[y])])
        cache[y] = m
    return canonical_matrix(field, m, G.extra["projective"])


def _matrix_label(G: FiniteGroup, a: int) -> str:
    field = G.extra["field"]
    rows = element_matrix(G, a)
    return "[" + ", ".join("[" + ", ".join(field.format(c) for c in r) + "]" for r in rows) + "]"
