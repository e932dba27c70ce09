"""Enumerated finite groups.

Every group is held as a permutation group: an ``(N, m)`` integer array whose
row ``i`` is the permutation of element ``i`` on ``m`` points.  Permutations
act on the right and compose left to right: ``(p * q)[i] = q[p[i]]``.  Element
0 is the identity and elements are numbered in breadth-first discovery order
from the sorted generators, so every index is reproducible.

Lookup of an arbitrary permutation uses a base: a list of points whose images
determine the permutation.  The images are folded into an int64 key, and the
keys are kept sorted for ``searchsorted``.
"""
from __future__ import annotations

import re
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from ..errors import OrderExceedsCap

DEFAULT_ORDER_CAP = 10 ** 5
TABLE_MAX = 2500


# ---------------------------------------------------------------- permutations

_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: Optional[int] = None) -> List[int]:
    """Parse 1-based cycle notation such as ``"(1 2)(3 4 5)"`` into a 0-based image list."""
    text = text.strip()
    cycles = []
    pos = 0
    for m in _CYCLE.finditer(text):
        if text[pos:m.start()].strip():
            raise ValueError(f"bad cycle notation {text!r}")
        pos = m.end()
        body = m.group(1).replace(",", " ").split()
        cycles.append([int(t) for t in body])
    if text[pos:].strip() and text.strip() not in ("()", "1", ""):
        raise ValueError(f"bad cycle notation {text!r}")
    top = max((max(c) for c in cycles if c), default=0)
    n = degree if degree is not None else top
    if top > n:
        raise ValueError(f"point {top} exceeds degree {n}")
    img = list(range(n))
    seen = set()
    for c in cycles:
        if any(v < 1 for v in c):
            raise ValueError("points are numbered from 1")
        if len(set(c)) != len(c) or seen & set(c):
            raise ValueError(f"cycles in {text!r} are not disjoint")
        seen |= set(c)
        for a, b in zip(c, c[1:] + c[:1]):
            img[a - 1] = b - 1
    return img


def format_cycles(perm: Sequence[int]) -> str:
    perm = [int(v) for v in perm]
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start] or perm[start] == start:
            seen[start] = True
            continue
        cyc = [start]
        seen[start] = True
        j = perm[start]
        while j != start:
            cyc.append(j)
            seen[j] = True
            j = perm[j]
        out.append("(" + " ".join(str(v + 1) for v in cyc) + ")")
    return "".join(out) or "()"


def invert_perms(P: np.ndarray) -> np.ndarray:
    """Row-wise inverse permutations."""
    out = np.empty_like(P)
    rows = np.arange(P.shape[0])[:, None]
    out[rows, P] = np.arange(P.shape[1], dtype=P.dtype)[None, :]
    return out


def _dtype(m: int):
    return np.int16 if m < 2 ** 15 else np.int32


# ---------------------------------------------------------------- groups

class FiniteGroup:
    """Immutable enumerated group (see module docs for conventions)."""

    def __init__(self, perms: np.ndarray, gens: Sequence[int], parent: np.ndarray, parent_gen: np.ndarray,
                 gen_perms: np.ndarray, name: str = "G", descriptor: Optional[dict] = None,
                 labeler: Optional[Callable[["FiniteGroup", int], object]] = None, kind: str = "permutation"):
        self.perms = perms
        self.order = len(perms)
        self.degree = perms.shape[1]
        self.gens = list(gens)
        self.gen_perms = gen_perms
        self.parent = parent
        self.parent_gen = parent_gen
        self.name = name
        self.descriptor = descriptor
        self.kind = kind
        self._labeler = labeler
        self._cache: dict = {}
        self.extra: dict = {}
        self._build_index()
        self.inv = self.index_of(invert_perms(self.perms))
        self.table = self._build_table() if self.order <= TABLE_MAX else None

    # lookup -----------------------------------------------------------
    def _build_index(self):
        P = self.perms
        N, m = P.shape
        ident = np.arange(m)
        mask = np.ones(N, dtype=bool)
        base: List[int] = []
        while mask.sum() > 1:
            moved = np.flatnonzero(np.any(P[mask] != ident, axis=0))
            b = int(moved[0])
            base.append(b)
            mask &= P[:, b] == b
        self.base = np.array(base, dtype=np.int64)
        if m ** max(len(base), 1) >= 2 ** 62:
            raise OrderExceedsCap("base too long for int64 keys")
        self._weights = np.array([m ** i for i in range(len(base))], dtype=np.int64)
        keys = self._keys(P[:, self.base]) if len(base) else np.zeros(N, dtype=np.int64)
        order = np.argsort(keys, kind="stable")
        self._sorted_keys = keys[order]
        self._order = order
        if N > 1 and np.any(np.diff(self._sorted_keys) == 0):
            raise AssertionError("base does not separate elements")

    def _keys(self, images: np.ndarray) -> np.ndarray:
        return images.astype(np.int64) @ self._weights

    def _lookup_images(self, images: np.ndarray) -> np.ndarray:
        if not len(self.base):
            return np.zeros(images.shape[:-1], dtype=np.int64)
        keys = self._keys(images)
        pos = np.searchsorted(self._sorted_keys, keys)
        pos = np.minimum(pos, len(self._sorted_keys) - 1)
        if np.any(self._sorted_keys[pos] != keys):
            raise KeyError("permutation is not an element of the group")
        return self._order[pos]

    def index_of(self, perms) -> np.ndarray:
        """Element indices of permutations given as arrays (last axis = points)."""
        perms = np.asarray(perms)
        idx = self._lookup_images(perms[..., self.base])
        if not np.array_equal(self.perms[idx], perms):
            raise KeyError("permutation is not an element of the group")
        return idx

    def contains_perm(self, perm) -> bool:
        try:
            self.index_of(np.asarray(perm)[None, :])
            return True
        except KeyError:
            return False

    def _build_table(self) -> np.ndarray:
        N = self.order
        dt = np.int16 if N < 2 ** 15 else np.int32
        table = np.empty((N, N), dtype=dt)
        idx = np.arange(N)
        step = max(1, 200000 // max(N, 1))
        for s in range(0, N, step):
            rows = np.arange(s, min(N, s + step))
            a, b = np.broadcast_arrays(rows[:, None], idx[None, :])
            table[rows] = self._mul_perm(a, b)
        return table

    # arithmetic -------------------------------------------------------
    def _mul_perm(self, a, b):
        pa = self.perms[a][..., self.base]
        imgs = self.perms[b[..., None], pa]
        return self._lookup_images(imgs)

    def mul(self, a, b):
        """Vectorized product of element indices (broadcasting)."""
        a = np.asarray(a)
        b = np.asarray(b)
        if self.table is not None:
            return self.table[a, b].astype(np.int64) if a.ndim or b.ndim else int(self.table[a, b])
        a, b = np.broadcast_arrays(a, b)
        out = self._mul_perm(a, b)
        return out if out.ndim else int(out)

    def inverse(self, a):
        return self.inv[a]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = int(self.inv[a]), -k
        r = 0
        base = a
        while k:
            if k & 1:
                r = self.mul(r, base)
            base = self.mul(base, base)
            k >>= 1
        return int(r)

    def commutator(self, a, b):
        """``[a, b] = a b a^-1 b^-1``."""
        return self.mul(self.mul(a, b), self.mul(self.inv[a], self.inv[b]))

    def element_order(self, a: int) -> int:
        k, x = 1, int(a)
        while x != 0:
            x = self.mul(x, a)
            k += 1
        return k

    # classes ----------------------------------------------------------
    def conjugacy_classes(self):
        """(class id per element, class representatives = least index per class)."""
        if "classes" in self._cache:
            return self._cache["classes"]
        from scipy.sparse import coo_matrix
        from scipy.sparse.csgraph import connected_components

        N = self.order
        idx = np.arange(N)
        rows, cols = [], []
        for g in self.gens:
            conj = self.mul(self.mul(self.inv[g], idx), g)
            rows.append(idx)
            cols.append(np.asarray(conj))
        if rows:
            r = np.concatenate(rows)
            c = np.concatenate(cols)
            graph = coo_matrix((np.ones(len(r), dtype=np.int8), (r, c)), shape=(N, N))
            _, labels = connected_components(graph, directed=True, connection="weak")
        else:
            labels = np.zeros(N, dtype=np.int64)
        first = np.full(labels.max() + 1, N, dtype=np.int64)
        np.minimum.at(first, labels, idx)
        order = np.argsort(first)
        relabel = np.empty_like(order)
        relabel[order] = np.arange(len(order))
        class_id = relabel[labels]
        reps = first[order]
        self._cache["classes"] = (class_id, reps)
        return class_id, reps

    def class_sizes(self) -> List[int]:
        class_id, reps = self.conjugacy_classes()
        return np.bincount(class_id, minlength=len(reps)).tolist()

    def invariant(self) -> tuple:
        """(order, sorted class sizes): the isomorphism fingerprint used throughout."""
        return (self.order, tuple(sorted(self.class_sizes())))

    # labels -----------------------------------------------------------
    def word_of(self, a: int) -> List[int]:
        """Generator positions along the Schreier tree, so that ``a = g_{w0} g_{w1} ...``."""
        out = []
        a = int(a)
        while a != 0:
            out.append(int(self.parent_gen[a]))
            a = int(self.parent[a])
        return out[::-1]

    def label(self, a: int):
        if self._labeler is not None:
            return self._labeler(self, int(a))
        return format_cycles(self.perms[int(a)])

    def label_text(self, a: int) -> str:
        lab = self.label(a)
        return lab if isinstance(lab, str) else str(lab)

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order}, degree={self.degree})"


def from_permutations(gen_perms: Sequence[Sequence[int]], degree: Optional[int] = None, *,
                      cap: int = DEFAULT_ORDER_CAP, name: str = "G", descriptor: Optional[dict] = None,
                      labeler=None, kind: str = "permutation", sort_generators: bool = True) -> FiniteGroup:
    """Breadth-first closure of the given permutations."""
    gens = [list(map(int, g)) for g in gen_perms]
    if degree is None:
        degree = max((len(g) for g in gens), default=1)
    m = max(degree, 1)
    dt = _dtype(m)
    arr = []
    for g in gens:
        g = g + list(range(len(g), m))
        if sorted(g) != list(range(m)):
            raise ValueError(f"not a permutation of {m} points: {g}")
        arr.append(tuple(g))
    ident = tuple(range(m))
    uniq = sorted(set(arr) - {ident}) if sort_generators else list(dict.fromkeys(a for a in arr if a != ident))
    G = np.array(uniq, dtype=dt).reshape(len(uniq), m)
    k = len(uniq)
    elems = [np.arange(m, dtype=dt)]
    # rows are bucketed by a short prefix and compared in full within a bucket
    cols = np.unique(np.linspace(0, m - 1, min(m, 32)).astype(np.int64))
    seen: Dict[bytes, List[int]] = {elems[0][cols].tobytes(): [0]}
    full_bytes = [elems[0].tobytes()]
    parent, pgen = [-1], [-1]
    frontier = np.arange(m, dtype=dt)[None, :]
    frontier_idx = [0]
    while len(frontier) and k:
        prods = np.stack([g[frontier] for g in G], axis=1).reshape(-1, m)
        new_rows, new_idx = [], []
        for r in range(len(prods)):
            row = prods[r]
            key = row[cols].tobytes()
            bucket = seen.get(key)
            if bucket is None:
                seen[key] = bucket = []
            else:
                raw = row.tobytes()
                if any(full_bytes[j] == raw for j in bucket):
                    continue
            bucket.append(len(elems))
            full_bytes.append(row.tobytes())
            elems.append(row)
            parent.append(frontier_idx[r // k])
            pgen.append(r % k)
            new_rows.append(row)
            new_idx.append(len(elems) - 1)
            if len(elems) > cap:
                raise OrderExceedsCap(f"group order exceeds cap {cap}")
        frontier = np.array(new_rows, dtype=dt).reshape(len(new_rows), m)
        frontier_idx = new_idx
    perms = np.array(elems, dtype=dt)
    gen_idx = [next(j for j in seen[g[cols].tobytes()] if full_bytes[j] == g.tobytes()) for g in G]
    return FiniteGroup(perms, gen_idx, np.array(parent), np.array(pgen), G, name=name,
                       descriptor=descriptor, labeler=labeler, kind=kind)


def trivial_group(name: str = "1") -> FiniteGroup:
    return from_permutations([], 1, name=name, descriptor={"representation": "permutation", "degree": 1,
                                                          "generators": []})


def restrict_faithful(gen_perms: np.ndarray, full: FiniteGroup) -> Optional[np.ndarray]:
    """Points of the smallest union of orbits on which ``full`` still acts faithfully."""
    m = full.degree
    # orbits of the generators
    labels = np.arange(m)
    changed = True
    while changed:
        changed = False
        for g in gen_perms:
            new = np.minimum(labels, labels[g])
            new = np.minimum(new, new[np.argsort(g)])
            if not np.array_equal(new, labels):
                labels, changed = new, True
        labels = labels[labels]
    orbits = {}
    for pt, lab in enumerate(labels):
        orbits.setdefault(int(lab), []).append(pt)
    ordered = sorted(orbits.values(), key=lambda o: (len(o), o[0]))
    chosen: List[int] = []
    for orb in ordered:
        chosen = sorted(chosen + orb)
        sub = full.perms[:, chosen]
        if len(np.unique(sub, axis=0)) == full.order:
            return np.array(chosen)
    return None
