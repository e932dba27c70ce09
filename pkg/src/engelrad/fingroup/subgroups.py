"""Subgroups, normal closures, series, radicals and quotients."""
from __future__ import annotations

from typing import Iterable, List, Optional, Sequence

import numpy as np

from .core import FiniteGroup, from_permutations


class SubgroupHandle:
    """Sorted element-index set of a subgroup, with cached structural flags."""

    def __init__(self, group: FiniteGroup, elements, gens: Sequence[int] = ()):
        self.group = group
        self.elements = np.unique(np.asarray(elements, dtype=np.int64))
        self.gens = [int(g) for g in gens if int(g) != 0]
        self._flags: dict = {}

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return self.order

    @property
    def mask(self) -> np.ndarray:
        if "mask" not in self._flags:
            m = np.zeros(self.group.order, dtype=bool)
            m[self.elements] = True
            self._flags["mask"] = m
        return self._flags["mask"]

    def __contains__(self, a) -> bool:
        return bool(self.mask[int(a)])

    def contains(self, other: "SubgroupHandle") -> bool:
        return bool(np.all(self.mask[other.elements]))

    def __eq__(self, other):
        return (isinstance(other, SubgroupHandle) and other.group is self.group
                and np.array_equal(self.elements, other.elements))

    def __hash__(self):
        return hash(self.elements.tobytes())

    def is_trivial(self) -> bool:
        return self.order == 1

    def is_normal(self) -> bool:
        if "normal" not in self._flags:
            G = self.group
            ok = True
            for g in G.gens:
                conj = G.mul(G.mul(G.inv[g], self.elements), g)
                if not np.all(self.mask[conj]):
                    ok = False
                    break
            self._flags["normal"] = ok
        return self._flags["normal"]

    def is_solvable(self) -> bool:
        if "solvable" not in self._flags:
            self._flags["solvable"] = derived_series(self)[-1].is_trivial()
        return self._flags["solvable"]

    def is_nilpotent(self) -> bool:
        if "nilpotent" not in self._flags:
            self._flags["nilpotent"] = lower_central_series(self)[-1].is_trivial()
        return self._flags["nilpotent"]

    def labels(self) -> List[str]:
        return [self.group.label_text(a) for a in self.elements]

    def as_group(self, name: Optional[str] = None) -> FiniteGroup:
        """The subgroup as a group in its own right (same points, own numbering)."""
        G = self.group
        gens = self.gens or ([] if self.order == 1 else [int(a) for a in self.elements[1:]])
        return from_permutations(G.perms[gens], G.degree, name=name or f"sub({G.name})",
                                 cap=max(self.order, 1))

    def __repr__(self):
        return f"SubgroupHandle(order={self.order} in {self.group.name})"


def whole(G: FiniteGroup) -> SubgroupHandle:
    return SubgroupHandle(G, np.arange(G.order), G.gens)


def trivial(G: FiniteGroup) -> SubgroupHandle:
    return SubgroupHandle(G, [0])


def _close(G: FiniteGroup, gens: List[int], mask: Optional[np.ndarray] = None):
    if mask is None:
        mask = np.zeros(G.order, dtype=bool)
        mask[0] = True
        frontier = np.array([0], dtype=np.int64)
    else:
        frontier = np.flatnonzero(mask)
    g = np.array(gens, dtype=np.int64)
    while len(frontier) and len(g):
        prods = np.asarray(G.mul(frontier[:, None], g[None, :])).ravel()
        prods = np.unique(prods)
        new = prods[~mask[prods]]
        mask[new] = True
        frontier = new
    return mask


def closure(G: FiniteGroup, gens: Iterable[int]) -> SubgroupHandle:
    """Subgroup generated by the given element indices."""
    gens = sorted({int(a) for a in gens} - {0})
    return SubgroupHandle(G, np.flatnonzero(_close(G, gens)), gens)


def normal_closure(G: FiniteGroup, seeds: Iterable[int], ambient: Optional[SubgroupHandle] = None) -> SubgroupHandle:
    """Least subgroup normal in ``ambient`` (default G) containing the seeds."""
    amb = np.array(ambient.gens if ambient is not None else G.gens, dtype=np.int64)
    gens = sorted({int(a) for a in seeds} - {0})
    mask = _close(G, gens)
    if not gens:
        return SubgroupHandle(G, [0])
    pending = np.array(gens, dtype=np.int64)
    while len(pending) and len(amb):
        conj = np.asarray(G.mul(G.mul(G.inv[amb][None, :], pending[:, None]), amb[None, :])).ravel()
        conj = np.unique(conj)
        new = conj[~mask[conj]]
        if not len(new):
            break
        gens.extend(int(a) for a in new)
        mask = _close(G, gens, mask)
        pending = new
    return SubgroupHandle(G, np.flatnonzero(mask), gens)


def commutator_subgroup(A: SubgroupHandle, B: SubgroupHandle, ambient: SubgroupHandle) -> SubgroupHandle:
    """``[A, B]`` for A normal in ``ambient`` and B = ambient."""
    G = A.group
    a = np.array(A.gens, dtype=np.int64)
    b = np.array(B.gens, dtype=np.int64)
    if not len(a) or not len(b):
        return SubgroupHandle(G, [0])
    comms = np.asarray(G.commutator(a[:, None], b[None, :])).ravel()
    return normal_closure(G, comms, ambient)


def derived_series(H: SubgroupHandle) -> List[SubgroupHandle]:
    """H, H', H'', ... ending at the first repeat or the trivial group."""
    out = [H]
    while not out[-1].is_trivial():
        cur = out[-1]
        nxt = commutator_subgroup(cur, cur, cur)
        if nxt.order == cur.order:
            break
        out.append(nxt)
    return out


def lower_central_series(H: SubgroupHandle) -> List[SubgroupHandle]:
    out = [H]
    while not out[-1].is_trivial():
        nxt = commutator_subgroup(out[-1], H, H)
        if nxt.order == out[-1].order:
            break
        out.append(nxt)
    return out


def _radical(G: FiniteGroup, flag: str) -> SubgroupHandle:
    class_id, reps = G.conjugacy_classes()
    keep = np.zeros(len(reps), dtype=bool)
    gens = []
    for c, r in enumerate(reps):
        K = normal_closure(G, [int(r)])
        if K.is_solvable() if flag == "solvable" else K.is_nilpotent():
            keep[c] = True
            gens.extend(K.gens)
    return SubgroupHandle(G, np.flatnonzero(keep[class_id]), sorted(set(gens)))


def solvable_radical(G: FiniteGroup, check: bool = True) -> SubgroupHandle:
    """Largest normal solvable subgroup: the union of classes with solvable normal closure."""
    key = "solvable_radical"
    if key not in G._cache:
        R = _radical(G, "solvable")
        if check:
            _self_check(G, R, "solvable")
            if not R.is_trivial() and R.order < G.order:
                Q, _ = quotient(G, R)
                if not solvable_radical(Q, check=False).is_trivial():
                    raise AssertionError("quotient by the solvable radical has a solvable normal subgroup")
        G._cache[key] = R
    return G._cache[key]


def fitting_subgroup(G: FiniteGroup, check: bool = True) -> SubgroupHandle:
    """Largest normal nilpotent subgroup: the union of classes with nilpotent normal closure."""
    key = "fitting"
    if key not in G._cache:
        F = _radical(G, "nilpotent")
        if check:
            _self_check(G, F, "nilpotent")
        G._cache[key] = F
    return G._cache[key]


def _self_check(G: FiniteGroup, H: SubgroupHandle, flag: str):
    if not np.array_equal(closure(G, H.elements).elements, H.elements):
        raise AssertionError(f"{flag} radical is not closed under multiplication")
    if not H.is_normal():
        raise AssertionError(f"{flag} radical is not normal")
    if not (H.is_solvable() if flag == "solvable" else H.is_nilpotent()):
        raise AssertionError(f"{flag} radical fails its defining property")


def quotient(G: FiniteGroup, N: SubgroupHandle, name: Optional[str] = None):
    """(G/N as a permutation group on right cosets, projection array element -> quotient index)."""
    if not N.is_normal():
        raise ValueError("quotient needs a normal subgroup")
    coset = np.full(G.order, -1, dtype=np.int64)
    reps = []
    for x in range(G.order):
        if coset[x] < 0:
            coset[np.asarray(G.mul(N.elements, x))] = len(reps)
            reps.append(x)
    reps = np.array(reps, dtype=np.int64)
    gen_perms = [coset[np.asarray(G.mul(reps, g))] for g in G.gens]
    Q = from_permutations(gen_perms, len(reps), name=name or f"{G.name}/N", cap=len(reps))
    # each element permutes cosets; look that permutation up in Q
    proj = np.empty(G.order, dtype=np.int64)
    step = 4096
    for s in range(0, G.order, step):
        xs = np.arange(s, min(G.order, s + step))
        acts = coset[np.asarray(G.mul(reps[None, :], xs[:, None]))]
        proj[xs] = Q.index_of(acts.astype(Q.perms.dtype))
    return Q, proj
