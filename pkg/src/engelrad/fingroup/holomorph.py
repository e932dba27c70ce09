"""Automorphisms, semidirect products and Engel automorphisms.

``G x| A`` has multiplication ``(g1, a1)(g2, a2) = (g1 a1(g2), a1 a2)``.  It is
realized as a permutation group on the elements of G: the pair ``u`` acts as
``x -> a^-1(g^-1 x)`` for ``u = (g, a)``, which is a faithful right action.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Dict, List, Optional, Sequence

import numpy as np

from ..errors import NotAnAutomorphism, SequenceNotAutocorrect
from ..report import Report, Timer
from ..words import check_autocorrect, get_sequence
from .core import FiniteGroup, from_permutations, invert_perms
from .engel import GroupOps, reaches_identity


class Automorphism:
    """Automorphism of G given by generator images, extended along the Schreier tree and verified."""

    def __init__(self, G: FiniteGroup, images: Sequence[int], name: str = "sigma"):
        if len(images) != len(G.gens):
            raise NotAnAutomorphism(f"need {len(G.gens)} generator images, got {len(images)}")
        self.group = G
        self.name = name
        self.images = [int(v) for v in images]
        m = np.zeros(G.order, dtype=np.int64)
        for a in range(1, G.order):
            m[a] = G.mul(int(m[G.parent[a]]), self.images[G.parent_gen[a]])
        self.map = m
        self._verify()

    def _verify(self):
        G, m = self.group, self.map
        if len(np.unique(m)) != G.order:
            raise NotAnAutomorphism("map is not injective")
        idx = np.arange(G.order)
        for g, img in zip(G.gens, self.images):
            if not np.array_equal(m[np.asarray(G.mul(idx, g))], np.asarray(G.mul(m, img))):
                raise NotAnAutomorphism("map is not a homomorphism")

    def __call__(self, a):
        return self.map[a]

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.map, np.arange(self.group.order)))

    def order(self) -> int:
        k, cur = 1, self.map
        while not np.array_equal(cur, np.arange(self.group.order)):
            cur = self.map[cur]
            k += 1
        return k

    def __repr__(self):
        return f"Automorphism({self.name} of {self.group.name})"


def identity_automorphism(G: FiniteGroup) -> Automorphism:
    return Automorphism(G, list(G.gens), name="id")


def conjugation_automorphism(G: FiniteGroup, perm: Sequence[int], name: Optional[str] = None) -> Automorphism:
    """``g -> p g p^-1`` for a permutation p of G's points that normalizes G."""
    p = np.asarray(perm, dtype=G.perms.dtype)
    if sorted(p.tolist()) != list(range(G.degree)):
        raise NotAnAutomorphism("conjugating map is not a permutation of the points")
    pinv = invert_perms(p[None, :])[0]
    imgs = []
    for g in G.gens:
        # right action, left-to-right: apply p, then g, then p^-1
        q = pinv[G.perms[g][p]]
        try:
            imgs.append(int(G.index_of(q[None, :])[0]))
        except KeyError:
            raise NotAnAutomorphism("permutation does not normalize the group") from None
    return Automorphism(G, imgs, name=name or "conj")


def inner_automorphism(G: FiniteGroup, h: int) -> Automorphism:
    h = int(h)
    imgs = [int(G.mul(G.mul(h, g), G.inv[h])) for g in G.gens]
    return Automorphism(G, imgs, name=f"inn({G.label_text(h)})")


def swap_automorphism(G: FiniteGroup) -> Automorphism:
    """Exchange of the two factors of a direct product ``A*A``."""
    factors = G.extra.get("factors")
    if not factors or len(factors) != 2 or factors[0].degree != factors[1].degree:
        raise NotAnAutomorphism("swap needs a direct product of two factors on equally many points")
    d = factors[0].degree
    p = np.concatenate([np.arange(d, 2 * d), np.arange(d)])
    return conjugation_automorphism(G, p, name="swap")


def _closure_maps(N: int, gens: List[np.ndarray]):
    ident = np.arange(N, dtype=np.int64)
    maps = [ident]
    seen = {ident.tobytes(): 0}
    words = [""]
    i = 0
    while i < len(maps):
        for k, g in enumerate(gens):
            new = maps[i][g]   # first g, then maps[i]: functional composition maps[i] o g
            key = new.tobytes()
            if key not in seen:
                seen[key] = len(maps)
                maps.append(new)
                words.append(words[i] + str(k))
        i += 1
    return maps, seen, words


def semidirect_product(G: FiniteGroup, autos: Sequence[Automorphism], name: Optional[str] = None) -> FiniteGroup:
    """``G x| <autos>`` with pair elements; ``extra['pairs'][u] = (g, a)``."""
    for s in autos:
        if s.group is not G:
            raise NotAnAutomorphism("automorphism belongs to a different group")
    N = G.order
    amaps, aindex, awords = _closure_maps(N, [s.map for s in autos])
    K = len(amaps)
    ainv = [aindex[np.argsort(m).astype(np.int64).tobytes()] for m in amaps]
    acomp = np.array([[aindex[amaps[i][amaps[j]].tobytes()] for j in range(K)] for i in range(K)], dtype=np.int64)
    idx = np.arange(N)

    def rho(g: int, a: int) -> np.ndarray:
        return amaps[ainv[a]][np.asarray(G.mul(G.inv[g], idx))]

    gen_pairs = [(int(g), 0) for g in G.gens] + [(0, aindex[s.map.tobytes()]) for s in autos]
    gen_pairs = [gp for gp in gen_pairs if gp != (0, 0)]
    perms = [rho(*gp) for gp in gen_pairs]
    by_perm = {p.astype(np.int64).tobytes(): gp for p, gp in zip(perms, gen_pairs)}
    label_name = name or f"{G.name}x|A"

    def label(H, u):
        g, a = H.extra["pairs"][u]
        if len(autos) == 1:
            alab = "1" if a == 0 else (autos[0].name if a == 1 else f"{autos[0].name}^{a}")
        else:
            alab = "1" if a == 0 else "*".join(autos[int(c)].name for c in awords[a])
        return f"({G.label_text(int(g))}, {alab})"

    H = from_permutations(perms, N, cap=max(N * K, 1), name=label_name, labeler=label, kind="semidirect")
    if H.order != N * K:
        raise AssertionError(f"semidirect product has order {H.order}, expected {N * K}")
    hgen_pairs = [by_perm[p.astype(np.int64).tobytes()] for p in H.gen_perms]
    pairs = np.zeros((H.order, 2), dtype=np.int64)
    for u in range(1, H.order):
        g1, a1 = pairs[H.parent[u]]
        g2, a2 = hgen_pairs[H.parent_gen[u]]
        pairs[u] = (G.mul(int(g1), int(amaps[a1][g2])), acomp[a1, a2])
    # every element acts as its pair says
    for u in range(0, H.order, max(1, H.order // 64)):
        if not np.array_equal(H.perms[u].astype(np.int64), rho(int(pairs[u, 0]), int(pairs[u, 1]))):
            raise AssertionError("pair bookkeeping disagrees with the action")
    H.extra.update(pairs=pairs, base_group=G, automorphisms=list(autos), a_maps=amaps)
    in_g = pairs[:, 1] == 0
    g_to_h = np.zeros(N, dtype=np.int64)
    g_to_h[pairs[in_g, 0]] = np.flatnonzero(in_g)
    a_to_h = {}
    for u in np.flatnonzero(pairs[:, 0] == 0):
        a_to_h[int(pairs[u, 1])] = int(u)
    H.extra.update(in_g=in_g, g_to_h=g_to_h, a_to_h=a_to_h)
    return H


@lru_cache(maxsize=None)
def _autocorrect(seq_id: str, convention: str, n_max: int) -> bool:
    return check_autocorrect(seq_id, n_max, convention).verdict == "holds"


def engel_automorphism_test(G: FiniteGroup, sigma: Automorphism, seq, convention: str = "right",
                            autocorrect_n: int = 10) -> Report:
    """Is ``u_n(g, sigma) = 1`` eventually, for every g in G?  Evaluated inside ``G x| <sigma>``."""
    timer = Timer()
    seq = get_sequence(seq, "group")
    if not _autocorrect(seq.id, convention, autocorrect_n):
        raise SequenceNotAutocorrect(f"{seq.id} is not autocorrect; u_n(g, sigma) need not lie in G")
    H = semidirect_product(G, [sigma])
    in_g = H.extra["in_g"]
    s = H.extra["a_to_h"][1] if H.order > G.order else 0
    xs = H.extra["g_to_h"]
    ys = np.full(G.order, s, dtype=np.int64)
    checks = [0]

    def observe(values):
        if not np.all(in_g[values]):
            raise AssertionError("sequence value left the G-factor of the semidirect product")
        checks[0] += len(values)

    ok, first = reaches_identity(H, seq, xs, ys, convention, observe=observe)
    bad = np.flatnonzero(~ok)
    witness = None
    if len(bad):
        g = int(bad[0])
        witness = {"g": G.label_text(g), "g_index": g}
    return Report(claim=f"group.engel-automorphism.{seq.id}",
                  inputs={"group": G.name, "automorphism": sigma.name, "seq": seq.id,
                          "automorphism_order": sigma.order()},
                  verdict="not-engel" if witness else "engel", witness=witness,
                  iterations=int(first.max(initial=0)), millis=timer.millis(),
                  config={"conj_convention": convention},
                  details={"holomorph_order": H.order, "containment_checks": checks[0],
                           "engel_elements": int(ok.sum())})
