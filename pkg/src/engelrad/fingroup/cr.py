"""Minimal normal subgroups and the CR-radical of a group with trivial solvable radical."""
from __future__ import annotations

from dataclasses import dataclass
from math import log
from typing import List, Tuple

from ..errors import NotSemisimple
from ..report import Report, Timer
from .core import FiniteGroup
from .subgroups import SubgroupHandle, closure, normal_closure, solvable_radical


@dataclass
class IsotypicComponent:
    simple_order: int
    simple_class_sizes: Tuple[int, ...]
    factors: int
    subgroup: SubgroupHandle

    def summary(self) -> dict:
        return {"simple_order": self.simple_order, "simple_class_sizes": list(self.simple_class_sizes),
                "factors": self.factors, "order": self.subgroup.order}


def minimal_normal_subgroups(G: FiniteGroup) -> List[SubgroupHandle]:
    """Every minimal normal subgroup is the normal closure of each of its nonidentity elements."""
    _, reps = G.conjugacy_classes()
    cands = {}
    for r in reps[1:]:
        K = normal_closure(G, [int(r)])
        cands.setdefault(K.elements.tobytes(), K)
    cands = sorted(cands.values(), key=lambda K: (K.order, K.elements[1] if K.order > 1 else 0))
    out = []
    for K in cands:
        if not any(M.order < K.order and K.contains(M) for M in cands):
            out.append(K)
    return out


def simple_factor_signature(M: SubgroupHandle) -> Tuple[int, Tuple[int, ...], int]:
    """(|T|, class sizes of T, k) for a minimal normal subgroup M = T^k."""
    MG = M.as_group(name="M")
    T = minimal_normal_subgroups(MG)[0]
    TG = T.as_group(name="T")
    k = int(round(log(M.order) / log(TG.order))) if TG.order > 1 else 1
    if TG.order ** k != M.order:
        raise AssertionError("minimal normal subgroup is not a power of its simple factor")
    return TG.order, tuple(sorted(TG.class_sizes())), k


def cr_radical(G: FiniteGroup) -> Tuple[SubgroupHandle, List[IsotypicComponent]]:
    """V(G) = product of the minimal normal subgroups, grouped into isotypic components.

    Simple factors are matched by (order, class-size multiset).
    """
    if not solvable_radical(G).is_trivial():
        raise NotSemisimple(f"{G.name} has a nontrivial solvable radical")
    if G.order == 1:
        return SubgroupHandle(G, [0]), []
    groups = {}
    for M in minimal_normal_subgroups(G):
        order, sizes, k = simple_factor_signature(M)
        groups.setdefault((order, sizes), []).append((M, k))
    comps = []
    all_gens = []
    for (order, sizes), members in sorted(groups.items()):
        gens = [g for M, _ in members for g in (M.gens or M.elements[1:].tolist())]
        all_gens += gens
        comps.append(IsotypicComponent(order, sizes, sum(k for _, k in members), closure(G, gens)))
    V = closure(G, all_gens)
    if not V.is_normal():
        raise AssertionError("CR-radical is not normal")
    return V, comps


def cr_report(G: FiniteGroup) -> Report:
    timer = Timer()
    V, comps = cr_radical(G)
    return Report(claim="group.cr-radical", inputs={"group": G.name, "order": G.order}, verdict="holds",
                  iterations=len(comps), millis=timer.millis(),
                  details={"order": V.order, "is_whole_group": V.order == G.order,
                           "components": [c.summary() for c in comps]})
