"""Word evaluation, Engel-like element sets and identity checks in enumerated groups."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Mapping, Optional, Tuple

import numpy as np

from ..report import Report, Timer
from ..words import GroupWord, SequenceSpec, get_sequence
from .core import FiniteGroup
from .subgroups import SubgroupHandle, fitting_subgroup, solvable_radical

STRATEGIES = ("class-reps", "full")
CHUNK_PAIRS = 1 << 18


class GroupOps:
    """Element-index arithmetic in ``G`` for the sequence rules (works on numpy arrays)."""

    one = 0

    def __init__(self, G: FiniteGroup):
        self.G = G

    def mul(self, a, b):
        return self.G.mul(a, b)

    def inv(self, a):
        return self.G.inv[a]


def evaluate(G: FiniteGroup, word: GroupWord, assignment: Mapping[str, int]) -> int:
    """Value of a word under ``symbol -> element index``."""
    out = 0
    for sym, e in word.letters:
        out = G.mul(out, G.power(int(assignment[sym]), e))
    return int(out)


def sequence_values(G: FiniteGroup, seq, n: int, x: int, y: int, convention: str = "right") -> List[int]:
    """``[u_1(x, y), ..., u_n(x, y)]`` as element indices."""
    seq = get_sequence(seq, "group")
    ops = GroupOps(G)
    cur = int(seq.seed(x, y, ops, convention))
    out = [cur]
    for _ in range(n - 1):
        cur = int(seq.step(cur, x, y, ops, convention))
        out.append(cur)
    return out


def reaches_identity(G: FiniteGroup, seq: SequenceSpec, x: np.ndarray, y: np.ndarray,
                     convention: str = "right", observe=None) -> Tuple[np.ndarray, np.ndarray]:
    """Per pair: does the orbit of the step map from ``u_1(x, y)`` reach 1, and at which n.

    Brent cycle detection run in lockstep on all pairs.  The identity is a fixed
    point of every builtin step map, so a cycle that avoids it means "never".
    ``observe`` is called on every freshly computed array of sequence values.
    """
    ops = GroupOps(G)
    x = np.asarray(x, dtype=np.int64)
    y = np.asarray(y, dtype=np.int64)
    start = np.asarray(seq.seed(x, y, ops, convention), dtype=np.int64)
    if observe:
        observe(start)
    done = start == 0
    result = done.copy()
    first_n = np.where(done, 1, 0).astype(np.int64)
    active = np.flatnonzero(~done)
    tort = start[active]
    hare = np.asarray(seq.step(tort, x[active], y[active], ops, convention), dtype=np.int64)
    if observe:
        observe(hare)
    steps = 2
    power = lam = 1
    while len(active):
        hit = hare == 0
        cyc = (~hit) & (hare == tort)
        if hit.any():
            result[active[hit]] = True
            first_n[active[hit]] = steps
        keep = ~(hit | cyc)
        active, tort, hare = active[keep], tort[keep], hare[keep]
        if not len(active):
            break
        if power == lam:
            tort = hare.copy()
            power *= 2
            lam = 0
        hare = np.asarray(seq.step(hare, x[active], y[active], ops, convention), dtype=np.int64)
        if observe:
            observe(hare)
        lam += 1
        steps += 1
        if steps > 4 * G.order + 8:
            raise AssertionError("cycle detection did not terminate")
    return result, first_n


def engel_like_set(G: FiniteGroup, seq, convention: str = "right", compare: Optional[str] = None,
                   threads: int = 1) -> Tuple[SubgroupHandle, Report]:
    """``{g : for every a the sequence u_n(a, g) reaches 1}``, decided exactly.

    Membership is a class function, so only class representatives g are scanned,
    each against every a.
    """
    timer = Timer()
    seq = get_sequence(seq, "group")
    class_id, reps = G.conjugacy_classes()
    N = G.order
    chunks = _chunks(len(reps), N)

    def work(bounds):
        lo, hi = bounds
        ys = np.repeat(reps[lo:hi], N)
        xs = np.tile(np.arange(N), hi - lo)
        ok, first = reaches_identity(G, seq, xs, ys, convention)
        ok = ok.reshape(hi - lo, N)
        first = first.reshape(hi - lo, N)
        return ok.all(axis=1), np.where(ok, first, 0).max(axis=1)

    results = _map(work, chunks, threads)
    engel_rep = np.concatenate([r[0] for r in results])
    depth = np.concatenate([r[1] for r in results])
    members = np.flatnonzero(engel_rep[class_id])
    S = SubgroupHandle(G, members)
    details: Dict[str, object] = {"size": S.order, "classes": int(engel_rep.sum()), "group_order": N}
    if S.order <= 64:
        details["elements"] = S.labels()
    verdict = "holds"
    witness = None
    if compare:
        other = _compare_target(G, compare)
        details["compare"] = compare
        details["compare_size"] = other.order
        details["equal"] = bool(np.array_equal(other.elements, S.elements))
        if not details["equal"]:
            diff = np.setxor1d(other.elements, S.elements)
            verdict = "fails"
            witness = {"element": G.label_text(int(diff[0])), "index": int(diff[0]),
                       "in_engel_set": bool(int(diff[0]) in S)}
    report = Report(claim=f"group.engel-set.{seq.id}",
                    inputs={"group": G.name, "order": N, "seq": seq.id},
                    verdict=verdict, witness=witness, iterations=int(depth.max(initial=0)),
                    millis=timer.millis(), config={"conj_convention": convention}, details=details)
    return S, report


def _compare_target(G: FiniteGroup, name: str) -> SubgroupHandle:
    if name == "fitting":
        return fitting_subgroup(G)
    if name in ("radical", "solvable-radical"):
        return solvable_radical(G)
    raise ValueError(f"unknown comparison {name!r}")


def _chunks(rows: int, width: int) -> List[Tuple[int, int]]:
    per = max(1, CHUNK_PAIRS // max(width, 1))
    return [(lo, min(rows, lo + per)) for lo in range(0, rows, per)]


def _map(fn, items, threads: int):
    if threads <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def identity_holds(G: FiniteGroup, seq, n: int, strategy: str = "class-reps", threads: int = 1,
                   convention: str = "right") -> Report:
    """Is ``u_n(x, y) = 1`` for all x, y?  Also reports the least m <= n where it holds.

    With ``class-reps`` x runs over class representatives only; this loses nothing
    because u_n(x^g, y^g) = u_n(x, y)^g, and the least failing pair in table order
    always has a representative as its x.
    """
    timer = Timer()
    seq = get_sequence(seq, "group")
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    if n < 1:
        raise ValueError("n must be >= 1")
    N = G.order
    xs_all = G.conjugacy_classes()[1] if strategy == "class-reps" else np.arange(N)
    ops = GroupOps(G)
    chunks = _chunks(len(xs_all), N)

    def work(bounds):
        lo, hi = bounds
        xs = np.repeat(xs_all[lo:hi], N)
        ys = np.tile(np.arange(N), hi - lo)
        holds = np.zeros(n, dtype=bool)
        cur = np.asarray(seq.seed(xs, ys, ops, convention), dtype=np.int64)
        holds[0] = not cur.any()
        for m in range(1, n):
            cur = np.asarray(seq.step(cur, xs, ys, ops, convention), dtype=np.int64)
            holds[m] = not cur.any()
        bad = np.flatnonzero(cur)
        wit = None
        if len(bad):
            k = int(bad[0])
            wit = (int(xs[k]), int(ys[k]), int(cur[k]))
        return holds, wit

    results = _map(work, chunks, threads)
    holds_at = np.logical_and.reduce([r[0] for r in results]) if results else np.ones(n, dtype=bool)
    wits = [r[1] for r in results if r[1] is not None]
    least = next((m + 1 for m in range(n) if holds_at[m]), None)
    witness = None
    if wits:
        x, y, v = min(wits)
        witness = {"x": G.label_text(x), "y": G.label_text(y), "value": G.label_text(v),
                   "x_index": x, "y_index": y}
    return Report(claim="group.identity",
                  inputs={"group": G.name, "order": N, "seq": seq.id, "n": n},
                  verdict="fails" if witness else "holds", witness=witness, iterations=n,
                  millis=timer.millis(),
                  config={"strategy": strategy, "conj_convention": convention},
                  details={"least_n": least, "pairs": int(len(xs_all) * N)})
