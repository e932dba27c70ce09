"""Named verification suites, each bundling the checks for one result into a single report."""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, Dict, List

import numpy as np

from . import liealg
from .catalog import builtin_group, builtin_lie
from .exactfield import QQ
from .fingroup import (conjugation_automorphism, engel_automorphism_test, engel_like_set, fitting_subgroup,
                       identity_holds, parse_cycles, semidirect_product, solvable_radical, swap_automorphism)
from .report import Report, Timer

CHAR0_ALGEBRAS = ["sl2", "gl2", "b2", "heis3", "sl3", "sl2+b2"]
BAER_GROUPS = ["cyclic:6", "sym:3", "sym:4", "sym:5", "alt:4", "alt:5", "dihedral:3", "dihedral:4", "dihedral:5",
               "dihedral:6", "dihedral:8", "q8", "sl2:3", "sl2:5", "psl2:7", "psl2:9", "sym:3*sym:3",
               "alt:4*cyclic:2", "dihedral:4*sym:3", "alt:5*cyclic:2", "sym:3*cyclic:3", "sym:4*cyclic:2"]
MINIMAL_SIMPLE = ["alt:5", "psl2:5", "psl2:7", "psl3:3", "sz:8"]
SOLVABLE_SAMPLES = ["sym:3", "sym:4", "sl2:3", "dihedral:6"]
SAMPLES = 100


class Suite:
    def __init__(self, name: str, claim: str, experimental: bool = False):
        self.name = name
        self.claim = claim
        self.experimental = experimental
        self.checks: List[dict] = []
        self.timer = Timer()

    def add(self, check: str, passed: bool, **info):
        self.checks.append({"check": check, "passed": bool(passed), **info})

    def report(self, config: dict) -> Report:
        failed = [c for c in self.checks if not c["passed"]]
        if self.experimental:
            verdict = "experimental-fail" if failed else "experimental-pass"
            witness = None
        else:
            verdict = "fails" if failed else "holds"
            witness = failed[0] if failed else None
        return Report(claim=self.claim, inputs={"suite": self.name}, verdict=verdict, witness=witness,
                      iterations=len(self.checks), millis=self.timer.millis(), config=config,
                      details={"checks": self.checks, "failed": len(failed)})


def _random_vector(rng: random.Random, L, R, inside: bool):
    d = L.dim
    if inside:
        if R.is_zero():
            return tuple(Fraction(0) for _ in range(d))
        coeffs = [rng.randint(-3, 3) for _ in R.basis]
        return tuple(sum((Fraction(c) * v[i] for c, v in zip(coeffs, R.basis)), Fraction(0)) for i in range(d))
    return tuple(Fraction(rng.randint(-2, 2)) for _ in range(d))


def _sampled_ys(L, R, seed: int, count: int):
    rng = random.Random(f"{L.label}:{seed}")
    return [_random_vector(rng, L, R, k % 2 == 0) for k in range(count)]


# ---------------------------------------------------------------- Lie suites

def suite_thm_ch(config: dict) -> Report:
    s = Suite("thm-ch", "verify.thm-ch")
    L = builtin_lie("sl2")
    vals = liealg.evaluate_sequence(L, "v", 12, "e_+", "e_-")
    ok = all(vals[n - 1] == L.vector({"e_+": (-2) ** (n - 1)}) for n in range(2, 13))
    s.add("sl2 v_n(e_+, e_-) = (-2)^(n-1) e_+ for 2 <= n <= 12", ok, last=str(vals[-1]))
    for name, n in (("b2", 3), ("heis3", 4)):
        r = liealg.identity_check(builtin_lie(name), "v", n, method="symbolic")
        s.add(f"v_{n} vanishes identically on {name}", r.verdict == "holds")
    for n in range(1, 5):
        r = liealg.identity_check(L, "v", n, method="symbolic")
        wit = r.witness or {}
        s.add(f"v_{n} is not an identity on sl2", r.verdict == "fails", witness=wit)
    return s.report(config)


def _radical_equivalence(s: Suite, kind: str, radical: Callable, seed: int, threads: int, count: int):
    for name in CHAR0_ALGEBRAS:
        L = builtin_lie(name)
        R = radical(L)
        mism, undecided = [], 0
        for y in _sampled_ys(L, R, seed, count):
            v = liealg.engel_test(L, y, kind, threads=threads)
            if v.outcome == "undetermined":
                undecided += 1
                continue
            if (v.outcome == "engel") != R.contains(y):
                mism.append(str(L.vector(y)))
        s.add(f"{name}: y in radical <=> {kind}-Engel ({count} samples)", not mism,
              radical_dim=R.dim, discrepancies=mism[:5], undetermined=undecided)


def suite_thm_rad(config: dict, threads: int = 1, count: int = SAMPLES) -> Report:
    s = Suite("thm-rad", "verify.thm-rad")
    _radical_equivalence(s, "v", liealg.solvable_radical, config.get("seed", 0), threads, count)
    return s.report(config)


def sl2_w_coefficients(n_max: int = 8) -> List[Fraction]:
    """h-coordinates of w_n(e_+, e_-) on sl2 for n = 1..n_max."""
    L = builtin_lie("sl2")
    vals = liealg.evaluate_sequence(L, "w", n_max, "e_+", "e_-")
    return [v.coords[2] for v in vals]


def suite_thm_rad_w(config: dict, threads: int = 1, count: int = SAMPLES) -> Report:
    s = Suite("thm-rad-w", "verify.thm-rad-w")
    coeffs = sl2_w_coefficients(8)
    L = builtin_lie("sl2")
    pure_h = all(v == L.vector({"h": c}) for v, c in
                 zip(liealg.evaluate_sequence(L, "w", 8, "e_+", "e_-"), coeffs))
    rec = all(coeffs[i + 1] == -4 * coeffs[i] ** 2 for i in range(len(coeffs) - 1))
    s.add("sl2 w_n(e_+, e_-) is a nonzero multiple of h with C_(n+1) = -4 C_n^2", pure_h and rec and all(coeffs),
          coefficients=[str(c) for c in coeffs[:5]])
    _radical_equivalence(s, "w", liealg.solvable_radical, config.get("seed", 0), threads, count)
    return s.report(config)


def suite_thm_cl(config: dict, threads: int = 1, count: int = SAMPLES) -> Report:
    s = Suite("thm-cl", "verify.thm-cl")
    _radical_equivalence(s, "strict", liealg.nilradical, config.get("seed", 0), threads, count)
    _radical_equivalence(s, "total", liealg.nilradical, config.get("seed", 0), threads, count)
    return s.report(config)


JACOBSON_X = "f+e_1"
JACOBSON_Y = "e+e_2"


def suite_charp(config: dict, threads: int = 1) -> Report:
    s = Suite("charp-counterexamples", "verify.charp-counterexamples")
    J = builtin_lie("jacobson:5")
    s.add("jacobson(5) is solvable", liealg.is_solvable(J),
          derived_dims=[S.dim for S in liealg.series(J, "derived")])
    vals = liealg.evaluate_sequence(J, "v", 20, JACOBSON_X, JACOBSON_Y)
    s.add("v_n(f+e_1, e+e_2) != 0 for all n <= 20", all(not v.is_zero() for v in vals),
          v2=str(vals[1]), v3=str(vals[2]))
    v = liealg.engel_test(J, JACOBSON_Y, "v", threads=threads)
    s.add("e+e_2 lies in the radical but is not v-Engel", v.outcome == "not-engel"
          and liealg.is_solvable(J), witness=str(v.witness))
    W = builtin_lie("witt:7")
    s.add("witt(7) is perfect", liealg.series(W, "derived")[1].dim == W.dim)
    r = liealg.vanishes_everywhere(W, "w", 2, "e_5", threads=threads)
    s.add("w_2(x, e_5) = 0 for all 7^7 vectors x of witt(7)", r.verdict == "holds",
          vectors=r.details["vectors"])
    return s.report(config)


# ---------------------------------------------------------------- group suites

def suite_baer(config: dict, threads: int = 1) -> Report:
    s = Suite("baer", "verify.baer")
    for name in BAER_GROUPS:
        G = builtin_group(name)
        S, _ = engel_like_set(G, "e", threads=threads)
        F = fitting_subgroup(G)
        s.add(f"{name}: Engel elements = Fitting subgroup", np.array_equal(S.elements, F.elements),
              order=G.order, fitting=F.order, engel=S.order)
    return s.report(config)


def suite_minimal_simple(config: dict, threads: int = 1, strategy: str = "class-reps") -> Report:
    s = Suite("minimal-simple", "verify.minimal-simple")
    conv = config.get("conj_convention", "right")
    for name in MINIMAL_SIMPLE:
        G = builtin_group(name)
        r = identity_holds(G, "s", 10, strategy=strategy, threads=threads, convention=conv)
        s.add(f"{name} (order {G.order}): s_n is not an identity for n <= 10",
              r.verdict == "fails" and r.details["least_n"] is None, order=G.order, witness=r.witness)
    for name in SOLVABLE_SAMPLES:
        G = builtin_group(name)
        r = identity_holds(G, "s", 10, strategy=strategy, threads=threads, convention=conv)
        s.add(f"{name}: s_n is an identity for some n <= 10", r.details["least_n"] is not None,
              least_n=r.details["least_n"])
    return s.report(config)


def suite_conjecture_radical(config: dict, threads: int = 1) -> Report:
    s = Suite("conjecture-radical", "verify.conjecture-radical", experimental=True)
    proved_ok = True
    for name in BAER_GROUPS:
        G = builtin_group(name)
        R = solvable_radical(G)
        for seq in ("s", "w"):
            S, _ = engel_like_set(G, seq, threads=threads)
            contains = S.contains(R)
            proved_ok &= contains
            s.add(f"{name}, {seq}: Engel-like set = solvable radical", contains and S.order == R.order,
                  radical=R.order, engel_like=S.order, radical_contained=contains)
    s.checks.insert(0, {"check": "solvable radical contained in the s- and w-Engel-like sets", "passed": proved_ok})
    return s.report(config)


def suite_conjecture_aut(config: dict) -> Report:
    s = Suite("conjecture-aut", "verify.conjecture-aut", experimental=True)
    A5 = builtin_group("alt:5")
    sigma = conjugation_automorphism(A5, parse_cycles("(1 2)", 5), name="conj(1 2)")
    H = semidirect_product(A5, [sigma])
    s.add("A5 x| <conj (1 2)> matches S5 by order and class sizes", H.invariant() == builtin_group("sym:5").invariant())
    r = engel_automorphism_test(A5, sigma, "e")
    s.add("conj (1 2) on A5 is not e-Engel", r.verdict == "not-engel", witness=r.witness)
    G = builtin_group("alt:5*alt:5")
    r = engel_automorphism_test(G, swap_automorphism(G), "w")
    s.add("swap on A5 x A5 is not w-Engel", r.verdict == "not-engel", witness=r.witness,
          containment_checks=r.details["containment_checks"])
    return s.report(config)


SUITES: Dict[str, Callable] = {
    "thm-ch": suite_thm_ch,
    "thm-rad": suite_thm_rad,
    "thm-rad-w": suite_thm_rad_w,
    "thm-cl": suite_thm_cl,
    "baer": suite_baer,
    "charp-counterexamples": suite_charp,
    "minimal-simple": suite_minimal_simple,
    "conjecture-radical": suite_conjecture_radical,
    "conjecture-aut": suite_conjecture_aut,
}


def verify_suite(name: str, *, threads: int = 1, seed: int = 0, convention: str = "right",
                 strategy: str = "class-reps") -> Report:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    config = {"seed": seed, "conj_convention": convention}
    fn = SUITES[name]
    kwargs = {}
    code = fn.__code__.co_varnames[:fn.__code__.co_argcount]
    if "threads" in code:
        kwargs["threads"] = threads
    if "strategy" in code:
        kwargs["strategy"] = strategy
        config["strategy"] = strategy
    return fn(config, **kwargs)
