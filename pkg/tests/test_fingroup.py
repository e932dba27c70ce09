import numpy as np
import pytest
from sympy.combinatorics import Permutation

from engelrad.catalog import builtin_group
from engelrad.errors import OrderExceedsCap, SequenceNotAutocorrect
from engelrad.fingroup import (conjugation_automorphism, cr_radical, engel_automorphism_test, engel_like_set,
                               evaluate, fitting_subgroup, identity_automorphism, identity_holds, make_group,
                               normal_closure, parse_cycles, quotient, reaches_identity, semidirect_product,
                               sequence_values, solvable_radical, swap_automorphism, trivial_group)
from engelrad.fingroup.engel import GroupOps
from engelrad.words import SEQUENCES, generate, get_sequence

GROUP_SEQS = [s.id for s in SEQUENCES.values() if s.kind == "group"]


def _el(G, cycles):
    return int(G.index_of(np.array([parse_cycles(cycles, G.degree)], dtype=G.perms.dtype))[0])


# ---------------------------------------------------------------- construction

def test_make_group_examples():
    assert make_group(["(1 2)", "(1 2 3 4)"]).order == 24
    assert make_group([]).order == 1
    assert builtin_group("psl3:3").order == 5616
    with pytest.raises(OrderExceedsCap):
        make_group(["(1 2)", "(1 2 3 4 5 6 7 8)"], cap=1000)


def test_builtin_invariants_agree():
    A5 = builtin_group("alt:5")
    assert A5.order == 60
    assert A5.invariant() == builtin_group("psl2:4").invariant() == builtin_group("psl2:5").invariant()


def test_right_action_convention():
    S3 = builtin_group("sym:3")
    a, b = _el(S3, "(1 2)"), _el(S3, "(1 3)")
    prod = S3.perms[S3.mul(a, b)]
    assert list(prod) == (Permutation([[0, 1]], size=3) * Permutation([[0, 2]], size=3)).array_form


def test_table_axioms():
    G = builtin_group("sl2:5")
    rng = np.random.default_rng(0)
    a, b, c = (rng.integers(0, G.order, 100_000) for _ in range(3))
    assert np.array_equal(G.mul(G.mul(a, b), c), G.mul(a, G.mul(b, c)))
    inv = G.inverse(np.arange(G.order))
    assert np.all(G.mul(np.arange(G.order), inv) == 0)


def test_labels_round_trip():
    G = builtin_group("psl2:7")
    for g in range(0, G.order, 17):
        word = G.word_of(g)
        h = 0
        for gen in word:
            h = G.mul(h, G.gens[gen])
        assert h == g


# ---------------------------------------------------------------- evaluation

def test_evaluate_examples():
    S3 = builtin_group("sym:3")
    a, b = _el(S3, "(1 2)"), _el(S3, "(1 3)")
    assert evaluate(S3, generate("e-group", 1), {"x": a, "y": 0}) == 0
    assert sequence_values(S3, "s-bww", 1, a, b) == [a]
    c = sequence_values(S3, "e-group", 1, a, b)[0]
    assert S3.element_order(c) == 3


def test_word_evaluation_matches_step_iteration():
    G = builtin_group("sym:4")
    rng = np.random.default_rng(1)
    for seq in ("e-group", "s-bww", "w-group"):
        for _ in range(10):
            x, y = (int(v) for v in rng.integers(0, G.order, 2))
            vals = sequence_values(G, seq, 3, x, y)
            assert evaluate(G, generate(seq, 3), {"x": x, "y": y}) == vals[2]


# ---------------------------------------------------------------- subgroups and radicals

def test_engel_like_set_examples():
    S4 = builtin_group("sym:4")
    S, rep = engel_like_set(S4, "e", compare="fitting")
    assert S.order == 4 and S == fitting_subgroup(S4) and rep.details["equal"]
    assert engel_like_set(builtin_group("alt:5"), "e")[0].order == 1
    for name in ("dihedral:4", "q8"):
        G = builtin_group(name)
        assert engel_like_set(G, "e")[0].order == G.order


def test_normal_closure_examples():
    S4 = builtin_group("sym:4")
    assert normal_closure(S4, [_el(S4, "(1 2)(3 4)")]).order == 4
    A5 = builtin_group("alt:5")
    assert normal_closure(A5, [_el(A5, "(1 2 3)")]).order == 60
    assert normal_closure(A5, []).order == 1


def test_radical_examples():
    S4 = builtin_group("sym:4")
    assert solvable_radical(S4).order == 24
    assert fitting_subgroup(S4).order == 4
    G = builtin_group("alt:5*sym:4")
    R = solvable_radical(G)
    # the first five points carry the A5 factor
    assert R.order == 24 and np.array_equal(G.perms[R.elements][:, :5], np.tile(np.arange(5), (24, 1)))
    assert fitting_subgroup(builtin_group("sl2:3")).order == 8
    assert fitting_subgroup(builtin_group("sym:3*sym:3")).order == 9


def test_identity_holds_examples():
    assert identity_holds(trivial_group(), "s", 1).verdict == "holds"
    r = identity_holds(builtin_group("alt:5"), "s", 10)
    assert r.verdict == "fails" and r.details["least_n"] is None and r.witness is not None
    r = identity_holds(builtin_group("sym:4"), "s", 10)
    assert r.details["least_n"] == 4


def test_quotient_stability():
    G = builtin_group("sym:4")
    N = fitting_subgroup(G)
    Q, proj = quotient(G, N)
    assert Q.order == 6
    for seq in ("e", "s", "w"):
        S, _ = engel_like_set(G, seq)
        SQ, _ = engel_like_set(Q, seq)
        assert set(proj[S.elements].tolist()) <= set(SQ.elements.tolist())


@pytest.mark.parametrize("name", ["sym:4", "sl2:3", "alt:5", "dihedral:6", "sym:5", "psl2:7", "alt:4*cyclic:2",
                                  "psl2:9"])
def test_class_reps_equals_full(name):
    G = builtin_group(name)
    for seq in ("s", "e"):
        for n in (1, 2, 4):
            a = identity_holds(G, seq, n, strategy="class-reps")
            b = identity_holds(G, seq, n, strategy="full")
            assert a.verdict == b.verdict
            assert a.details["least_n"] == b.details["least_n"]


@pytest.mark.parametrize("name", ["sym:3", "sym:4", "alt:4", "q8", "dihedral:5", "sl2:3", "alt:5"])
@pytest.mark.parametrize("seq", GROUP_SEQS)
def test_sequences_stay_trivial(name, seq):
    G = builtin_group(name)
    spec = get_sequence(seq)
    ops = GroupOps(G)
    x, y = (a.ravel() for a in np.meshgrid(np.arange(G.order), np.arange(G.order)))
    cur = np.asarray(spec.seed(x, y, ops, "right"))
    hit = cur == 0
    for _ in range(9):
        cur = np.asarray(spec.step(cur, x, y, ops, "right"))
        assert np.all(cur[hit] == 0)
        hit |= cur == 0


def test_radical_contained_in_engel_like_sets():
    for name in ("sym:4", "sl2:5", "alt:5*cyclic:2", "sym:3*sym:3"):
        G = builtin_group(name)
        R = solvable_radical(G)
        for seq in ("s", "w"):
            assert engel_like_set(G, seq)[0].contains(R)


def test_reaches_identity_reports_first_n():
    G = builtin_group("sym:3")
    x = np.arange(G.order).repeat(G.order)
    y = np.tile(np.arange(G.order), G.order)
    hit, first = reaches_identity(G, get_sequence("s", "group"), x, y)
    assert hit.all() and first.max() == 3


# ---------------------------------------------------------------- CR-radical

def test_cr_examples():
    V, comps = cr_radical(builtin_group("a5wr2"))
    assert V.order == 3600 and len(comps) == 1 and comps[0].factors == 2
    G = builtin_group("alt:5*psl2:7")
    V, comps = cr_radical(G)
    assert V.order == G.order and len(comps) == 2
    A5 = builtin_group("alt:5")
    V, comps = cr_radical(A5)
    assert V.order == 60 and comps[0].factors == 1


# ---------------------------------------------------------------- holomorphs

def test_semidirect_examples():
    A5 = builtin_group("alt:5")
    sigma = conjugation_automorphism(A5, parse_cycles("(1 2)", 5))
    H = semidirect_product(A5, [sigma])
    assert H.invariant() == builtin_group("sym:5").invariant()
    for name in ("sym:4", "q8", "dihedral:5"):
        G = builtin_group(name)
        assert semidirect_product(G, [identity_automorphism(G)]).invariant() == G.invariant()
    AA = builtin_group("alt:5*alt:5")
    assert semidirect_product(AA, [swap_automorphism(AA)]).order == 7200


def test_engel_automorphism_examples():
    A5 = builtin_group("alt:5")
    assert engel_automorphism_test(A5, identity_automorphism(A5), "e").verdict == "engel"
    sigma = conjugation_automorphism(A5, parse_cycles("(1 2)", 5))
    assert engel_automorphism_test(A5, sigma, "e").verdict == "not-engel"
    with pytest.raises(SequenceNotAutocorrect):
        engel_automorphism_test(A5, sigma, "u-bggkpp")


def test_swap_not_w_engel():
    G = builtin_group("alt:5*alt:5")
    r = engel_automorphism_test(G, swap_automorphism(G), "w")
    assert r.verdict == "not-engel" and r.details["containment_checks"] > 0
