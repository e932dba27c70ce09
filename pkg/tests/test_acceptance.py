"""Acceptance criteria 1-14. Run ``pytest tests/test_acceptance.py`` for a one-line-per-criterion summary."""
import json
import time

import numpy as np
import pytest

from engelrad import liealg
from engelrad.catalog import builtin_group, builtin_lie
from engelrad.cli import main
from engelrad.fingroup import (conjugation_automorphism, engel_automorphism_test, engel_like_set, fitting_subgroup,
                               identity_holds, parse_cycles, semidirect_product, solvable_radical, swap_automorphism)
from engelrad.verify import BAER_GROUPS, sl2_w_coefficients, verify_suite
from engelrad.words import check_autocorrect, check_correct

from oracles import s_identity

criterion = pytest.mark.criterion


def _cli_json(capsys, *argv):
    code = main(list(argv) + ["--format", "json", "--reproducible"])
    return code, capsys.readouterr().out


# 1 ---------------------------------------------------------------------------

@criterion(1, "sl2 closed form v_n(e_+, e_-) = (-2)^(n-1) e_+ for 2 <= n <= 12")
def test_c01_sl2_closed_form():
    L = builtin_lie("sl2")
    t = time.perf_counter()
    vals = liealg.evaluate_sequence(L, "v", 12, "e_+", "e_-")
    elapsed = time.perf_counter() - t
    for n in range(2, 13):
        assert vals[n - 1] == L["e_+"] * (-2) ** (n - 1)
    assert elapsed < 0.1


# 2 ---------------------------------------------------------------------------

@criterion(2, "sl2 w-form: h-coordinate of w_n(e_+, e_-) is (-4)^(n-1) for 1 <= n <= 8")
@pytest.mark.xfail(strict=True, reason="exact values are 1, -4, -64, -16384, ... with C_(n+1) = -4 C_n^2")
def test_c02_sl2_w_form():
    assert sl2_w_coefficients(8) == [(-4) ** (n - 1) for n in range(1, 9)]


@criterion(2, "sl2 w-form: h-coordinate of w_n(e_+, e_-) is (-4)^(n-1) for 1 <= n <= 8")
def test_c02_sl2_w_exact_values():
    coeffs = sl2_w_coefficients(8)
    assert coeffs[:4] == [1, -4, -64, -16384]
    assert all(coeffs[n + 1] == -4 * coeffs[n] ** 2 for n in range(7))


# 3 ---------------------------------------------------------------------------

@criterion(3, "symbolic v_3 = 0 on b2, v_4 = 0 on n3, v_n != 0 on sl2 for n <= 4")
def test_c03_symbolic_identities():
    t = time.perf_counter()
    assert liealg.identity_check(builtin_lie("b2"), "v", 3, method="symbolic").verdict == "holds"
    assert liealg.identity_check(builtin_lie("n3"), "v", 4, method="symbolic").verdict == "holds"
    for n in range(1, 5):
        r = liealg.identity_check(builtin_lie("sl2"), "v", n, method="symbolic")
        assert r.verdict == "fails"
        assert (r.witness["x"], r.witness["y"]) == ("e_+", "e_-")
    assert time.perf_counter() - t < 5


# 4 ---------------------------------------------------------------------------

@criterion(4, "char 0: y in R <=> v-Engel on sl2, gl2, b2, heis3, sl3, sl2+b2 (100 seeded y each)")
def test_c04_radical_equivalence():
    t = time.perf_counter()
    r = verify_suite("thm-rad", seed=0)
    assert r.verdict == "holds", r.details
    checks = r.details["checks"]
    assert len(checks) == 6
    assert all(c["discrepancies"] == [] and c["undetermined"] == 0 for c in checks)
    assert time.perf_counter() - t < 60


# 5 ---------------------------------------------------------------------------

@criterion(5, "char 0: y in N <=> strictly Engel, and <=> totally Engel")
def test_c05_nilradical_equivalence():
    r = verify_suite("thm-cl", seed=0)
    assert r.verdict == "holds", r.details
    assert len(r.details["checks"]) == 12
    assert all(c["discrepancies"] == [] and c["undetermined"] == 0 for c in r.details["checks"])


# 6 ---------------------------------------------------------------------------

JACOBSON_X, JACOBSON_Y = "f+e_1", "e+e_2"


@criterion(6, "jacobson(5): solvable, v_n(f+e_1, e+e_2) != 0 for n <= 20, v_2 = e+e_2, v_3 = e_3")
def test_c06_jacobson_counterexample():
    J = builtin_lie("jacobson:5")
    assert liealg.series(J, "derived")[-1].is_zero()
    vals = liealg.evaluate_sequence(J, "v", 20, JACOBSON_X, JACOBSON_Y)
    assert all(not v.is_zero() for v in vals)
    assert vals[2] == J["e_3"]
    assert vals[1] == J["e"] - J["e_2"]


@criterion(6, "jacobson(5): solvable, v_n(f+e_1, e+e_2) != 0 for n <= 20, v_2 = e+e_2, v_3 = e_3")
@pytest.mark.xfail(strict=True, reason="v_2 = e+e_2 needs the table as written, which fails the Jacobi identity")
def test_c06_jacobson_v2_as_stated():
    J = builtin_lie("jacobson:5")
    assert liealg.evaluate_sequence(J, "v", 2, JACOBSON_X, JACOBSON_Y)[1] == J["e"] + J["e_2"]


# 7 ---------------------------------------------------------------------------

@criterion(7, "witt(7): perfect, and w_2(x, e_5) = 0 for all 7^7 vectors x")
def test_c07_witt_counterexample():
    W = builtin_lie("witt:7")
    assert liealg.series(W, "derived")[1].is_full()
    t = time.perf_counter()
    r = liealg.vanishes_everywhere(W, "w", 2, "e_5", threads=8)
    assert r.verdict == "holds" and r.details["vectors"] == 823543
    assert time.perf_counter() - t < 120


# 8 ---------------------------------------------------------------------------

@criterion(8, "Engel elements = Fitting subgroup on every builtin group of order <= 1000")
def test_c08_baer():
    assert len(BAER_GROUPS) >= 15
    assert {"sym:4", "sym:3*sym:3", "sl2:3", "alt:5", "sym:5", "dihedral:4", "dihedral:6"} <= set(BAER_GROUPS)
    t = time.perf_counter()
    for name in BAER_GROUPS:
        G = builtin_group(name)
        assert G.order <= 1000
        S, _ = engel_like_set(G, "e")
        assert np.array_equal(S.elements, fitting_subgroup(G).elements), name
    assert time.perf_counter() - t < 60


# 9 ---------------------------------------------------------------------------

@criterion(9, "s_n is not an identity for n <= 10 on A5, PSL(2,5), PSL(2,7), PSL(3,3), Sz(8)")
@pytest.mark.parametrize("name, order, budget", [("alt:5", 60, 60), ("psl2:5", 60, 60), ("psl2:7", 168, 60),
                                                 ("psl3:3", 5616, 60), ("sz:8", 29120, 600)])
def test_c09_minimal_simple(name, order, budget):
    t = time.perf_counter()
    G = builtin_group(name)
    assert G.order == order
    r = identity_holds(G, "s", 10, strategy="class-reps")
    assert r.verdict == "fails" and r.details["least_n"] is None
    assert r.witness is not None and r.witness["value"] != "()"
    assert time.perf_counter() - t < budget


# 10 --------------------------------------------------------------------------

LEAST_N = {"sym:3": 3, "sym:4": 4, "sl2:3": 4, "dihedral:6": 3}


@criterion(10, "least n with s_n = 1: S3, S4, SL(2,3), D6 match the oracle; none <= 10 for A5")
def test_c10_solvable_detection():
    for name, n in LEAST_N.items():
        assert identity_holds(builtin_group(name), "s", 10).details["least_n"] == n
    assert identity_holds(builtin_group("alt:5"), "s", 10).details["least_n"] is None


@criterion(10, "least n with s_n = 1: S3, S4, SL(2,3), D6 match the oracle; none <= 10 for A5")
def test_c10_oracle_agrees():
    for name, n in LEAST_N.items():
        assert s_identity.least_n(s_identity.GROUPS[name]()) == n
    assert s_identity.least_n(s_identity.GROUPS["alt:5"]()) is None


# 11 --------------------------------------------------------------------------

@criterion(11, "R(G) inside the s- and w-Engel-like sets on builtin groups <= 1000; equality experimental")
def test_c11_radical_containment(record_property):
    equal, total = 0, 0
    for name in BAER_GROUPS:
        G = builtin_group(name)
        R = solvable_radical(G)
        for seq in ("s", "w"):
            S, _ = engel_like_set(G, seq)
            assert S.contains(R), (name, seq)
            equal += S.order == R.order
            total += 1
    r = verify_suite("conjecture-radical")
    assert r.verdict in ("experimental-pass", "experimental-fail")
    record_property("note", f"experimental equality: {r.verdict}, {equal}/{total} cases equal")


# 12 --------------------------------------------------------------------------

@criterion(12, "conj (1 2) on A5 not e-Engel; swap on A5 x A5 not w-Engel; values stay in the G-factor")
def test_c12_engel_automorphisms():
    A5 = builtin_group("alt:5")
    sigma = conjugation_automorphism(A5, parse_cycles("(1 2)", 5))
    H = semidirect_product(A5, [sigma])
    assert H.invariant() == builtin_group("sym:5").invariant()
    r = engel_automorphism_test(A5, sigma, "e")
    assert r.verdict == "not-engel" and r.details["containment_checks"] > 0
    G = builtin_group("alt:5*alt:5")
    r = engel_automorphism_test(G, swap_automorphism(G), "w")
    assert r.verdict == "not-engel" and r.witness is not None
    assert r.details["containment_checks"] > 0


# 13 --------------------------------------------------------------------------

@criterion(13, "check_correct thresholds in {1, 2}; autocorrect for e, s, w; u-bggkpp fails at n = 1")
def test_c13_sequence_hygiene():
    for seq in ("e-group", "s-bww", "u-bggkpp", "w-group"):
        d = check_correct(seq, 10).details
        assert d["n0_x_to_1"] in (1, 2) and d["n0_y_to_1"] in (1, 2)
    for seq in ("e-group", "s-bww", "w-group"):
        assert check_autocorrect(seq, 10).verdict == "holds"
    r = check_autocorrect("u-bggkpp", 10)
    assert r.verdict == "fails" and r.witness["n"] == 1


# 14 --------------------------------------------------------------------------

@criterion(14, "criteria 4, 7, 9 give byte-identical reports with --threads 1 and --threads 8")
@pytest.mark.parametrize("argv", [
    ["verify", "thm-rad"],
    ["lie", "vanishes", "--builtin", "witt:7", "--seq", "w", "--n", "2", "--y", "e_5"],
    ["verify", "minimal-simple"],
], ids=["c4", "c7", "c9"])
def test_c14_determinism(capsys, argv):
    code1, one = _cli_json(capsys, *argv, "--threads", "1")
    code8, eight = _cli_json(capsys, *argv, "--threads", "8")
    assert code1 == code8 == 0
    assert one == eight
    json.loads(one)
