import random
from fractions import Fraction

import pytest

from engelrad import liealg
from engelrad.catalog import builtin_lie
from engelrad.errors import AntisymmetryViolation, EnumerationTooLarge, JacobiViolation, UnsupportedCharacteristic
from engelrad.exactfield import GF, QQ
from engelrad.linalg import Subspace

CHAR0 = ["sl2", "gl2", "b2", "heis3", "sl3", "sl2+b2"]


def _rank(f, rows):
    return Subspace(f, len(rows[0]), rows).dim if rows else 0


# ---------------------------------------------------------------- construction

def test_sl2_table():
    L = builtin_lie("sl2")
    assert L.dim == 3 and L.names == ("e_+", "e_-", "h")
    assert liealg.bracket(L, "e_+", "e_-") == L["h"]
    assert liealg.bracket(L, "h", "e_+") == L["e_+"] * 2
    assert liealg.bracket(L, "h", "e_-") == L["e_-"] * -2


def test_make_algebra_from_tensor():
    d = 3
    T = [[[0] * d for _ in range(d)] for _ in range(d)]
    T[2][0][0], T[0][2][0] = 2, -2     # [h, e] = 2e
    T[2][1][1], T[1][2][1] = -2, 2     # [h, f] = -2f
    T[0][1][2], T[1][0][2] = 1, -1     # [e, f] = h
    L = liealg.make_algebra(QQ, T, ["e_+", "e_-", "h"])
    assert L.table() == builtin_lie("sl2").table()


def test_make_algebra_rejects_symmetric_tensor():
    T = [[[0, 0], [1, 0]], [[1, 0], [0, 0]]]
    with pytest.raises(AntisymmetryViolation):
        liealg.make_algebra(QQ, T)


def test_jacobi_violation_names_triple():
    # antisymmetric, but the Jacobi sum on (a, b, c) is nonzero
    table = {(0, 1): {2: 1}, (1, 2): {1: 1}, (0, 2): {0: 1}}
    with pytest.raises(JacobiViolation) as exc:
        liealg.LieAlgebra(QQ, ["a", "b", "c"], table)
    assert (exc.value.i, exc.value.j, exc.value.k) == (0, 1, 2)


@pytest.mark.parametrize("name", ["sl2", "gl2", "b2", "heis3", "n3", "sl3", "jacobson:5", "jacobson:7",
                                  "witt:5", "witt:7", "sl2+b2"])
def test_builtin_models_are_valid(name):
    L = builtin_lie(name)
    L._check_jacobi()
    for i in range(L.dim):
        assert L.bracket(L.basis(i), L.basis(i)).is_zero()


def test_jacobson_bracket_example():
    J = builtin_lie("jacobson:5")
    assert J.names == ("e", "f", "e_1", "e_2", "e_3", "e_4", "e_5")
    assert liealg.bracket(J, "f+e_1", "e+e_2") == -J["e"]
    for i in range(1, 6):
        assert liealg.bracket(J, f"e_{i}", "f") == J[f"e_{i}"] * (i - 1)


def test_witt_table():
    W = builtin_lie("witt:7")
    assert W.names == tuple(f"e_{i}" for i in range(-1, 6))
    assert liealg.bracket(W, "e_1", "e_2") == W["e_3"]
    assert liealg.bracket(W, "e_2", "e_4").is_zero()     # index 6 is out of range


# ---------------------------------------------------------------- structure

def test_series_examples():
    b2 = builtin_lie("b2")
    assert [S.dim for S in liealg.series(b2, "derived")] == [2, 1, 0]
    assert liealg.is_solvable(b2)
    sl2 = builtin_lie("sl2")
    assert [S.dim for S in liealg.series(sl2, "derived")] == [3, 3]
    assert not liealg.is_solvable(sl2)
    W = builtin_lie("witt:7")
    assert [S.dim for S in liealg.series(W, "derived")] == [7, 7]
    assert liealg.is_nilpotent(builtin_lie("heis3"))
    assert [S.dim for S in liealg.series(builtin_lie("heis3"), "lower-central")] == [3, 1, 0]


@pytest.mark.parametrize("p", [5, 7])
def test_witt_perfect_jacobson_solvable(p):
    W = builtin_lie(f"witt:{p}")
    assert liealg.series(W, "derived")[1].is_full()
    assert liealg.is_solvable(builtin_lie(f"jacobson:{p}"))


def test_radical_examples():
    assert liealg.solvable_radical(builtin_lie("sl2")).is_zero()
    gl2 = builtin_lie("gl2")
    z = gl2.span([gl2["z"].coords])
    assert liealg.solvable_radical(gl2) == z
    assert liealg.nilradical(gl2) == z
    assert liealg.center(gl2) == z
    b2 = builtin_lie("b2")
    assert liealg.solvable_radical(b2).is_full()
    assert liealg.nilradical(b2) == b2.span([b2["e"].coords])
    assert liealg.nilradical(builtin_lie("heis3")).is_full()


def test_radical_refused_in_char_p():
    with pytest.raises(UnsupportedCharacteristic):
        liealg.solvable_radical(builtin_lie("jacobson:5"))


@pytest.mark.parametrize("name", CHAR0)
def test_radical_self_checks(name):
    L = builtin_lie(name)
    R = liealg.solvable_radical(L)
    assert L.is_ideal(R) and liealg.is_solvable(L, within=R)
    Q, _ = liealg.quotient(L, R)
    K = liealg.killing_form(Q)
    assert _rank(QQ, K) == Q.dim
    N = liealg.nilradical(L)
    assert L.is_ideal(N) and liealg.is_nilpotent(L, within=N) and R.contains_subspace(N)


def test_ideal_generated_examples():
    sl2, b2 = builtin_lie("sl2"), builtin_lie("b2")
    assert liealg.ideal_generated(sl2, "e_+").is_full()
    assert liealg.ideal_generated(b2, "e") == b2.span([b2["e"].coords])
    assert liealg.ideal_generated(sl2, sl2.zero()).is_zero()


# ---------------------------------------------------------------- sequences and Engel tests

def test_sl2_v_closed_form():
    L = builtin_lie("sl2")
    vals = liealg.evaluate_sequence(L, "v", 12, "e_+", "e_-")
    for n in range(2, 13):
        assert vals[n - 1] == L["e_+"] * (-2) ** (n - 1)


def test_sl2_w_coefficients_recurrence():
    L = builtin_lie("sl2")
    vals = liealg.evaluate_sequence(L, "w", 5, "e_+", "e_-")
    coeffs = [v.coords[2] for v in vals]
    assert all(v == L["h"] * c for v, c in zip(vals, coeffs))
    assert coeffs == [1, -4, -64, -16384, -1073741824]


def test_engel_examples():
    sl2, b2 = builtin_lie("sl2"), builtin_lie("b2")
    v = liealg.engel_test(sl2, "e_-", "v")
    assert v.outcome == "not-engel" and v.witness == sl2["e_+"]
    w = liealg.engel_test(sl2, "e_-", "w")
    assert w.outcome == "not-engel"
    assert liealg.engel_test(b2, "e", "strict").outcome == "engel"
    for kind in liealg.KINDS:
        assert liealg.engel_test(sl2, sl2.zero(), kind).outcome == "engel"


def test_jacobson_radical_element_not_v_engel():
    J = builtin_lie("jacobson:5")
    v = liealg.engel_test(J, "e+e_2", "v")
    assert v.outcome == "not-engel"
    x = v.witness
    vals = liealg.evaluate_sequence(J, "v", J.dim + 1, x, "e+e_2")
    assert not vals[-1].is_zero()


def test_witt_w_engel_element():
    W = builtin_lie("witt:7")
    v = liealg.engel_test(W, "e_5", "w", threads=4)
    assert v.outcome == "engel" and v.n == 2


def test_identity_check_examples():
    assert liealg.identity_check(builtin_lie("b2"), "v", 3).verdict == "holds"
    assert liealg.identity_check(builtin_lie("heis3"), "v", 4).verdict == "holds"
    r = liealg.identity_check(builtin_lie("sl2"), "v", 4)
    assert r.verdict == "fails"
    assert (r.witness["x"], r.witness["y"]) == ("e_+", "e_-")
    assert liealg.identity_check(builtin_lie("jacobson:5"), "v", 20).verdict == "fails"


def test_engel_set_abelian_and_cap():
    A = builtin_lie("abelian:1", field=GF(5))
    for kind in ("e", "v", "w", "strict"):
        members, report = liealg.engel_set(A, kind)
        assert len(members) == 5 and report.details["size"] == 5
    with pytest.raises(EnumerationTooLarge):
        liealg.engel_set(builtin_lie("jacobson:5"), "v")
    with pytest.raises(UnsupportedCharacteristic):
        liealg.engel_set(builtin_lie("sl2"), "v")


def test_witt5_w_engel_set_is_nonzero():
    W = builtin_lie("witt:5")
    members, report = liealg.engel_set(W, "w", threads=4)
    assert report.details["perfect"] and not report.details["solvable"]
    assert len(members) > 1 and W["e_3"] in members


def test_vanishes_everywhere_witt7():
    r = liealg.vanishes_everywhere(builtin_lie("witt:7"), "w", 2, "e_5", threads=4)
    assert r.verdict == "holds" and r.details["vectors"] == 7 ** 7


# ---------------------------------------------------------------- properties

@pytest.mark.parametrize("name", CHAR0)
def test_v_stabilizes_by_dimension(name):
    L = builtin_lie(name)
    d = L.dim
    rng = random.Random(name)
    for _ in range(1000 if d <= 5 else 200):
        x = [Fraction(rng.randint(-2, 2)) for _ in range(d)]
        y = [Fraction(rng.randint(-2, 2)) for _ in range(d)]
        vals = liealg.evaluate_sequence(L, "v", 3 * d + 1, x, y)
        if any(v.is_zero() for v in vals):
            assert vals[d].is_zero()


@pytest.mark.parametrize("name", CHAR0)
def test_symbolic_matches_numeric(name):
    L = builtin_lie(name)
    d = L.dim
    n = min(d + 1, 4)
    polys = liealg.symbolic_sequence(L, "v", n)[-1]
    rng = random.Random(0)
    for _ in range(5):
        pt = [Fraction(rng.randint(-3, 3)) for _ in range(2 * d)]
        want = liealg.evaluate_sequence(L, "v", n, pt[:d], pt[d:])[-1]
        assert tuple(p.eval_raw(pt) for p in polys) == want.coords


def test_direct_sum_component_verdicts():
    S = builtin_lie("sl2+b2")
    sl2, b2 = builtin_lie("sl2"), builtin_lie("b2")
    for kind in ("e", "v", "strict"):
        assert liealg.engel_test(S, [1, 0, 0, 0, 0], kind).outcome == liealg.engel_test(sl2, "e_+", kind).outcome
        assert liealg.engel_test(S, [0, 0, 0, 0, 1], kind).outcome == liealg.engel_test(b2, "e", kind).outcome
        assert liealg.engel_test(S, [0, 0, 0, 1, 0], kind).outcome == liealg.engel_test(b2, "h", kind).outcome


@pytest.mark.parametrize("name", CHAR0)
def test_totally_engel_iff_ideal_nilpotent(name):
    L = builtin_lie(name)
    N = liealg.nilradical(L)
    rng = random.Random(name)
    for k in range(20):
        if k % 2 and not N.is_zero():
            y = [sum(Fraction(rng.randint(-2, 2)) * v[i] for v in N.basis) for i in range(L.dim)]
        else:
            y = [Fraction(rng.randint(-2, 2)) for _ in range(L.dim)]
        nil = liealg.is_nilpotent(L, within=liealg.ideal_generated(L, y))
        assert nil == N.contains(y)
        assert (liealg.engel_test(L, y, "total").outcome == "engel") == nil
