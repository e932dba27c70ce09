import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from engelrad import liealg
from engelrad.catalog import builtin_lie
from engelrad.errors import ArityMismatch
from engelrad.exactfield import GF, QQ
from engelrad.poly import MultiPoly, is_identically_zero, poly_add, poly_eval, poly_mul, variables


def test_product_and_cancellation():
    x1, x2 = variables(QQ, 2)
    assert poly_mul(x1 + x2, x1 - x2) == x1 * x1 - x2 * x2
    p = x1 * x2 + 3
    assert poly_add(p, -p).is_identically_zero()
    half = MultiPoly.constant(QQ, 2, QQ(Fraction(1, 2)))
    assert half * (x1 * 2) == x1


def test_eval_examples():
    x1, x2 = variables(QQ, 2)
    assert poly_eval(x1 * x1 - x2 * x2, [QQ(3), QQ(2)]) == QQ(5)
    assert poly_eval(MultiPoly.zero(QQ, 2), [QQ(7), QQ(-1)]) == QQ(0)


def test_identically_zero_examples():
    x1, x2 = variables(QQ, 2)
    assert is_identically_zero(MultiPoly.zero(QQ, 2))
    assert is_identically_zero(x1 * x2 - x2 * x1)
    assert not is_identically_zero(x1)


def test_arity_mismatch():
    (a,) = variables(QQ, 1)
    b, _ = variables(QQ, 2)
    with pytest.raises(ArityMismatch):
        a + b


def test_finite_field_polynomials():
    x, y = variables(GF(5), 2)
    assert ((x + y) ** 5 - x ** 5 - y ** 5).is_identically_zero()


def test_symbolic_v3_on_b2_vanishes_and_matches_numeric():
    L = builtin_lie("b2")
    polys = liealg.symbolic_sequence(L, "v", 3)
    assert all(p.is_identically_zero() for p in polys[2])
    rng = random.Random(0)
    for _ in range(20):
        point = [QQ(Fraction(rng.randint(-9, 9), rng.randint(1, 5))) for _ in range(2 * L.dim)]
        x = [c.value for c in point[:L.dim]]
        y = [c.value for c in point[L.dim:]]
        numeric = liealg.evaluate_sequence(L, "v", 3, x, y)
        for n in range(3):
            assert [poly_eval(p, point).value for p in polys[n]] == list(numeric[n].coords)


@pytest.mark.parametrize("name", ["sl2", "heis3", "gl2"])
def test_symbolic_degree_bound_and_consistency(name):
    L = builtin_lie(name)
    d = L.dim
    polys = liealg.symbolic_sequence(L, "v", d + 1)
    rng = random.Random(name)
    for n, coords in enumerate(polys, start=1):
        assert all(p.total_degree() <= 2 * n - 1 for p in coords if not p.is_identically_zero())
    for _ in range(5):
        point = [QQ(rng.randint(-3, 3)) for _ in range(2 * d)]
        numeric = liealg.evaluate_sequence(L, "v", d + 1, [c.value for c in point[:d]],
                                           [c.value for c in point[d:]])
        assert [poly_eval(p, point).value for p in polys[-1]] == list(numeric[-1].coords)


small = st.integers(-4, 4)
monos = st.dictionaries(st.tuples(st.integers(0, 2), st.integers(0, 2)), small, max_size=5)


def _poly(terms):
    p = MultiPoly.zero(QQ, 2)
    x1, x2 = variables(QQ, 2)
    for (a, b), c in terms.items():
        p = p + (x1 ** a) * (x2 ** b) * c
    return p


@settings(max_examples=200, deadline=None)
@given(monos, monos, monos, small, small)
def test_ring_axioms_and_eval_homomorphism(ta, tb, tc, u, v):
    a, b, c = _poly(ta), _poly(tb), _poly(tc)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    pt = [QQ(u), QQ(v)]
    assert poly_eval(a * b, pt) == poly_eval(a, pt) * poly_eval(b, pt)
    assert poly_eval(a + b, pt) == poly_eval(a, pt) + poly_eval(b, pt)
