import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from engelrad.errors import DivisionByZero, NonPrimeModulus, ReducibleModulusPolynomial, ScalarSyntaxError
from engelrad.exactfield import (GF, QQ, FieldSpec, default_modulus, finite_field, invert, make_field, parse_field,
                                 parse_scalar)

GF5 = GF(5)
GF7 = GF(7)
GF8 = GF(2, [1, 1, 0, 1])
GF9 = finite_field(9)


def test_make_field_kinds():
    assert make_field(FieldSpec.rationals()).characteristic == 0
    F5 = make_field(FieldSpec.prime(5))
    assert F5.order == 5 and len(list(F5.elements())) == 5
    F8 = make_field(FieldSpec.extension(2, [1, 1, 0, 1]))
    assert F8.order == 8 and F8.characteristic == 2


def test_make_field_rejects_bad_input():
    with pytest.raises(NonPrimeModulus):
        GF(6)
    with pytest.raises(ReducibleModulusPolynomial):
        GF(2, [1, 0, 1])   # 1 + t^2 = (1 + t)^2


def test_invert_examples():
    assert invert(parse_scalar(QQ, "2/3")) == parse_scalar(QQ, "3/2")
    assert invert(GF7(3)) == GF7(5)
    t = parse_scalar(GF8, "[0,1,0]")
    assert invert(t) == parse_scalar(GF8, "[1,0,1]")
    assert t * invert(t) == GF8(1)
    with pytest.raises(DivisionByZero):
        invert(GF5(0))


def test_parse_scalar_examples():
    assert parse_scalar(QQ, "-7/2").value == Fraction(-7, 2)
    assert parse_scalar(GF5, "9") == GF5(4)
    one_plus_t = parse_scalar(GF8, "[1,1,0]")
    assert one_plus_t == GF8(1) + parse_scalar(GF8, "[0,1,0]")
    with pytest.raises(ScalarSyntaxError):
        parse_scalar(QQ, "1/0")
    with pytest.raises(ScalarSyntaxError):
        parse_scalar(GF5, "abc")


def test_parse_field_and_default_modulus():
    assert parse_field("Q") == QQ
    assert parse_field("GF(7)").order == 7
    assert default_modulus(2, 3) == (1, 1, 0, 1)
    assert default_modulus(3, 2) == (1, 0, 1)
    assert finite_field(4).order == 4


def test_rationals_do_not_overflow():
    x = QQ(-2) ** 200
    assert x.value == Fraction((-2) ** 200)


FINITE = [GF5, GF7, GF8, GF9]


def _check_axioms(F, a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == F(0)
    if not a.is_zero():
        assert a * invert(a) == F(1)


rationals = st.fractions(max_denominator=10 ** 6).filter(lambda q: abs(q.numerator) < 10 ** 12)


@pytest.mark.parametrize("F", FINITE + [QQ], ids=lambda F: F.spec.label())
def test_field_axioms_on_10k_triples(F):
    rng = random.Random(F.spec.label())
    for _ in range(10_000):
        if F is QQ:
            a, b, c = (QQ(Fraction(rng.randint(-50, 50), rng.randint(1, 50))) for _ in range(3))
        else:
            a, b, c = (F.scalar(F.random(rng)) for _ in range(3))
        _check_axioms(F, a, b, c)


@settings(max_examples=300, deadline=None)
@given(rationals, rationals, rationals)
def test_rational_axioms(x, y, z):
    _check_axioms(QQ, QQ(x), QQ(y), QQ(z))


@settings(max_examples=500, deadline=None)
@given(st.sampled_from(FINITE + [QQ]), st.integers(-10 ** 9, 10 ** 9), st.integers(1, 10 ** 4))
def test_parse_format_round_trip(F, num, den):
    if F is QQ:
        a = QQ(Fraction(num, den))
    else:
        els = list(F.elements())
        a = F.scalar(els[num % len(els)])
    assert parse_scalar(F, F.format(a.value)) == a
