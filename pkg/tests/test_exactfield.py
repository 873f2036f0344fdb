from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cliffinv.exactfield import (RATIONALS, FieldError, FieldScalar, arith, conjugate, is_square,
                                 parse_scalar, quad_ext)

rationals = st.fractions(max_denominator=50).filter(lambda x: abs(x) < 1000)
radicands = st.sampled_from([2, 3, 5, -1, -3, 7])


def test_rational_addition():
    assert parse_scalar("1/2") + parse_scalar("1/3") == parse_scalar("5/6")


def test_norm_identity_in_q_sqrt2():
    K = quad_ext(2)
    assert K(1, 1) * K(1, -1) == K(-1)


def test_inverse_in_q_sqrt3():
    K = quad_ext(3)
    assert 1 / K(2, 1) == K(2, -1)


def test_conjugates():
    assert conjugate(RATIONALS(3)) == RATIONALS(3)
    K = quad_ext(5)
    assert conjugate(K(1, 2)) == K(1, -2)


@pytest.mark.parametrize("text,expected", [("9/4", True), ("-1", False), ("18/2", True),
                                           ("2", False), ("0", True)])
def test_is_square(text, expected):
    assert is_square(parse_scalar(text)) is expected


def test_parse_forms():
    assert parse_scalar("+2") == RATIONALS(2)
    x = parse_scalar("1/2-3*sqrt(5)")
    assert x.field == quad_ext(5) and x == quad_ext(5)("1/2", -3)
    assert parse_scalar("sqrt(2)") * parse_scalar("sqrt(2)") == quad_ext(2)(2)
    with pytest.raises(FieldError):
        parse_scalar("two")


def test_square_radicand_rejected():
    with pytest.raises(FieldError):
        quad_ext(4)
    with pytest.raises(FieldError):
        quad_ext(0)


def test_field_mismatch():
    with pytest.raises(FieldError):
        quad_ext(2)(1, 1) + quad_ext(3)(1, 1)
    with pytest.raises(FieldError):
        arith("+", quad_ext(2)(1), quad_ext(3)(1))


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        RATIONALS(0).inverse()


@given(radicands, rationals, rationals)
def test_conjugation_is_an_involution(c, a, b):
    x = quad_ext(c)(a, b)
    assert conjugate(conjugate(x)) == x


@given(radicands, *[rationals] * 6)
def test_field_axioms(c, a1, b1, a2, b2, a3, b3):
    K = quad_ext(c)
    x, y, z = K(a1, b1), K(a2, b2), K(a3, b3)
    assert (x * y) * z == x * (y * z)
    assert x * y == y * x
    assert x * (y + z) == x * y + x * z
    assert (x + y) + z == x + (y + z)
    if not x.is_zero():
        assert x * x.inverse() == K.one
    assert conjugate(x * y) == conjugate(x) * conjugate(y)


@given(rationals, rationals)
def test_rationals_agree_with_fraction(a, b):
    x, y = RATIONALS(a), RATIONALS(b)
    assert (x * y).to_fraction() == a * b
    assert (x - y).to_fraction() == a - b
    if b:
        assert (x / y).to_fraction() == Fraction(a) / b


@given(rationals)
def test_squares_are_squares(a):
    assert is_square(RATIONALS(a * a))
