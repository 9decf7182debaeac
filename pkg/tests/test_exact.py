import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pinnedballs.exact import SQRT3, Root3Scalar, is_exact, to_float

fractions = st.fractions(min_value=-50, max_value=50, max_denominator=40)
scalars = st.builds(Root3Scalar, fractions, fractions)
nonzero = scalars.filter(lambda x: not x.is_zero())


def test_sqrt3_squares_to_three():
    assert SQRT3 * SQRT3 == 3
    assert Root3Scalar(1, 1) * Root3Scalar(1, -1) == -2


def test_mixed_with_fraction_and_int():
    x = Root3Scalar(Fraction(1, 2), 2)
    assert x + 1 == Root3Scalar(Fraction(3, 2), 2)
    assert 1 - x == Root3Scalar(Fraction(1, 2), -2)
    assert 2 * x == Root3Scalar(1, 4)
    assert Root3Scalar(5, 0) == Fraction(5)
    assert hash(Root3Scalar(5, 0)) == hash(Fraction(5))


def test_mixing_with_float_degrades():
    y = Root3Scalar(1, 1) + 0.5
    assert isinstance(y, float)
    assert math.isclose(y, 1.5 + math.sqrt(3))


def test_quadruple_round_trip():
    x = Root3Scalar(Fraction(-7, 16), Fraction(13, 16))
    assert x.to_quadruple() == [-7, 16, 13, 16]
    assert Root3Scalar.from_quadruple(x.to_quadruple()) == x


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        Root3Scalar(1, 1) / Root3Scalar(0, 0)


def test_helpers():
    assert is_exact(Root3Scalar(1)) and is_exact(Fraction(1, 2))
    assert not is_exact(0.5)
    assert to_float(Root3Scalar(0, 1)) == pytest.approx(math.sqrt(3))


@given(scalars, scalars, scalars)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0


@given(scalars, nonzero)
def test_division_inverts_multiplication(a, b):
    assert (a / b) * b == a


@given(scalars)
def test_sign_matches_float(a):
    f = float(a)
    if abs(f) > 1e-9:
        assert a.sign() == (1 if f > 0 else -1)
    assert abs(a) >= 0


@given(scalars, scalars)
def test_ordering_matches_float(a, b):
    if abs(float(a) - float(b)) > 1e-9:
        assert (a < b) == (float(a) < float(b))
