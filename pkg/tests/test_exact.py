import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cbiharmonic.exact import Surd, as_exact, is_exact, rational_sqrt

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=30)
radicands = st.sampled_from([Fraction(1), Fraction(2), Fraction(3), Fraction(5, 7)])


def test_rational_sqrt():
    assert rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert rational_sqrt(Fraction(2)) is None
    assert rational_sqrt(Fraction(0)) == 0


def test_as_exact_keeps_floats():
    assert as_exact(3) == Fraction(3) and is_exact(as_exact(3))
    assert not is_exact(as_exact(0.5))


def test_surd_rational_collapse():
    s = Surd(Fraction(3), Fraction(4))
    assert s.rational() == 6
    assert Surd.sqrt(Fraction(2)).rational() is None
    assert (Surd.sqrt(Fraction(2)) * Surd.sqrt(Fraction(2))).rational() == 2


def test_zero_normalizes():
    z = Surd(0, 7)
    assert z.is_zero() and z.radicand == 1 and z.sign() == 0


def test_aligned_radicands_add():
    # sqrt(8) + sqrt(2) = 3 sqrt(2)
    s = Surd.sqrt(Fraction(8)) + Surd.sqrt(Fraction(2))
    assert s.rational() is None
    assert math.isclose(float(s), 3 * math.sqrt(2))


def test_incompatible_exact_sum_raises():
    with pytest.raises(ArithmeticError):
        Surd.sqrt(Fraction(2)) + Surd.sqrt(Fraction(3))


def test_float_surds_collapse():
    s = Surd(1.0, 2.0) + Surd(1.0, 3.0)
    assert math.isclose(float(s), math.sqrt(2) + math.sqrt(3))


def test_negative_radicand():
    with pytest.raises(ValueError):
        Surd(1, -1)


@given(rationals, rationals, rationals, radicands)
def test_field_arithmetic_matches_floats(a, b, c, s):
    x, y = Surd(a, s), Surd(b, s)
    lhs = (x + y) * Surd(c) - x * y * Surd.sqrt(s)
    rhs = ((a + b) * c - a * b * s) * math.sqrt(s)
    assert math.isclose(float(lhs), float(rhs), rel_tol=1e-12, abs_tol=1e-9)


@given(rationals, rationals, radicands)
def test_sign_is_exact(a, b, s):
    x = Surd(a, s) - Surd(b, s)
    assert x.sign() == (a > b) - (a < b)
