from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from urntubes.errors import DomainError
from urntubes.numeric import approx, as_rational, fmt, from_json, parse_rational, rational, to_json

from conftest import rationals


@given(rationals, rationals, rationals)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a + 0 == a and a * 1 == a
    if a:
        assert a * (1 / a) == 1


@given(st.integers(1, 200))
def test_k_copies_of_one_over_k_sum_to_one(k):
    assert sum([rational(1, k)] * k, Fraction(0)) == 1


def test_zero_denominator():
    with pytest.raises(DomainError):
        rational(1, 0)
    with pytest.raises(DomainError):
        parse_rational("3/0")


def test_parse_rational_forms():
    assert parse_rational("3/4") == Fraction(3, 4)
    assert parse_rational(" -2 / 6 ") == Fraction(-1, 3)
    assert parse_rational("5") == 5
    with pytest.raises(DomainError):
        parse_rational("0.5")


def test_floats_are_refused():
    with pytest.raises(DomainError):
        as_rational(0.5)
    with pytest.raises(DomainError):
        as_rational(True)
    assert as_rational("1/3") == Fraction(1, 3)


def test_display_helpers():
    assert fmt(Fraction(6, 4)) == "3/2"
    assert fmt(Fraction(0)) == "0/1"
    assert approx(Fraction(1, 3)) == 0.333333333333


@given(rationals)
def test_json_round_trip(x):
    assert from_json(to_json(x)) == x
