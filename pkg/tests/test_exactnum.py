from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from src.algebra.exactnum import (
    T,
    Jet,
    jet_add,
    jet_mul,
    jet_neg,
    jet_quotient_by_power,
    jet_shift,
    jet_sub,
    jet_unit_inverse,
    parse_scalar,
    scalar_to_str,
    valuation,
)
from src.errors import InputFormatError, NonUnitError, TruncationMismatchError

ORDER = 5
coefficients = st.lists(st.integers(-20, 20), min_size=1, max_size=ORDER)
units = coefficients.filter(lambda c: c[0] != 0)


def test_product_truncates():
    a = Jet.of([1, 1], 4)
    b = Jet.of([1, -1], 4)
    assert a * b == Jet.of([1, 0, -1], 4)
    assert Jet.monomial(3, 4) * Jet.monomial(2, 4) == Jet.zero(4)


def test_functional_forms_agree_with_operators():
    a = Jet.of([2, 0, 1], 4)
    b = Jet.of([0, 3, 0, 1], 4)
    assert jet_add(a, b) == a + b == Jet.of([2, 3, 1, 1], 4)
    assert jet_sub(a, b) == a - b
    assert jet_neg(a) == -a == Jet.of([-2, 0, -1], 4)
    assert jet_mul(a, b) == a * b == Jet.of([0, 6, 0, 5], 4)


def test_geometric_series_inverse():
    assert jet_unit_inverse(Jet.of([1, -1], 4)) == Jet.of([1, 1, 1, 1], 4)


def test_inverse_of_non_unit_fails():
    with pytest.raises(NonUnitError):
        jet_unit_inverse(Jet.monomial(1, 4))


def test_valuation():
    assert valuation(Jet.of([0, 0, 3], 4)) == 2
    assert Jet.zero(4).valuation() == 4
    assert Jet.one(4).valuation() == 0


def test_mixed_orders_rejected():
    with pytest.raises(TruncationMismatchError):
        Jet.one(3) + Jet.one(4)


def test_shift_divides_by_power_of_t():
    assert jet_shift(Jet.of([0, 0, 1, 1], 4), 2) == Jet.of([1, 1], 4)
    with pytest.raises(ValueError):
        jet_shift(Jet.of([0, 1], 4), 2)


def test_quotient_by_power_splits():
    low, high = jet_quotient_by_power(Jet.of([1, 2, 3, 4], 4), 2)
    assert low == Jet.of([1, 2], 4)
    assert high == Jet.of([3, 4], 4)


def test_extend_pads_with_zeros():
    assert Jet.of([1, 2], 3).extend(6) == Jet.of([1, 2], 6)
    with pytest.raises(TruncationMismatchError):
        Jet.of([1, 2], 3).extend(2)


@pytest.mark.parametrize(
    "text, expected",
    [("3/4", Fraction(3, 4)), ("-6/4", Fraction(-3, 2)), ("7", Fraction(7)), (5, Fraction(5))],
)
def test_parse_scalar(text, expected):
    assert parse_scalar(text) == expected


@pytest.mark.parametrize("bad", ["1.5", "1e3", "1/0", "x", "1/-2", "3/+4", True, 0.5])
def test_parse_scalar_rejects(bad):
    with pytest.raises(InputFormatError):
        parse_scalar(bad)


def test_scalar_to_str():
    assert scalar_to_str(Fraction(6, 4)) == "3/2"
    assert scalar_to_str(Fraction(4, 2)) == "2"
    assert scalar_to_str(Fraction(-1, 3)) == "-1/3"


@given(st.fractions())
def test_scalar_text_round_trips(x):
    assert parse_scalar(scalar_to_str(x)) == x


@given(coefficients, coefficients)
def test_product_commutes(a, b):
    x, y = Jet.of(a, ORDER), Jet.of(b, ORDER)
    assert x * y == y * x


@given(coefficients, coefficients, coefficients)
def test_product_distributes(a, b, c):
    x, y, z = Jet.of(a, ORDER), Jet.of(b, ORDER), Jet.of(c, ORDER)
    assert x * (y + z) == x * y + x * z


@given(units)
def test_unit_inverse_is_inverse(a):
    x = Jet.of(a, ORDER)
    assert x * jet_unit_inverse(x) == Jet.one(ORDER)


@given(coefficients, coefficients)
def test_valuation_of_product_is_additive(a, b):
    x, y = Jet.of(a, ORDER), Jet.of(b, ORDER)
    assert valuation(x * y) == min(valuation(x) + valuation(y), ORDER)


def test_series_view_truncates():
    assert Jet.from_series(T**7 + 2 * T + 1, 4) == Jet.of([1, 2], 4)
    assert Jet.from_series(Jet.of([0, 3, 0, 1], 4).series, 4) == Jet.of([0, 3, 0, 1], 4)
    assert not Jet.zero(3).series


@pytest.mark.parametrize(
    "coeffs, order, expected",
    [
        ([2, 5], 1, [Fraction(1, 2)]),
        ([2, 5], 2, [Fraction(1, 2), Fraction(-5, 4)]),
        ([1, -2, 1], 5, [1, 2, 3, 4, 5]),
    ],
)
def test_inverse_at_small_orders(coeffs, order, expected):
    assert jet_unit_inverse(Jet.of(coeffs, order)) == Jet.of(expected, order)


@given(coefficients)
def test_scale_matches_constant_product(a):
    x = Jet.of(a, ORDER)
    assert x.scale(Fraction(-3, 2)) == x * Jet.constant(Fraction(-3, 2), ORDER)
