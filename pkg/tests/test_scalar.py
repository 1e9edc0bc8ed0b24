from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ietgroups.scalar import (
    A,
    Qa,
    a_bracket,
    decode_scalar,
    encode_scalar,
    enclosure,
    floor,
    format_scalar,
    parse_scalar,
    qa,
    sign,
    to_decimal,
)

from conftest import rationals

scalars = st.builds(qa, rationals, rationals, rationals)
nonzero = scalars.filter(lambda x: x != 0)


def test_cube_rewrites():
    assert A * A**2 == qa(1, -1, -1)
    assert A**3 + A**2 + A == 1
    assert A**4 == 2 * A - 1


def test_rational_normalisation():
    assert F(1, 2) + F(1, 2) == 1
    x = (A / 2) * 2 - A
    assert x == 0 and isinstance(x, F)
    assert isinstance(qa(3, 0, 0), F)
    with pytest.raises(ValueError):
        Qa(1, 0, 0)


def test_compare_examples():
    assert A > F(1, 2)
    assert A < F(3, 5)
    assert A == A and not (A < A)


def test_bracket_starts_valid():
    p = lambda x: x**3 + x**2 + x - 1
    assert p(F(1, 2)) == F(-1, 8)
    assert p(F(3, 5)) == F(22, 125)
    for depth in (0, 1, 10, 100):
        lo, hi = a_bracket(depth)
        assert p(lo) < 0 < p(hi)
        assert lo < A < hi


def test_division_and_zero():
    assert (1 / A) * A == 1
    assert 1 / A == 1 + A + A**2
    with pytest.raises(ZeroDivisionError):
        A / (A - A)


def test_decimal_value():
    # a = 0.5436890126920763615708559718...
    assert str(to_decimal(A, 25)) == "0.5436890126920763615708560"
    assert float(A) == pytest.approx(0.5436890126920764)


def test_floor_examples():
    assert floor(A) == 0
    assert floor(-A) == -1
    assert floor(100 * A) == 54
    assert floor(F(-7, 2)) == -4


def test_json_roundtrip_examples():
    assert encode_scalar(F(3, 10)) == {"Q": "3/10"}
    assert encode_scalar(qa(F(1, 2), F(-1, 2))) == {"Qa": ["1/2", "-1/2", "0"]}
    assert decode_scalar({"Qa": ["1/2", "-1/2", "0"]}) == (1 - A) / 2
    assert decode_scalar({"Qa": ["1", "0", "0"]}) == 1
    assert decode_scalar({"Q": "3/10", "decimal": "0.3"}) == F(3, 10)
    for bad in ({"R": "1"}, {"Qa": ["1"]}, True, [1]):
        with pytest.raises(ValueError):
            decode_scalar(bad)


def test_format_and_parse():
    assert format_scalar((1 - A) / 2) == "1/2 - 1/2*a"
    assert format_scalar(A**2) == "a^2"
    assert parse_scalar("3/7") == F(3, 7)
    assert parse_scalar('{"Qa": ["0", "1", "0"]}') == A


@given(scalars, scalars, scalars)
def test_field_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + y == y + x and x * y == y * x
    assert x - x == 0


@given(nonzero)
def test_inverse(x):
    assert x * (1 / x) == 1


@given(scalars, scalars, scalars)
def test_order_compatible_with_addition(x, y, z):
    if x < y:
        assert x + z < y + z
    assert (x < y) + (x == y) + (x > y) == 1


@given(nonzero, nonzero)
def test_order_compatible_with_multiplication(x, y):
    assert sign(x * y) == sign(x) * sign(y)


@given(scalars)
def test_sign_agrees_with_enclosure(x):
    lo, hi = enclosure(x, F(1, 10**12))
    assert lo <= hi and hi - lo <= F(1, 10**12)
    if x != 0:
        assert (lo > 0) == (sign(x) > 0) or lo <= 0 <= hi
        if sign(x) > 0:
            assert hi > 0
        else:
            assert lo < 0


@given(scalars)
def test_floor_bracket(x):
    n = floor(x)
    assert n <= x < n + 1


@given(scalars)
def test_json_roundtrip(x):
    assert decode_scalar(encode_scalar(x)) == x
