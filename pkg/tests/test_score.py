from __future__ import annotations

import ast
import builtins
import math
from decimal import Decimal
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import ipaths.score as score_mod
from ipaths.score import ExactScore, Ordering, approx_decimal, compare, factorize

PRIMES = [2, 3, 5, 7, 11, 13, 97, 101]

factored = st.dictionaries(st.sampled_from(PRIMES), st.integers(0, 60), max_size=4).map(ExactScore)


def test_factorize_small():
    assert factorize(1) == ()
    assert factorize(720) == ((2, 4), (3, 2), (5, 1))
    assert factorize(97) == ((97, 1),)


def test_constructors_and_rendering():
    s = ExactScore.from_int(720) * ExactScore.power(7, 3)
    assert str(s) == "2^4 * 3^2 * 5^1 * 7^3"
    assert s.materialize() == 720 * 343
    assert str(ExactScore.one()) == "1"
    assert ExactScore.one().materialize() == 1
    assert ExactScore({2: 0, 3: 1}) == ExactScore.from_int(3)


def test_constructor_rejects_bad_input():
    with pytest.raises(ValueError):
        ExactScore({4: 1})
    with pytest.raises(ValueError):
        ExactScore({2: -1})
    with pytest.raises(ValueError):
        ExactScore.power(3, -2)


@pytest.mark.parametrize("text", ["", "2", "3^1 * 2^1", "2^0", "x^2", "2^1 *"])
def test_parse_rejects_noncanonical(text):
    with pytest.raises(ValueError):
        ExactScore.parse(text)


def test_compare_cancels_common_factors():
    big = ExactScore.power(7, 10_000)
    a = big * ExactScore.from_int(8)
    b = big * ExactScore.from_int(9)
    assert compare(a, b) is Ordering.LESS
    assert compare(b, a) is Ordering.GREATER
    assert compare(a, a) is Ordering.EQUAL
    assert a < b and b >= a and a <= a


def test_compare_needs_no_materialisation_of_giant_values():
    # 2^10000 vs 3^6310: log2(3) * 6310 = 10001.1...
    assert compare(ExactScore.power(2, 10_000), ExactScore.power(3, 6310)) is Ordering.LESS
    assert compare(ExactScore.power(2, 10_002), ExactScore.power(3, 6310)) is Ordering.GREATER


@pytest.mark.parametrize(
    "s, digits, expected",
    [
        (ExactScore.one(), 4, "0.000"),
        (ExactScore.power(2, 5), 3, "5.00"),
        (ExactScore.from_int(3), 10, "1.584962501"),
        (ExactScore.from_int(720), 6, "9.49185"),
        (ExactScore.from_int(1023), 4, "9.999"),
        (ExactScore.from_int(1025), 3, "10.0"),
    ],
)
def test_approx_decimal_known_values(s, digits, expected):
    assert approx_decimal(s, digits) == expected


def test_approx_decimal_rejects_zero_digits():
    with pytest.raises(ValueError):
        approx_decimal(ExactScore.from_int(3), 0)


def test_score_module_is_float_free():
    tree = ast.parse(Path(score_mod.__file__).read_text())
    for node in ast.walk(tree):
        assert not (isinstance(node, ast.Constant) and isinstance(node.value, float))
        assert not (isinstance(node, ast.Name) and node.id == "float")
        if isinstance(node, (ast.Import, ast.ImportFrom)):
            names = [a.name for a in node.names] + [getattr(node, "module", None)]
            assert "math" not in names


@given(factored, factored)
def test_str_parse_roundtrip_and_multiplication(a, b):
    assert ExactScore.parse(str(a)) == a
    assert (a * b).materialize() == a.materialize() * b.materialize()
    assert (a**3).materialize() == a.materialize() ** 3


@given(factored, factored)
def test_compare_matches_materialised_integers(a, b):
    x, y = a.materialize(), b.materialize()
    assert compare(a, b) == Ordering((x > y) - (x < y))


@settings(max_examples=60)
@given(factored, st.integers(1, 25))
def test_approx_decimal_is_certified(a, digits):
    # a correctly rounded log2 lies within half a unit of the last printed digit
    text = approx_decimal(a, digits)
    got = Decimal(text)
    exact = math.log2(a.materialize()) if a.materialize() < 2**1000 else None
    if exact is not None and digits <= 12:
        ulp = Decimal(1).scaleb(got.adjusted() - digits + 1) if got else Decimal(1).scaleb(1 - digits)
        assert abs(Decimal(exact) - got) <= ulp


def test_compare_runs_without_float(monkeypatch):
    def boom(*_a, **_k):
        raise AssertionError("float used")

    monkeypatch.setattr(builtins, "float", boom)
    a = ExactScore({2: 9000, 101: 17})
    b = ExactScore({3: 5000, 97: 300})
    assert compare(a, b) in (Ordering.LESS, Ordering.GREATER)
    approx_decimal(a, 30)
