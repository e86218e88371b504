from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from recenters.scalars import (
    ONE,
    ZERO,
    PointRegistry,
    Scalar,
    format_scalar,
    is_generic,
    q_int,
    sample_params,
    to_scalar,
)

rationals = st.fractions(max_denominator=10**6).map(to_scalar)
nonzero_q = st.fractions(min_value=Fraction(-50), max_value=Fraction(50), max_denominator=50).filter(
    lambda x: x not in (0, 1, -1)
).map(to_scalar)


def test_to_scalar_forms():
    assert to_scalar("3/6") == Scalar(1, 2)
    assert to_scalar(Fraction(-4, 6)) == Scalar(-2, 3)
    assert to_scalar(7) == 7
    with pytest.raises(TypeError):
        to_scalar(0.5)
    with pytest.raises(ValueError):
        to_scalar("1/x")


def test_format_lowest_terms():
    assert format_scalar("6/4") == "3/2"
    assert format_scalar(-3) == "-3/1"
    assert format_scalar("2/-4") == "-1/2"


def test_q_int_examples():
    assert q_int(1, "3/7") == 1
    assert q_int(0, 2) == 0
    assert q_int(2, 2) == Scalar(5, 2)
    assert q_int(5, 1) == 5
    assert q_int(-3, 1) == -3
    with pytest.raises(ValueError):
        q_int(2, 0)


@given(st.integers(-10, 10), nonzero_q)
def test_q_int_formula(k, q):
    assert q_int(k, q) * (q - 1 / q) == q**k - q ** (-k)


@given(rationals, rationals, rationals)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


def test_is_generic():
    assert is_generic(2, 10)
    assert not is_generic(-1, 4)
    assert not is_generic(0, 4)


def test_sample_params_deterministic_and_distinct():
    a = sample_params(3, 11)
    b = sample_params(3, 11)
    assert [p.value for p in a] == [p.value for p in b]
    assert len({p.value for p in a}) == 3
    assert [p.id for p in a] == [0, 1, 2]
    assert all(p.value != 0 for p in sample_params(3, 5, {ZERO}))


def test_sample_params_seed_spread():
    sets = {tuple(p.value for p in sample_params(2, s)) for s in range(100)}
    assert len(sets) == 100


def test_sample_params_bounds():
    for p in sample_params(20, 3):
        assert 0 < p.value.numerator <= 10**6
        assert 0 < p.value.denominator <= 10**6


def test_sample_params_forbidden_respected():
    first = sample_params(1, 4)[0].value
    again = sample_params(1, 4, {first})[0].value
    assert again != first


def test_registry_reuses_values():
    reg = PointRegistry()
    p = reg.point("1/2")
    assert reg.point(Fraction(1, 2)) is p
    q = reg.point(ONE)
    assert (p.id, q.id) == (0, 1) and len(reg) == 2 and list(reg) == [p, q]
    assert reg[1] is q and p < q
