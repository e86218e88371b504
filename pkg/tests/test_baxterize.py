import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from recenters.baxterize import (
    RATIONAL,
    TRIGONOMETRIC,
    CurrentR,
    PoleError,
    SingularShiftError,
    check_qybe,
    current_inverse,
    equal_denominator_check,
    eval_current,
    parse_flavor,
    random_triples,
    shift_function,
)
from recenters.scalars import Scalar, random_scalar, to_scalar
from recenters.symmetry import from_name, make_dj
from recenters.tensor import identity

HECKE_BASES = ["dj:2:2", "dj:2:3/2", "qsuper:1|1:2"]
INVOLUTIVE_BASES = ["flip:2", "superflip:1|1"]
pos = st.fractions(min_value=0, max_value=50, max_denominator=97).filter(lambda x: x not in (0, 1)).map(to_scalar)


@pytest.mark.parametrize("name", HECKE_BASES)
def test_qybe_trig(name):
    fam = CurrentR(from_name(name), TRIGONOMETRIC)
    assert check_qybe(fam, random_triples(5, 1)).is_zero()


@pytest.mark.parametrize("name", INVOLUTIVE_BASES)
def test_qybe_rational(name):
    fam = CurrentR(from_name(name), RATIONAL)
    assert check_qybe(fam, random_triples(5, 2)).is_zero()


def test_qybe_negative_control():
    b = from_name("flip:2")

    def corrupted(u, v):
        return b.R + identity(2, 2) * (1 / (u - v) ** 2)

    assert not check_qybe(corrupted, random_triples(3, 3)).is_zero()


def test_pole_errors():
    fam = CurrentR(make_dj(2, 2), TRIGONOMETRIC)
    with pytest.raises(PoleError):
        eval_current(fam, 3, 3)
    with pytest.raises(PoleError):
        CurrentR(from_name("flip:2"), RATIONAL)(2, 2)


def test_rational_unit_shift():
    b = from_name("flip:2")
    assert eval_current(CurrentR(b, RATIONAL), 5, 4) == b.R + identity(2, 2)


def test_flavor_mismatch():
    with pytest.raises(ValueError):
        CurrentR(from_name("flip:2"), TRIGONOMETRIC)
    with pytest.raises(ValueError):
        CurrentR(make_dj(2, 2), RATIONAL)
    with pytest.raises(ValueError):
        parse_flavor("elliptic")


@given(pos)
def test_f_plus_f_inverse(x):
    b = make_dj(2, 2)
    assert shift_function(b, TRIGONOMETRIC, x) + shift_function(b, TRIGONOMETRIC, 1 / x) == -b.lam


@given(pos)
def test_product_with_inverse_shift(x):
    b = make_dj(2, "3/2")
    f = shift_function(b, TRIGONOMETRIC, x)
    I = identity(2, 2)
    assert (b.R + I * f) @ (b.R_inv - I * f) == I * (1 - f * (f + b.lam))


def test_current_inverse_examples():
    b = make_dj(2, 2)
    assert current_inverse(b, 0) == b.R_inv
    g = Scalar(1, 3)
    I = identity(2, 2)
    assert (b.R + I * g) @ current_inverse(b, g) == I
    rng = random.Random(5)
    for _ in range(5):
        g = random_scalar(rng, signed=True)
        assert (b.R + I * g) @ current_inverse(b, g) == I
    with pytest.raises(SingularShiftError):
        current_inverse(from_name("flip:2"), 1)


def test_equal_denominator():
    b = make_dj(2, 2)
    assert equal_denominator_check(b, 3, 5) == (0, 0)
    lam = b.lam
    assert lam * lam * 15 / 4 == Scalar(135, 16)
    rng = random.Random(9)
    for _ in range(5):
        q = random_scalar(rng) + 2
        bb = make_dj(2, q)
        u, v = random_scalar(rng), random_scalar(rng)
        assert equal_denominator_check(bb, u, v) == (0, 0)
        assert equal_denominator_check(bb, v, u) == (0, 0)
    with pytest.raises(PoleError):
        equal_denominator_check(b, 2, 2)
