"""Exact rational scalars, q-numbers and generic parameter points."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from gmpy2 import mpq

Scalar = type(mpq())

ZERO = mpq(0)
ONE = mpq(1)

# numerators/denominators of sampled generic points
SAMPLE_LO = 2
SAMPLE_HI = 10**6


def to_scalar(x) -> Scalar:
    """Coerce ints, Fractions, gmpy2 numbers and "p/q" strings to a Scalar."""
    if type(x) is Scalar:
        return x
    if isinstance(x, str):
        s = x.strip()
        if not s:
            raise ValueError("empty scalar literal")
        try:
            return mpq(s)
        except ValueError:
            raise ValueError(f"malformed scalar literal {x!r}") from None
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a 'p/q' string or Fraction")
    return mpq(x)


def format_scalar(x) -> str:
    """Serialise as "p/q" in lowest terms (denominator always written)."""
    x = to_scalar(x)
    return f"{x.numerator}/{x.denominator}"


def q_int(k: int, q) -> Scalar:
    """The q-number (q^k - q^-k)/(q - q^-1); equals k at q = +-1."""
    q = to_scalar(q)
    if q == 0:
        raise ValueError("q must be nonzero")
    if q == 1:
        return mpq(k)
    if q == -1:
        # the formula has a removable singularity; follow the involutive convention
        return mpq(k)
    return (q**k - q ** (-k)) / (q - 1 / q)


def is_generic(q, bound: int) -> bool:
    """True if q^k != 1 for 1 <= k <= bound."""
    q = to_scalar(q)
    if q == 0:
        return False
    p = ONE
    for _ in range(bound):
        p = p * q
        if p == 1:
            return False
    return True


@dataclass(frozen=True, order=True)
class ParamPoint:
    """A registered spectral parameter value.  Points are ordered by id."""

    id: int
    value: Scalar

    def __repr__(self):
        return f"ParamPoint({self.id}, {format_scalar(self.value)})"


class PointRegistry:
    """Hands out points with increasing ids; distinct ids carry distinct values."""

    def __init__(self):
        self._by_value: dict[Scalar, ParamPoint] = {}
        self._points: list[ParamPoint] = []

    def point(self, value) -> ParamPoint:
        value = to_scalar(value)
        p = self._by_value.get(value)
        if p is None:
            p = ParamPoint(len(self._points), value)
            self._by_value[value] = p
            self._points.append(p)
        return p

    def __getitem__(self, pid: int) -> ParamPoint:
        return self._points[pid]

    def __len__(self):
        return len(self._points)

    def __iter__(self):
        return iter(self._points)


def random_scalar(rng: random.Random, signed: bool = False) -> Scalar:
    x = mpq(rng.randint(SAMPLE_LO, SAMPLE_HI), rng.randint(SAMPLE_LO, SAMPLE_HI))
    if signed and rng.random() < 0.5:
        x = -x
    return x


def sample_values(count: int, rng: random.Random, forbidden=(), signed: bool = False) -> list[Scalar]:
    banned = {to_scalar(f) for f in forbidden}
    out: list[Scalar] = []
    while len(out) < count:
        x = random_scalar(rng, signed)
        if x in banned or x in out:
            continue
        out.append(x)
    return out


def sample_params(count: int, seed: int, forbidden=(), registry: PointRegistry | None = None) -> list[ParamPoint]:
    """Deterministic pairwise-distinct generic points avoiding ``forbidden``."""
    if count < 1:
        raise ValueError("count must be >= 1")
    if registry is None:
        registry = PointRegistry()
    rng = random.Random(seed)
    taken = {p.value for p in registry}
    values = sample_values(count, rng, set(forbidden) | taken)
    return [registry.point(v) for v in values]


__all__ = [
    "Scalar",
    "ZERO",
    "ONE",
    "to_scalar",
    "format_scalar",
    "q_int",
    "is_generic",
    "ParamPoint",
    "PointRegistry",
    "random_scalar",
    "sample_values",
    "sample_params",
]
