"""Current R-matrices R + f(x) I obtained from symmetries.

Rational flavor (involutive base): f(x) = a / x with x = u - v.
Trigonometric flavor (Hecke base): f(x) = -(q - q^-1) x / (x - 1) with x = u / v.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

from .scalars import ONE, random_scalar, to_scalar
from .symmetry import HECKE, INVOLUTIVE, Braiding
from .tensor import TensorOp, embed_leg, identity

RATIONAL = "rational"
TRIGONOMETRIC = "trigonometric"

_FLAVOR_ALIASES = {"rational": RATIONAL, "rat": RATIONAL, "trigonometric": TRIGONOMETRIC, "trig": TRIGONOMETRIC}


class PoleError(ZeroDivisionError):
    """A spectral argument hit a pole of the current R-matrix."""


class SingularShiftError(ZeroDivisionError):
    """R + g I is not invertible for this g."""


def parse_flavor(name: str) -> str:
    try:
        return _FLAVOR_ALIASES[name.lower()]
    except KeyError:
        raise ValueError(f"unknown flavor {name!r}") from None


def default_flavor(b: Braiding) -> str:
    return RATIONAL if b.kind == INVOLUTIVE else TRIGONOMETRIC


@dataclass(frozen=True)
class CurrentR:
    base: Braiding
    flavor: str
    shift: object = ONE

    def __post_init__(self):
        if self.flavor == RATIONAL and self.base.kind != INVOLUTIVE:
            raise ValueError("the rational flavor needs an involutive base")
        if self.flavor == TRIGONOMETRIC and self.base.kind != HECKE:
            raise ValueError("the trigonometric flavor needs a Hecke base")
        if self.flavor not in (RATIONAL, TRIGONOMETRIC):
            raise ValueError(f"unknown flavor {self.flavor!r}")

    def arg(self, u, v):
        u, v = to_scalar(u), to_scalar(v)
        if self.flavor == RATIONAL:
            return u - v
        if v == 0:
            raise PoleError("v = 0")
        return u / v

    def f(self, x):
        return shift_function(self.base, self.flavor, x, self.shift)

    def at_arg(self, x) -> TensorOp:
        """R + f(x) I."""
        return self.base.R + identity(self.base.N, 2) * self.f(x)

    def __call__(self, u, v) -> TensorOp:
        return self.at_arg(self.arg(u, v))


def shift_function(b: Braiding, flavor: str, x, a=ONE):
    x = to_scalar(x)
    if flavor == RATIONAL:
        if x == 0:
            raise PoleError("f(x) = a/x has a pole at x = 0")
        return to_scalar(a) / x
    if x == 1:
        raise PoleError("f(x) has a pole at x = 1")
    return -b.lam * x / (x - 1)


def eval_current(cr: CurrentR, u, v) -> TensorOp:
    return cr(u, v)


def qybe_residual(family: Callable, u, v, w) -> TensorOp:
    """R12(u,v) R23(u,w) R12(v,w) - R23(v,w) R12(u,w) R23(u,v)."""
    def r12(a, b):
        return embed_leg(family(a, b), 1, 3)

    def r23(a, b):
        return embed_leg(family(a, b), 2, 3)

    return r12(u, v) @ r23(u, w) @ r12(v, w) - r23(v, w) @ r12(u, w) @ r23(u, v)


def random_triples(count: int, seed: int):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        t = tuple(random_scalar(rng) for _ in range(3))
        if len(set(t)) == 3:
            out.append(t)
    return out


def check_qybe(family: Callable, triples, seed: int = 0) -> TensorOp:
    """Worst (most nonzero entries) residual over the triples.

    Triples that hit a pole are replaced by fresh random ones.
    """
    rng = random.Random(seed)
    worst = None
    for t in triples:
        while True:
            try:
                res = qybe_residual(family, *t)
                break
            except PoleError:
                t = tuple(random_scalar(rng) for _ in range(3))
        if worst is None or res.nonzero_count() > worst.nonzero_count():
            worst = res
    return worst


def current_inverse(b: Braiding, g) -> TensorOp:
    """(R + g I)^-1 = (R^-1 - g I) / (1 - g (g + q - q^-1))."""
    g = to_scalar(g)
    den = 1 - g * (g + b.lam)
    if den == 0:
        raise SingularShiftError(f"R + gI is singular at g = {g}")
    return (b.R_inv - identity(b.N, 2) * g) * (1 / den)


def equal_denominator_check(b: Braiding, u, v) -> tuple:
    """f(u/v)(f(u/v)+lam) and f(v/u)(f(v/u)+lam) minus lam^2 uv/(u-v)^2."""
    u, v = to_scalar(u), to_scalar(v)
    if u == v or u == 0 or v == 0:
        raise PoleError("need distinct nonzero u, v")
    lam = b.lam
    target = lam * lam * u * v / (u - v) ** 2
    f1 = shift_function(b, TRIGONOMETRIC, u / v)
    f2 = shift_function(b, TRIGONOMETRIC, v / u)
    return f1 * (f1 + lam) - target, f2 * (f2 + lam) - target


__all__ = [
    "RATIONAL",
    "TRIGONOMETRIC",
    "PoleError",
    "SingularShiftError",
    "CurrentR",
    "parse_flavor",
    "default_flavor",
    "shift_function",
    "eval_current",
    "qybe_residual",
    "check_qybe",
    "random_triples",
    "current_inverse",
    "equal_denominator_check",
]
