"""RS-type and generalized RE algebras, quantum powers and centrality checks.

The defining relation at points (u, v) is

    (R + g1 I) L1(u) (R + g2 I) L1(v) = L1(v) (R + g3 I) L1(u) (R + g4 I).

Spectral arithmetic is multiplicative (u/v, c*u) in the trigonometric
flavor and additive (u - v, u + c) in the rational one.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import linalg
from .baxterize import RATIONAL, TRIGONOMETRIC, PoleError, default_flavor, parse_flavor, shift_function
from .nc import (
    NCMatrix,
    NCPoly,
    RuleSet,
    SpecialParameterError,
    exchange_system,
    generating_matrix,
    leg1,
    normal_order,
    reverse_exchange_matrix,
    confluence_defects,
)
from .scalars import ONE, ZERO, ParamPoint, PointRegistry, random_scalar, to_scalar
from .symmetry import HECKE, INVOLUTIVE, Braiding, r_trace
from .tensor import TensorOp, identity

RS = "rs"
GENERAL = "general"

GFunc = Callable[[object, object], object]


class AlgebraSpec:
    """A generalized RE algebra over a braiding.

    RS mode derives g1..g4 from the Baxterization function and the charge.
    General mode takes four callables (u, v) -> Scalar; its charge only
    enters quantum powers.
    """

    def __init__(self, braiding: Braiding, flavor: str | None = None, charge=None, gs: Sequence[GFunc] | None = None):
        self.braiding = braiding
        self.flavor = default_flavor(braiding) if flavor is None else parse_flavor(flavor)
        if self.flavor == RATIONAL and braiding.kind != INVOLUTIVE:
            raise ValueError("the rational flavor needs an involutive base")
        if self.flavor == TRIGONOMETRIC and braiding.kind != HECKE:
            raise ValueError("the trigonometric flavor needs a Hecke base")
        if charge is None:
            charge = ONE
        self.charge = to_scalar(charge)
        if self.flavor == TRIGONOMETRIC and self.charge == 0:
            raise ValueError("a multiplicative charge must be nonzero")
        if gs is None:
            self.mode = RS
            self._gs = None
        else:
            if len(gs) != 4:
                raise ValueError("general mode needs exactly four functions g1..g4")
            self.mode = GENERAL
            self._gs = tuple(gs)

    @property
    def N(self) -> int:
        return self.braiding.N

    @property
    def multiplicative(self) -> bool:
        return self.flavor == TRIGONOMETRIC

    def ratio(self, u, v):
        """u/v or u - v."""
        u, v = to_scalar(u), to_scalar(v)
        if not self.multiplicative:
            return u - v
        if v == 0:
            raise PoleError("zero spectral parameter")
        return u / v

    def shift(self, x, times: int = 1):
        """c^times * x or x + times * c."""
        x = to_scalar(x)
        if self.multiplicative:
            return x * self.charge**times
        return x + times * self.charge

    def f(self, x):
        return shift_function(self.braiding, self.flavor, x)

    def alpha(self):
        return self.braiding.alpha

    def g(self, u, v) -> tuple:
        u, v = to_scalar(u), to_scalar(v)
        if self.mode == GENERAL:
            return tuple(to_scalar(fn(u, v)) for fn in self._gs)
        f, r = self.f, self.ratio
        return (f(r(u, v)), f(self.shift(r(v, u))), f(self.shift(r(u, v))), f(r(v, u)))

    def factors(self, u, v) -> tuple[TensorOp, TensorOp, TensorOp, TensorOp]:
        R = self.braiding.R
        I = identity(self.N, 2)
        return tuple(R + I * g for g in self.g(u, v))

    def current(self, x) -> TensorOp:
        """R + f(x) I at a ratio argument."""
        return self.braiding.R + identity(self.N, 2) * self.f(x)

    def g_functions(self) -> tuple:
        if self.mode == GENERAL:
            return self._gs
        return tuple((lambda u, v, i=i: self.g(u, v)[i]) for i in range(4))

    def swapped(self, first: bool = True, second: bool = False) -> "AlgebraSpec":
        """General-mode copy with (g1, g2) and/or (g3, g4) interchanged."""
        g1, g2, g3, g4 = self.g_functions()
        if first:
            g1, g2 = g2, g1
        if second:
            g3, g4 = g4, g3
        return AlgebraSpec(self.braiding, self.flavor, self.charge, gs=(g1, g2, g3, g4))

    def with_charge(self, charge) -> "AlgebraSpec":
        return AlgebraSpec(self.braiding, self.flavor, charge, gs=self._gs)

    def describe(self) -> str:
        return f"{self.braiding.name} {self.flavor} {self.mode} c={self.charge}"

    def __repr__(self):
        return f"AlgebraSpec({self.describe()})"


def critical_charge(b: Braiding, flavor: str | None = None):
    """q^(2(m-n)) for the trigonometric flavor, n - m for the rational one."""
    flavor = default_flavor(b) if flavor is None else parse_flavor(flavor)
    m, n = b.birank
    if flavor == TRIGONOMETRIC:
        if b.kind != HECKE:
            raise ValueError("the trigonometric flavor needs a Hecke base")
        return b.q ** (2 * (m - n))
    if b.kind != INVOLUTIVE:
        raise ValueError("the rational flavor needs an involutive base")
    return to_scalar(n - m)


def centrality_condition(spec: AlgebraSpec, u, v) -> tuple:
    """(lam + g1 + g2 + a g1 g2, lam + g3 + g4 + a g3 g4)."""
    g1, g2, g3, g4 = spec.g(u, v)
    lam = spec.braiding.lam
    a = spec.alpha()
    return lam + g1 + g2 + a * g1 * g2, lam + g3 + g4 + a * g3 * g4


# --- sessions: one point registry and rule cache per check ------------------


class Session:
    """Point registry plus lazily built rewrite rules for one spec."""

    def __init__(self, spec: AlgebraSpec):
        self.spec = spec
        self.registry = PointRegistry()
        self.rules = RuleSet(spec, self.registry)

    def point(self, value) -> ParamPoint:
        return self.registry.point(to_scalar(value))

    def L(self, p: ParamPoint) -> NCMatrix:
        return generating_matrix(self.spec.N, p.id)

    def normal(self, x, strategy: str = "first"):
        return normal_order(x, self.rules, strategy)


@dataclass
class QuantumPower:
    k: int
    base: ParamPoint
    points: list
    matrix: NCMatrix


def quantum_power(session: Session, u, k: int) -> QuantumPower:
    """L(c^(k-1) u) ... L(c u) L(u); points are registered left to right."""
    if k < 1:
        raise ValueError("k must be >= 1")
    spec = session.spec
    u = to_scalar(u.value if isinstance(u, ParamPoint) else u)
    values = [spec.shift(u, j) for j in range(k - 1, -1, -1)]
    if len(set(values)) != len(values) and len(set(values)) != 1:
        raise PoleError("colliding quantum-power points")
    points = [session.point(x) for x in values]
    M = session.L(points[0])
    for p in points[1:]:
        M = M @ session.L(p)
    return QuantumPower(k, points[-1], points, M)


def power_sum(session: Session, u, k: int) -> NCPoly:
    return r_trace(session.spec.braiding, quantum_power(session, u, k).matrix)


def rs_relation(session: Session, u: ParamPoint, v: ParamPoint) -> tuple[NCMatrix, NCMatrix]:
    """Both sides of the defining relation at (u, v) as N^2 x N^2 matrices."""
    spec = session.spec
    N = spec.N
    A, B, C, D = spec.factors(u.value, v.value)
    Lu, Lv = leg1(session.L(u), N), leg1(session.L(v), N)
    lhs = (Lu.mul_scalar_left(A).mul_scalar_right(B)) @ Lv
    rhs = Lv.mul_scalar_right(C) @ Lu.mul_scalar_right(D)
    return lhs, rhs


def _scalar_times(p: NCPoly, M: NCMatrix, left: bool) -> NCMatrix:
    if left:
        return M.map(lambda a: p * a)
    return M.map(lambda a: a * p)


def _commutator(p: NCPoly, M: NCMatrix) -> NCMatrix:
    """p M - M p entrywise."""
    return _scalar_times(p, M, True) - _scalar_times(p, M, False)


# --- centrality checks ------------------------------------------------------


def check_first_central(spec: AlgebraSpec, u, v, session: Session | None = None) -> NCMatrix:
    """Normal form of Tr_R L(u) L(v) - L(v) Tr_R L(u)."""
    s = session or Session(spec)
    pu, pv = s.point(u), s.point(v)
    t = r_trace(spec.braiding, s.L(pu))
    return s.normal(_commutator(t, s.L(pv)))


def check_push_through(spec: AlgebraSpec, k: int, u, v, session: Session | None = None) -> NCMatrix:
    """L[k]_1(v) R(uc/v) L_1(u) R(v/u) - R(u/c^(k-1)v) L_1(u) R(c^k v/u) L[k]_1(v)."""
    s = session or Session(spec)
    N = spec.N
    pu = s.point(u)
    qp = quantum_power(s, v, k)
    u, v = pu.value, qp.base.value
    r = spec.ratio
    Lu = leg1(s.L(pu), N)
    Lk = leg1(qp.matrix, N)
    lhs = (Lk.mul_scalar_right(spec.current(spec.shift(r(u, v)))) @ Lu).mul_scalar_right(spec.current(r(v, u)))
    left_arg = r(u, spec.shift(v, k - 1))
    right_arg = r(spec.shift(v, k), u)
    rhs = Lu.mul_scalar_left(spec.current(left_arg)).mul_scalar_right(spec.current(right_arg)) @ Lk
    return s.normal(lhs - rhs)


LINEAR = "linear"
QUADRATIC = "quadratic"


def commutator_coefficient(spec: AlgebraSpec, u, v, form: str = QUADRATIC):
    """Scalar multiplying L(u) L^k(v) - L^k(v) L(u) in the c = 1 identity.

    ``linear`` is a lam uv/(u-v)^2; ``quadratic`` is -a lam^2 uv/(u-v)^2,
    the one that makes the identity hold in the algebra.
    """
    u, v = to_scalar(u), to_scalar(v)
    if u == v:
        raise PoleError("u = v")
    a = spec.alpha()
    lam = spec.braiding.lam
    base = a * lam * u * v / (u - v) ** 2
    if form == LINEAR:
        return base
    if form == QUADRATIC:
        return -lam * base
    raise ValueError(f"unknown coefficient form {form!r}")


def commutator_identity_parts(spec: AlgebraSpec, k: int, u, v, session: Session | None = None):
    """Normal forms of [Tr_R L^k(v), L(u)] and L(u) L^k(v) - L^k(v) L(u)."""
    if spec.charge != (ONE if spec.multiplicative else ZERO):
        raise ValueError("the commutator identity needs the trivial charge")
    s = session or Session(spec)
    pu = s.point(u)
    qp = quantum_power(s, v, k)
    Lu = s.L(pu)
    t = r_trace(spec.braiding, qp.matrix)
    lhs = s.normal(_commutator(t, Lu))
    comm = s.normal(Lu @ qp.matrix - qp.matrix @ Lu)
    return lhs, comm


def check_commutator_identity(spec: AlgebraSpec, k: int, u, v, form: str = QUADRATIC, session: Session | None = None) -> NCMatrix:
    """Residual of [Tr_R L^k(v), L(u)] = (L(u) L^k(v) - L^k(v) L(u)) * coefficient."""
    lhs, comm = commutator_identity_parts(spec, k, u, v, session)
    return lhs - comm.scale(commutator_coefficient(spec, u, v, form))


def check_higher_central(spec: AlgebraSpec, k: int, u, v, session: Session | None = None) -> NCMatrix:
    """Normal form of Tr_R L[k](v) L(u) - L(u) Tr_R L[k](v)."""
    s = session or Session(spec)
    pu = s.point(u)
    qp = quantum_power(s, v, k)
    t = r_trace(spec.braiding, qp.matrix)
    return s.normal(_commutator(t, s.L(pu)))


# --- engine soundness -------------------------------------------------------


def rule_round_trip(session: Session, lo: ParamPoint, hi: ParamPoint) -> np.ndarray:
    """X Y - I for the forward rule X and the reverse-instance matrix Y."""
    X = session.rules.rule(lo.id, hi.id).X
    Y = reverse_exchange_matrix(session.spec, lo, hi, "hi_lo")
    return linalg.matmul(X, Y) - linalg.identity(X.shape[0])


def rule_substitution(session: Session, lo: ParamPoint, hi: ParamPoint) -> np.ndarray:
    """E_hl X - E_lh for the relation instance the rule was solved from."""
    X = session.rules.rule(lo.id, hi.id).X
    E_lh, E_hl = exchange_system(session.spec, lo, hi)
    return linalg.matmul(E_hl, X) - E_lh


def relation_membership(session: Session, u: ParamPoint, v: ParamPoint) -> NCMatrix:
    """Normal form of LHS - RHS of the relation instance at (u, v)."""
    lhs, rhs = rs_relation(session, u, v)
    return session.normal(lhs - rhs)


def confluence(session: Session, points: Sequence[ParamPoint], sample: int | None = None, seed: int = 0):
    """Confluence defects on words l(p3) l(p2) l(p1) for ids p1 < p2 < p3."""
    ids = sorted(p.id for p in points)
    if len(ids) != 3:
        raise ValueError("confluence needs three points")
    return confluence_defects(session.rules, *ids, sample=sample, seed=seed)


@dataclass
class SoundnessReport:
    round_trip: bool
    substitution: bool
    membership: bool
    confluent: bool
    confluence_words: int

    @property
    def ok(self) -> bool:
        return self.round_trip and self.substitution and self.membership and self.confluent


def engine_soundness(spec: AlgebraSpec, u, v, w, sample: int | None = None, seed: int = 0) -> SoundnessReport:
    """Round trip, substitution and membership for each pair, confluence on the triple."""
    s = Session(spec)
    pts = [s.point(x) for x in (u, v, w)]
    pts.sort(key=lambda p: p.id)
    rt = sub = mem = True
    for i in range(3):
        for j in range(i + 1, 3):
            lo, hi = pts[i], pts[j]
            rt &= linalg.is_zero(rule_round_trip(s, lo, hi))
            sub &= linalg.is_zero(rule_substitution(s, lo, hi))
            mem &= relation_membership(s, lo, hi).is_zero()
            mem &= relation_membership(s, hi, lo).is_zero()
    bad, count = confluence(s, pts, sample=sample, seed=seed)
    return SoundnessReport(rt, sub, mem, not bad, count)


# --- sampling ---------------------------------------------------------------


def generic_points(spec: AlgebraSpec, count: int, rng: random.Random, k: int = 1) -> list:
    """``count`` distinct values avoiding coincidences up to k charge shifts."""
    out: list = []
    span = range(-k - 1, k + 2)
    while len(out) < count:
        x = random_scalar(rng)
        shifts = {spec.shift(x, j) for j in span}
        if not any(y in shifts for y in out):
            out.append(x)
    return out


RESAMPLE_ATTEMPTS = 3


def resampled(fn, spec: AlgebraSpec, count: int, seed: int, k: int = 1, attempts: int = RESAMPLE_ATTEMPTS):
    """Call fn(*points); redraw points after a pole or a singular system."""
    rng = random.Random(seed)
    last = None
    for _ in range(attempts):
        pts = generic_points(spec, count, rng, k)
        try:
            return pts, fn(*pts)
        except (PoleError, SpecialParameterError, ZeroDivisionError) as exc:
            last = exc
    raise SpecialParameterError(f"no regular points after {attempts} attempts: {last}")


def random_noncritical_charge(b: Braiding, flavor: str, rng: random.Random):
    crit = critical_charge(b, flavor)
    while True:
        c = random_scalar(rng, signed=(parse_flavor(flavor) == RATIONAL))
        if c not in (crit, ONE, ZERO):
            return c


__all__ = [
    "RS",
    "GENERAL",
    "LINEAR",
    "QUADRATIC",
    "AlgebraSpec",
    "QuantumPower",
    "Session",
    "SoundnessReport",
    "critical_charge",
    "centrality_condition",
    "quantum_power",
    "power_sum",
    "rs_relation",
    "check_first_central",
    "check_push_through",
    "commutator_coefficient",
    "commutator_identity_parts",
    "check_commutator_identity",
    "check_higher_central",
    "rule_round_trip",
    "rule_substitution",
    "relation_membership",
    "confluence",
    "engine_soundness",
    "generic_points",
    "resampled",
    "random_noncritical_charge",
]
