"""Involutive and Hecke symmetries, skew-inverse data and R-traces."""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import linalg
from .nc import NCMatrix, PointRegistry, generating_matrix, leg1, partial_trace2_weighted, trace_weighted
from .scalars import ONE, ZERO, format_scalar, is_generic, q_int, to_scalar
from .tensor import TensorOp, embed_leg, flip, identity, partial_trace, partial_trace_weighted

INVOLUTIVE = "involutive"
HECKE = "hecke"


class BraidingError(ValueError):
    pass


class NotSkewInvertibleError(BraidingError):
    pass


def check_braid(R: TensorOp) -> TensorOp:
    """R12 R23 R12 - R23 R12 R23 on three legs."""
    if R.legs != 2:
        raise ValueError("braid check needs a 2-leg operator")
    R12 = embed_leg(R, 1, 3)
    R23 = embed_leg(R, 2, 3)
    return R12 @ R23 @ R12 - R23 @ R12 @ R23


def check_kind(R: TensorOp, kind: str, q=ONE) -> TensorOp:
    """Minimal-polynomial residual: R^2 - I, or (R - qI)(R + q^-1 I)."""
    I = identity(R.dim, 2)
    if kind == INVOLUTIVE:
        return R @ R - I
    if kind == HECKE:
        q = to_scalar(q)
        return (R - I * q) @ (R + I * (1 / q))
    raise ValueError(f"unknown kind {kind!r}")


@dataclass(frozen=True)
class SkewData:
    psi: TensorOp
    B: TensorOp
    C: TensorOp


def skew_inverse(R: TensorOp) -> SkewData:
    """Solve sum_{a,y} R[(i,a),(j,y)] Psi[(y,k),(a,l)] = delta_il delta_kj."""
    N = R.dim
    R4 = R.as_tensor()  # R4[i, a, j, y]
    n4 = N**4
    M = linalg.zeros(n4)
    rhs = linalg.zeros(n4, 1)
    # equation index (i, j, k, l); unknown index (y, k, a, l) = Psi entry
    for i in range(N):
        for j in range(N):
            for a in range(N):
                for y in range(N):
                    c = R4[i, a, j, y]
                    if not c:
                        continue
                    for k in range(N):
                        for l in range(N):
                            M[((i * N + j) * N + k) * N + l, ((y * N + k) * N + a) * N + l] += c
    for i in range(N):
        for k in range(N):
            rhs[((i * N + k) * N + k) * N + i, 0] = ONE
    try:
        x = linalg.solve(M, rhs)
    except linalg.SingularMatrixError:
        raise NotSkewInvertibleError("not skew-invertible") from None
    psi = TensorOp(np.ascontiguousarray(x.reshape(N * N, N * N)), N, 2)
    B = partial_trace(psi, 1)
    C = partial_trace(psi, 2)
    return SkewData(psi, B, C)


class Braiding:
    """A verified involutive or Hecke symmetry on V (x) V, dim V = N."""

    def __init__(self, R: TensorOp, kind: str, q=ONE, name: str | None = None, verify: bool = True):
        if R.legs != 2:
            raise BraidingError("a braiding is a 2-leg operator")
        self.R = R
        self.N = R.dim
        self.kind = kind
        self.q = ONE if kind == INVOLUTIVE else to_scalar(q)
        self.name = name or "custom"
        if kind not in (INVOLUTIVE, HECKE):
            raise BraidingError(f"unknown kind {kind!r}")
        if kind == HECKE and not is_generic(self.q, 2 * self.N + 4):
            raise BraidingError(f"q = {format_scalar(self.q)} is not generic")
        if verify:
            if not check_braid(R).is_zero():
                raise BraidingError("braid relation fails")
            if not check_kind(R, kind, self.q).is_zero():
                raise BraidingError(f"{kind} relation fails")

    @property
    def lam(self):
        """q - q^-1 (zero for involutive symmetries)."""
        return ZERO if self.kind == INVOLUTIVE else self.q - 1 / self.q

    @cached_property
    def skew(self) -> SkewData:
        return skew_inverse(self.R)

    @property
    def C(self) -> TensorOp:
        return self.skew.C

    @property
    def B(self) -> TensorOp:
        return self.skew.B

    @cached_property
    def R_inv(self) -> TensorOp:
        # Hecke: R^-1 = R - (q - q^-1) I; involutive: R^-1 = R
        return self.R - identity(self.N, 2) * self.lam

    @cached_property
    def birank(self) -> tuple[int, int]:
        from .birank import compute_birank

        return compute_birank(self).pair

    @property
    def alpha(self):
        """q^(n-m) (m-n)_q for bi-rank (m|n); m - n when involutive."""
        m, n = self.birank
        return alpha_value(self.q, m, n)

    def __repr__(self):
        return f"Braiding({self.name}, N={self.N}, {self.kind}, q={format_scalar(self.q)})"


def alpha_value(q, m: int, n: int):
    q = to_scalar(q)
    return q ** (n - m) * q_int(m - n, q)


# --- traces -----------------------------------------------------------------


def r_trace(b: Braiding, A):
    """Tr(C . A) for an N x N matrix of Scalars, a TensorOp or an NCMatrix."""
    if isinstance(A, NCMatrix):
        return trace_weighted(A, b.C)
    A = A.mat if isinstance(A, TensorOp) else np.asarray(A, dtype=object)
    if A.shape != (b.N, b.N):
        raise ValueError("dimension mismatch")
    C = b.C.mat
    return sum((C[a, c] * A[c, a] for a in range(b.N) for c in range(b.N)), ZERO)


def r_trace2(b: Braiding, M):
    """Tr_R over the second leg: Tr_(2)(C_2 M)."""
    if isinstance(M, NCMatrix):
        return partial_trace2_weighted(M, b.C)
    return partial_trace_weighted(M, 2, b.C)


def verify_ogievetsky(b: Braiding, A: NCMatrix | None = None) -> tuple[NCMatrix, NCMatrix]:
    """Residuals of Tr_R(2) R A1 R^-1 = I Tr_R A and Tr_R(2) R^-1 A1 R = I Tr_R A."""
    N = b.N
    if A is None:
        A = generating_matrix(N, PointRegistry().point(1).id)
    A1 = leg1(A, N)
    expected = NCMatrix.zeros(N)
    t = r_trace(b, A)
    for i in range(N):
        expected[i, i] = t.copy()
    first = r_trace2(b, A1.mul_scalar_left(b.R).mul_scalar_right(b.R_inv))
    second = r_trace2(b, A1.mul_scalar_left(b.R_inv).mul_scalar_right(b.R))
    return first - expected, second - expected


# --- catalog ----------------------------------------------------------------


def _graded_matrix(m: int, n: int, q) -> TensorOp:
    N = m + n
    if N < 1 or m < 0 or n < 0:
        raise BraidingError("need m, n >= 0 with m + n >= 1")
    q = to_scalar(q)
    lam = q - 1 / q
    par = [0] * m + [1] * n
    M = linalg.zeros(N * N)
    for i in range(N):
        # e_i x e_i -> q e_i x e_i (even) or -q^-1 e_i x e_i (odd)
        M[i * N + i, i * N + i] = q if par[i] == 0 else -1 / q
        for j in range(N):
            if i == j:
                continue
            sign = -ONE if par[i] and par[j] else ONE
            M[j * N + i, i * N + j] = sign
            if i < j:
                M[i * N + j, i * N + j] = lam
    return TensorOp(M, N, 2)


def make_flip(N: int) -> Braiding:
    return Braiding(flip(N), INVOLUTIVE, name=f"flip:{N}")


def make_super_flip(m: int, n: int) -> Braiding:
    return Braiding(_graded_matrix(m, n, ONE), INVOLUTIVE, name=f"superflip:{m}|{n}")


def make_dj(N: int, q) -> Braiding:
    q = to_scalar(q)
    return Braiding(_graded_matrix(N, 0, q), HECKE, q, name=f"dj:{N}:{q}")


def make_q_super(m: int, n: int, q) -> Braiding:
    q = to_scalar(q)
    return Braiding(_graded_matrix(m, n, q), HECKE, q, name=f"qsuper:{m}|{n}:{q}")


_NAME_RE = {
    "flip": re.compile(r"^flip:(\d+)$"),
    "superflip": re.compile(r"^superflip:(\d+)\|(\d+)$"),
    "dj": re.compile(r"^dj:(\d+):(-?\d+(?:/\d+)?)$"),
    "qsuper": re.compile(r"^qsuper:(\d+)\|(\d+):(-?\d+(?:/\d+)?)$"),
}


def from_name(name: str) -> Braiding:
    """Catalog lookup: flip:N, superflip:m|n, dj:N:q, qsuper:m|n:q."""
    name = name.strip()
    kind = name.split(":", 1)[0]
    rx = _NAME_RE.get(kind)
    mt = rx.match(name) if rx else None
    if mt is None:
        raise BraidingError(f"unknown symmetry name {name!r}")
    g = mt.groups()
    if kind == "flip":
        return make_flip(int(g[0]))
    if kind == "superflip":
        return make_super_flip(int(g[0]), int(g[1]))
    if kind == "dj":
        return make_dj(int(g[0]), g[1])
    return make_q_super(int(g[0]), int(g[1]), g[2])


CATALOG_EXAMPLES = ("flip:2", "flip:3", "superflip:1|1", "superflip:2|1", "dj:2:3/2", "dj:2:2", "dj:3:3/2", "dj:3:2", "qsuper:1|1:2")


def check_suite(b: Braiding) -> dict[str, bool]:
    """All braiding identities as exact zero tests."""
    N = b.N
    m, n = b.birank
    q = b.q
    I1 = identity(N, 1)
    ogi1, ogi2 = verify_ogievetsky(b)
    results = {
        "braid": check_braid(b.R).is_zero(),
        "kind": check_kind(b.R, b.kind, q).is_zero(),
        "trace_R2_R_is_identity": r_trace2(b, b.R) == I1,
        "trace_R_identity": r_trace(b, I1) == q ** (n - m) * q_int(m - n, q),
        "B_times_C": b.B @ b.C == I1 * q ** (2 * (n - m)),
        "inverse_formula": b.R @ b.R_inv == identity(N, 2),
        "ogievetsky": ogi1.is_zero() and ogi2.is_zero(),
    }
    return results


__all__ = [
    "INVOLUTIVE",
    "HECKE",
    "BraidingError",
    "NotSkewInvertibleError",
    "Braiding",
    "SkewData",
    "check_braid",
    "check_kind",
    "skew_inverse",
    "r_trace",
    "r_trace2",
    "verify_ogievetsky",
    "alpha_value",
    "make_flip",
    "make_super_flip",
    "make_dj",
    "make_q_super",
    "from_name",
    "check_suite",
    "CATALOG_EXAMPLES",
]
