"""Dimensions of the R-skew-symmetric algebra and the bi-rank (m|n).

The degree-k component of the ideal generated by Im(q^-1 I + R) is the
span of the images of (q^-1 I + R) on each adjacent leg pair.  Its
codimension is computed through the annihilator, built one leg at a time:
the annihilator in degree k is the part of (annihilator in degree k-1) (x) V*
killed by the operator on the last two legs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .scalars import ONE, to_scalar
from .tensor import TensorOp, embed_leg, identity

MAX_KMAX = 8


class BirankInconclusive(ArithmeticError):
    """The data fit a rational series but not with two confirming coefficients."""


class BirankInconsistent(ArithmeticError):
    """No rational function of low degree fits the dimensions."""


@dataclass
class BiRank:
    m: int
    n: int
    dims: list[int]
    kmax: int
    surplus: int = 0
    numerator: list = field(default_factory=list)
    denominator: list = field(default_factory=list)

    @property
    def pair(self) -> tuple[int, int]:
        return (self.m, self.n)

    @property
    def minimally_confirmed(self) -> bool:
        return self.surplus <= 2

    def as_dict(self) -> dict:
        return {"m": self.m, "n": self.n, "dims": list(self.dims), "kmax": self.kmax, "surplus": self.surplus}


def skew_ideal_generator(b) -> TensorOp:
    """q^-1 I + R (q = 1 for involutive symmetries)."""
    return b.R + identity(b.N, 2) * (1 / b.q)


def _annihilator_steps(S: TensorOp):
    """Yield (k, basis) with basis columns spanning the degree-k annihilator."""
    N = S.dim
    S4 = S.as_tensor()  # S4[a, j, b, l]
    basis = linalg.identity(N)
    yield 1, basis
    k = 1
    while True:
        k += 1
        d = basis.shape[1]
        rest = N ** (k - 2)
        # beta[I', a, r] for the previous basis
        beta = basis.reshape(rest, N, d)
        # constraint rows (I', b, l), unknowns (r, j):
        #   sum_a beta[I', a, r] S[(a, j), (b, l)] = 0
        cons = np.tensordot(beta, S4, axes=([1], [0]))  # [I', r, j, b, l]
        cons = cons.transpose(0, 3, 4, 1, 2).reshape(rest * N * N, d * N)
        # drop zero and repeated constraint rows before elimination
        seen = set()
        keep = []
        for idx, row in enumerate(cons):
            key = tuple(row)
            if any(row) and key not in seen:
                seen.add(key)
                keep.append(idx)
        cons = cons[keep]
        if d == 0:
            null = linalg.zeros(0, 0)
        elif cons.shape[0] == 0:
            null = linalg.identity(d * N)
        else:
            null = linalg.nullspace(cons)  # columns over (r, j)
        # new basis vectors phi[(I', a, j)] = sum_r x[r, j] beta[I', a, r]
        e = null.shape[1]
        if e == 0:
            basis = linalg.zeros(N**k, 0)
        else:
            X = null.reshape(d, N, e)
            phi = np.tensordot(beta, X, axes=([2], [0]))  # [I', a, j, e]
            basis = np.ascontiguousarray(phi.reshape(N**k, e))
        yield k, basis


def lambda_dims(b, kmax: int) -> list[int]:
    """dim of the degree-k components, k = 0..kmax."""
    if kmax < 2:
        raise ValueError("kmax must be >= 2")
    dims = [1]
    for k, basis in _annihilator_steps(skew_ideal_generator(b)):
        dims.append(basis.shape[1])
        if k == kmax:
            break
    return dims


def lambda_dims_direct(b, kmax: int) -> list[int]:
    """Same dimensions as N^k minus the rank of the stacked leg images."""
    S = skew_ideal_generator(b)
    N = b.N
    dims = [1, N]
    for k in range(2, kmax + 1):
        blocks = [embed_leg(S, i, k).mat for i in range(1, k)]
        dims.append(N**k - linalg.rank(np.hstack(blocks)))
    return dims


def _fit(a: list, m: int, n: int):
    """Try P = p/d with deg p <= m, deg d <= n, d(0) = 1 on the coefficients a.

    Returns (numerator, denominator) or None.
    """
    K = len(a)
    rows = []
    rhs = []
    for k in range(m + 1, K):
        rows.append([a[k - i] if k - i >= 0 else 0 for i in range(1, n + 1)])
        rhs.append(-a[k])
    if n == 0:
        if any(r for r in rhs):
            return None
        d = [ONE]
    else:
        M = linalg.as_matrix(rows) if rows else linalg.zeros(0, n)
        aug = np.hstack([M, linalg.as_matrix([[r] for r in rhs])]) if rows else linalg.zeros(0, n + 1)
        R, piv = linalg.rref(aug) if rows else (aug, [])
        if n in piv:  # inconsistent
            return None
        if len(piv) < n:  # underdetermined
            return None
        d = [ONE] + [R[i, n] for i in range(n)]
    p = []
    for k in range(m + 1):
        p.append(sum((d[i] * a[k - i] for i in range(0, min(n, k) + 1)), to_scalar(0)))
    return p, d


def birank_from_series(dims: list[int], min_surplus: int = 2) -> BiRank:
    """Smallest (m|n) with (1+...)/(1+...) of degrees m over n matching ``dims``.

    m is the numerator degree and n the denominator degree.
    """
    if not dims or dims[0] != 1:
        raise ValueError("dims must start with 1")
    if any((not isinstance(x, (int, np.integer))) or x < 0 for x in dims):
        raise ValueError("dims must be non-negative integers")
    a = [to_scalar(x) for x in dims]
    K = len(a)
    weak = None
    for s in range(0, K):
        found = []
        for m in range(s, -1, -1):
            n = s - m
            equations = K - 1 - m
            if equations < n:
                continue
            fit = _fit(a, m, n)
            if fit is None:
                continue
            p, d = fit
            if p[m] == 0 or d[n] == 0:
                continue
            found.append((m, n, equations - n, p, d))
        if found:
            confirmed = [f for f in found if f[2] >= min_surplus]
            if len(confirmed) == 1 and len(found) == 1:
                m, n, surplus, p, d = confirmed[0]
                return BiRank(m, n, list(dims), K - 1, surplus, p, d)
            if weak is None and s <= (K - 1) // 2:
                weak = found
            break
    if weak is not None:
        raise BirankInconclusive("fit not confirmed by two surplus coefficients; raise kmax")
    raise BirankInconsistent("no rational fit of degree <= kmax/2")


def compute_birank(b, kmax: int | None = None) -> BiRank:
    """Adaptive: extend kmax until the fit is confirmed or MAX_KMAX is reached."""
    start = 4 if kmax is None else kmax
    dims = [1]
    steps = _annihilator_steps(skew_ideal_generator(b))
    last_error: Exception | None = None
    for k, basis in steps:
        dims.append(basis.shape[1])
        if k < start:
            continue
        try:
            return birank_from_series(dims)
        except (BirankInconclusive, BirankInconsistent) as exc:
            last_error = exc
            if kmax is not None or k >= MAX_KMAX:
                raise
    raise last_error  # pragma: no cover
