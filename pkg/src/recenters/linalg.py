"""Dense exact matrices (numpy object arrays of Scalars) over the kernels."""

from __future__ import annotations

import numpy as np

from . import _kernels
from .scalars import ONE, ZERO, to_scalar


class SingularMatrixError(ArithmeticError):
    pass


def as_matrix(rows) -> np.ndarray:
    A = np.array(rows, dtype=object)
    if A.ndim != 2:
        raise ValueError("expected a 2-d array")
    out = np.empty(A.shape, dtype=object)
    for idx, x in np.ndenumerate(A):
        out[idx] = to_scalar(x)
    return out


def zeros(n: int, m: int | None = None) -> np.ndarray:
    m = n if m is None else m
    out = np.empty((n, m), dtype=object)
    out.fill(ZERO)
    return out


def identity(n: int) -> np.ndarray:
    out = zeros(n)
    for i in range(n):
        out[i, i] = ONE
    return out


def matmul(A, B) -> np.ndarray:
    return _kernels.matmul(A, B)


def rref(A):
    return _kernels.rref(A)


def rank(A) -> int:
    A = np.asarray(A, dtype=object)
    if A.size == 0:
        return 0
    return _kernels.rank_ff(A)


def solve(A, B) -> np.ndarray:
    """X with A X = B for square invertible A."""
    A = np.asarray(A, dtype=object)
    B = np.asarray(B, dtype=object)
    n = A.shape[0]
    if A.shape != (n, n) or B.shape[0] != n:
        raise ValueError("solve needs square A and matching B")
    R, pivots = _kernels.rref(np.hstack([A, B]))
    if len(pivots) < n or pivots[n - 1] != n - 1:
        raise SingularMatrixError("matrix is singular")
    return R[:, n:]


def inverse(A) -> np.ndarray:
    return solve(A, identity(np.asarray(A).shape[0]))


def nullspace(A) -> np.ndarray:
    """Columns spanning {x : A x = 0}."""
    A = np.asarray(A, dtype=object)
    nrows, ncols = A.shape
    if nrows == 0:
        return identity(ncols)
    R, pivots = _kernels.rref(A)
    free = [c for c in range(ncols) if c not in set(pivots)]
    out = zeros(ncols, len(free))
    for k, fc in enumerate(free):
        out[fc, k] = ONE
        for r, pc in enumerate(pivots):
            out[pc, k] = -R[r, fc]
    return out


def is_zero(A) -> bool:
    return not any(x != 0 for x in np.asarray(A, dtype=object).flat)


def nonzero_count(A) -> int:
    return sum(1 for x in np.asarray(A, dtype=object).flat if x != 0)
