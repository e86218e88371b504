"""Dense exact operators on tensor powers of V.

Index convention (fixed everywhere, including file formats): the entry
``M[(i1..ik), (j1..jk)]`` is the coefficient of ``e_i1 x .. x e_ik`` in
``M(e_j1 x .. x e_jk)``; composite indices are big-endian, the first leg
being the most significant digit.  Indices are 0-based in code.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import linalg
from .scalars import ONE, ZERO, format_scalar, to_scalar


@dataclass(frozen=True, eq=False)
class TensorOp:
    mat: np.ndarray
    dim: int
    legs: int

    def __post_init__(self):
        size = self.dim**self.legs
        if self.mat.shape != (size, size):
            raise ValueError(f"expected {size}x{size} matrix for N={self.dim}, {self.legs} legs")

    @classmethod
    def from_rows(cls, rows, dim: int, legs: int) -> "TensorOp":
        return cls(linalg.as_matrix(rows), dim, legs)

    @property
    def size(self) -> int:
        return self.dim**self.legs

    def _check(self, other: "TensorOp"):
        if not isinstance(other, TensorOp):
            raise TypeError(f"expected TensorOp, got {type(other).__name__}")
        if (self.dim, self.legs) != (other.dim, other.legs):
            raise ValueError(
                f"dimension mismatch: N={self.dim},{self.legs} legs vs N={other.dim},{other.legs} legs"
            )

    def __matmul__(self, other: "TensorOp") -> "TensorOp":
        self._check(other)
        return TensorOp(linalg.matmul(self.mat, other.mat), self.dim, self.legs)

    def __add__(self, other: "TensorOp") -> "TensorOp":
        self._check(other)
        return TensorOp(self.mat + other.mat, self.dim, self.legs)

    def __sub__(self, other: "TensorOp") -> "TensorOp":
        self._check(other)
        return TensorOp(self.mat - other.mat, self.dim, self.legs)

    def __neg__(self) -> "TensorOp":
        return TensorOp(-self.mat, self.dim, self.legs)

    def __mul__(self, c) -> "TensorOp":
        c = to_scalar(c)
        return TensorOp(self.mat * c, self.dim, self.legs)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorOp):
            return NotImplemented
        return (self.dim, self.legs) == (other.dim, other.legs) and bool((self.mat == other.mat).all())

    __hash__ = None

    def shift(self, g) -> "TensorOp":
        """self + g*I."""
        return self + identity(self.dim, self.legs) * g

    def is_zero(self) -> bool:
        return linalg.is_zero(self.mat)

    def nonzero_count(self) -> int:
        return linalg.nonzero_count(self.mat)

    def inverse(self) -> "TensorOp":
        return TensorOp(linalg.inverse(self.mat), self.dim, self.legs)

    def trace(self):
        return sum(self.mat.diagonal(), ZERO)

    def as_tensor(self) -> np.ndarray:
        return self.mat.reshape((self.dim,) * (2 * self.legs))

    @classmethod
    def from_tensor(cls, T: np.ndarray, dim: int, legs: int) -> "TensorOp":
        size = dim**legs
        return cls(np.ascontiguousarray(T).reshape(size, size), dim, legs)

    def __repr__(self):
        return f"TensorOp(N={self.dim}, legs={self.legs}, nonzero={self.nonzero_count()})"


def identity(dim: int, legs: int = 1) -> TensorOp:
    return TensorOp(linalg.identity(dim**legs), dim, legs)


def zero(dim: int, legs: int = 1) -> TensorOp:
    return TensorOp(linalg.zeros(dim**legs), dim, legs)


def flip(dim: int) -> TensorOp:
    """The permutation P(e_i x e_j) = e_j x e_i."""
    M = linalg.zeros(dim * dim)
    for i in range(dim):
        for j in range(dim):
            M[j * dim + i, i * dim + j] = ONE
    return TensorOp(M, dim, 2)


def kron(A: TensorOp, B: TensorOp) -> TensorOp:
    if A.dim != B.dim:
        raise ValueError("kron of operators on different spaces")
    return TensorOp(np.kron(A.mat, B.mat), A.dim, A.legs + B.legs)


def embed_leg(M: TensorOp, pos: int, total: int) -> TensorOp:
    """Act with the 2-leg operator M on legs (pos, pos+1) of ``total`` legs (1-based)."""
    if M.legs != 2:
        raise ValueError("embed_leg expects a 2-leg operator")
    if not 1 <= pos <= total - 1:
        raise ValueError(f"position {pos} out of range for {total} legs")
    N = M.dim
    left = linalg.identity(N ** (pos - 1))
    right = linalg.identity(N ** (total - pos - 1))
    return TensorOp(np.kron(np.kron(left, M.mat), right), N, total)


def partial_trace_weighted(M: TensorOp, leg: int, W: TensorOp | None = None) -> TensorOp:
    """Tr over ``leg`` (1-based) of W_leg . M; plain partial trace when W is None."""
    if not 1 <= leg <= M.legs:
        raise ValueError(f"leg {leg} out of range")
    if M.legs < 2:
        raise ValueError("partial trace needs at least two legs")
    N, k = M.dim, M.legs
    T = M.as_tensor()
    if W is not None:
        if W.legs != 1 or W.dim != N:
            raise ValueError("weight must be a 1-leg operator on the same space")
        # contract W with the row index of the traced leg, keep axis order
        T = np.moveaxis(np.tensordot(W.mat, T, axes=([1], [leg - 1])), 0, leg - 1)
    out = np.trace(T, axis1=leg - 1, axis2=k + leg - 1)
    return TensorOp.from_tensor(out, N, k - 1)


def partial_trace(M: TensorOp, leg: int) -> TensorOp:
    return partial_trace_weighted(M, leg, None)


def partial_transpose(M: TensorOp, leg: int) -> TensorOp:
    """Swap the row and column index of one leg."""
    if not 1 <= leg <= M.legs:
        raise ValueError(f"leg {leg} out of range")
    T = M.as_tensor().swapaxes(leg - 1, M.legs + leg - 1)
    return TensorOp.from_tensor(T, M.dim, M.legs)


# --- text format: "N <dim> LEGS <k>" then N^(2k) scalars, row-major --------


def dumps(M: TensorOp) -> str:
    lines = [f"N {M.dim} LEGS {M.legs}"]
    for row in M.mat:
        lines.append(" ".join(format_scalar(x) for x in row))
    return "\n".join(lines) + "\n"


def loads(text: str) -> TensorOp:
    lines = text.strip().splitlines()
    if not lines:
        raise ValueError("empty operator file")
    head = lines[0].split()
    if len(head) != 4 or head[0] != "N" or head[2] != "LEGS":
        raise ValueError(f"bad header {lines[0]!r}; expected 'N <dim> LEGS <k>'")
    try:
        dim, legs = int(head[1]), int(head[3])
    except ValueError:
        raise ValueError(f"bad header {lines[0]!r}") from None
    if dim < 1 or legs < 1:
        raise ValueError("dimension and leg count must be positive")
    tokens = " ".join(lines[1:]).split()
    size = dim**legs
    if len(tokens) != size * size:
        raise ValueError(f"expected {size * size} entries, found {len(tokens)}")
    vals = [to_scalar(t) for t in tokens]
    M = np.empty((size, size), dtype=object)
    M.flat[:] = vals
    return TensorOp(M, dim, legs)


def load(path) -> TensorOp:
    return loads(Path(path).read_text())


def dump(M: TensorOp, path) -> None:
    Path(path).write_text(dumps(M))
