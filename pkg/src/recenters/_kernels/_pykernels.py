"""Pure-Python exact kernels over gmpy2 rationals.

Same contracts as the compiled ``_ckernels`` module; used when the
extension is not built or ``RE_CENTERS_PUREPY`` is set.
"""

import numpy as np
from gmpy2 import mpq, mpz, lcm


def _as_rows(A):
    return [[x if type(x) is type(mpq()) else mpq(x) for x in row] for row in A]


def matmul(A, B):
    A = _as_rows(A)
    B = _as_rows(B)
    n = len(A)
    m = len(B[0]) if B else 0
    inner = len(B)
    if n and len(A[0]) != inner:
        raise ValueError("shape mismatch in matmul")
    zero = mpq(0)
    out = np.empty((n, m), dtype=object)
    for i in range(n):
        acc = [zero] * m
        for k, a in enumerate(A[i]):
            if not a:
                continue
            Bk = B[k]
            for j in range(m):
                b = Bk[j]
                if b:
                    acc[j] = acc[j] + a * b
        out[i, :] = acc
    return out


def _integer_rows(A):
    rows = []
    for row in _as_rows(A):
        den = mpz(1)
        for x in row:
            if x:
                den = lcm(den, x.denominator)
        rows.append([mpz(x * den) for x in row])
    return rows


def rref(A):
    """Reduced row echelon form by fraction-free Gauss-Jordan elimination.

    Returns (matrix, pivot columns).  Rows are scaled to integers first; every
    intermediate entry is then a minor of the scaled matrix, so the only
    division is the exact one by the previous pivot.
    """
    rows = _integer_rows(A)
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    prev = mpz(1)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = None
        for i in range(r, nrows):
            if rows[i][c]:
                p = i
                break
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        prow = rows[r]
        piv = prow[c]
        for i in range(nrows):
            if i == r:
                continue
            ri = rows[i]
            f = ri[c]
            if f:
                rows[i] = [(piv * ri[j] - f * prow[j]) // prev for j in range(ncols)]
            elif piv != prev:
                rows[i] = [(piv * x) // prev for x in ri]
        prev = piv
        pivots.append(c)
        r += 1
    out = np.empty((nrows, ncols), dtype=object)
    for i in range(nrows):
        out[i, :] = [mpq(x, prev) for x in rows[i]]
    return out, pivots


def rank_ff(A):
    """Rank by fraction-free (Bareiss) elimination on integer-scaled rows."""
    rows = _integer_rows(A)
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    prev = mpz(1)
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = None
        for i in range(r, nrows):
            if rows[i][c]:
                p = i
                break
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        prow = rows[r]
        for i in range(r + 1, nrows):
            ri = rows[i]
            f = ri[c]
            rows[i] = [(piv * ri[j] - f * prow[j]) // prev for j in range(ncols)]
        prev = piv
        r += 1
    return r
