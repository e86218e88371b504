# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled exact kernels: matrix product, reduced row echelon form and
fraction-free rank, all on raw GMP rationals."""

from libc.stdlib cimport malloc, free
import numpy as np
import gmpy2
from gmpy2 cimport *

cdef extern from "gmp.h":
    void mpq_init(mpq_ptr)
    void mpq_clear(mpq_ptr)
    void mpq_mul(mpq_ptr, mpq_srcptr, mpq_srcptr)
    void mpq_add(mpq_ptr, mpq_srcptr, mpq_srcptr)
    void mpq_sub(mpq_ptr, mpq_srcptr, mpq_srcptr)
    void mpq_div(mpq_ptr, mpq_srcptr, mpq_srcptr)
    void mpq_swap(mpq_ptr, mpq_ptr)
    void mpq_canonicalize(mpq_ptr)
    int mpq_sgn(mpq_srcptr)
    mpz_ptr mpq_numref(mpq_ptr)
    mpz_ptr mpq_denref(mpq_ptr)
    void mpz_set(mpz_ptr, mpz_srcptr)
    void mpz_set_ui(mpz_ptr, unsigned long)
    void mpz_mul(mpz_ptr, mpz_srcptr, mpz_srcptr)
    void mpz_sub(mpz_ptr, mpz_srcptr, mpz_srcptr)
    void mpz_lcm(mpz_ptr, mpz_srcptr, mpz_srcptr)
    void mpz_divexact(mpz_ptr, mpz_srcptr, mpz_srcptr)
    void mpz_swap(mpz_ptr, mpz_ptr)
    int mpz_sgn(mpz_srcptr)

import_gmpy2()


cdef class _QBuf:
    """Owned block of n initialised mpq_t values."""
    cdef __mpq_struct* data
    cdef Py_ssize_t n

    def __cinit__(self, Py_ssize_t n):
        cdef Py_ssize_t i
        self.n = 0
        self.data = <__mpq_struct*> malloc(max(n, 1) * sizeof(__mpq_struct))
        if self.data == NULL:
            raise MemoryError()
        for i in range(n):
            mpq_init(&self.data[i])
        self.n = n

    def __dealloc__(self):
        cdef Py_ssize_t i
        if self.data != NULL:
            for i in range(self.n):
                mpq_clear(&self.data[i])
            free(self.data)


cdef _QBuf _load(A, Py_ssize_t* nr, Py_ssize_t* nc):
    A = np.asarray(A, dtype=object)
    if A.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    nr[0] = A.shape[0]
    nc[0] = A.shape[1]
    cdef _QBuf buf = _QBuf(nr[0] * nc[0])
    cdef Py_ssize_t k = 0
    cdef mpq x
    for v in A.flat:
        if MPQ_Check(v):
            x = <mpq> v
        else:
            x = <mpq> gmpy2.mpq(v)
        mpq_set(&buf.data[k], x.q)
        k += 1
    return buf


cdef object _dump(_QBuf buf, Py_ssize_t nr, Py_ssize_t nc):
    out = np.empty((nr, nc), dtype=object)
    cdef Py_ssize_t i, j
    cdef mpq x
    for i in range(nr):
        for j in range(nc):
            x = GMPy_MPQ_New(NULL)
            mpq_set(x.q, &buf.data[i * nc + j])
            out[i, j] = x
    return out


def matmul(A, B):
    cdef Py_ssize_t n, inner, inner2, m, i, j, k
    cdef _QBuf a = _load(A, &n, &inner)
    cdef _QBuf b = _load(B, &inner2, &m)
    if inner != inner2:
        raise ValueError("shape mismatch in matmul")
    cdef _QBuf c = _QBuf(n * m)
    cdef _QBuf t = _QBuf(1)
    cdef __mpq_struct* aik
    for i in range(n):
        for k in range(inner):
            aik = &a.data[i * inner + k]
            if mpq_sgn(aik) == 0:
                continue
            for j in range(m):
                if mpq_sgn(&b.data[k * m + j]) == 0:
                    continue
                mpq_mul(&t.data[0], aik, &b.data[k * m + j])
                mpq_add(&c.data[i * m + j], &c.data[i * m + j], &t.data[0])
    return _dump(c, n, m)


cdef _QBuf _integer_rows(_QBuf M, Py_ssize_t nr, Py_ssize_t nc):
    """Scale each row by the lcm of its denominators; integers are kept in
    the numerators of the returned buffer (plus three scratch slots)."""
    cdef _QBuf Z = _QBuf(nr * nc + 3)
    cdef mpz_ptr den = mpq_numref(&Z.data[nr * nc])
    cdef mpz_ptr tmp = mpq_numref(&Z.data[nr * nc + 2])
    cdef Py_ssize_t i, j
    for i in range(nr):
        mpz_set(den, mpq_denref(&M.data[i * nc]))
        for j in range(1, nc):
            mpz_lcm(den, den, mpq_denref(&M.data[i * nc + j]))
        for j in range(nc):
            mpz_divexact(tmp, den, mpq_denref(&M.data[i * nc + j]))
            mpz_mul(mpq_numref(&Z.data[i * nc + j]), tmp, mpq_numref(&M.data[i * nc + j]))
    return Z


def rref(A):
    """Reduced row echelon form by fraction-free Gauss-Jordan elimination;
    returns (matrix, pivot columns)."""
    cdef Py_ssize_t nr, nc, r = 0, c, i, j, p
    cdef _QBuf M = _load(A, &nr, &nc)
    pivots = []
    if nr == 0 or nc == 0:
        return _dump(M, nr, nc), pivots
    cdef _QBuf Z = _integer_rows(M, nr, nc)
    cdef mpz_ptr prev = mpq_numref(&Z.data[nr * nc + 1])
    cdef mpz_ptr tmp = mpq_numref(&Z.data[nr * nc + 2])
    cdef mpz_ptr piv
    cdef mpz_ptr fi
    cdef mpz_ptr zij
    mpz_set_ui(prev, 1)
    for c in range(nc):
        if r == nr:
            break
        p = -1
        for i in range(r, nr):
            if mpz_sgn(mpq_numref(&Z.data[i * nc + c])) != 0:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            for j in range(nc):
                mpz_swap(mpq_numref(&Z.data[p * nc + j]), mpq_numref(&Z.data[r * nc + j]))
        piv = mpq_numref(&Z.data[r * nc + c])
        for i in range(nr):
            if i == r:
                continue
            fi = mpq_numref(&Z.data[i * nc + c])
            for j in range(nc):
                if j == c:
                    continue
                zij = mpq_numref(&Z.data[i * nc + j])
                mpz_mul(zij, piv, zij)
                if mpz_sgn(fi) != 0 and mpz_sgn(mpq_numref(&Z.data[r * nc + j])) != 0:
                    mpz_mul(tmp, fi, mpq_numref(&Z.data[r * nc + j]))
                    mpz_sub(zij, zij, tmp)
                mpz_divexact(zij, zij, prev)
            mpz_set_ui(fi, 0)
        mpz_set(prev, piv)
        pivots.append(c)
        r += 1
    # divide through by the final pivot
    for i in range(nr * nc):
        mpz_set(mpq_denref(&M.data[i]), prev)
        mpz_set(mpq_numref(&M.data[i]), mpq_numref(&Z.data[i]))
        mpq_canonicalize(&M.data[i])
    return _dump(M, nr, nc), pivots


def rank_ff(A):
    """Rank by fraction-free (Bareiss) elimination on integer-scaled rows."""
    cdef Py_ssize_t nr, nc, r = 0, c, i, j, p
    cdef _QBuf M = _load(A, &nr, &nc)
    if nr == 0 or nc == 0:
        return 0
    cdef _QBuf Z = _integer_rows(M, nr, nc)
    cdef mpz_ptr prev = mpq_numref(&Z.data[nr * nc + 1])
    cdef mpz_ptr tmp = mpq_numref(&Z.data[nr * nc + 2])
    cdef mpz_ptr piv
    cdef mpz_ptr fi
    mpz_set_ui(prev, 1)
    for c in range(nc):
        if r == nr:
            break
        p = -1
        for i in range(r, nr):
            if mpz_sgn(mpq_numref(&Z.data[i * nc + c])) != 0:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            for j in range(nc):
                mpz_swap(mpq_numref(&Z.data[p * nc + j]), mpq_numref(&Z.data[r * nc + j]))
        piv = mpq_numref(&Z.data[r * nc + c])
        for i in range(r + 1, nr):
            fi = mpq_numref(&Z.data[i * nc + c])
            for j in range(c + 1, nc):
                mpz_mul(mpq_numref(&Z.data[i * nc + j]), piv, mpq_numref(&Z.data[i * nc + j]))
                mpz_mul(tmp, fi, mpq_numref(&Z.data[r * nc + j]))
                mpz_sub(mpq_numref(&Z.data[i * nc + j]), mpq_numref(&Z.data[i * nc + j]), tmp)
                mpz_divexact(mpq_numref(&Z.data[i * nc + j]), mpq_numref(&Z.data[i * nc + j]), prev)
            mpz_set_ui(fi, 0)
        mpz_set(prev, piv)
        r += 1
    return r
