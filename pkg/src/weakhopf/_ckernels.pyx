# Compiled mod-p kernels. Same contract as _pykernels.
from libc.stdint cimport int64_t
import numpy as np


def matmul_mod(const int64_t[:, :] a, const int64_t[:, :] b, int64_t p):
    cdef Py_ssize_t n = a.shape[0], k = a.shape[1], m = b.shape[1]
    cdef Py_ssize_t i, j, t
    cdef int64_t aik, acc
    cdef int64_t bound = ((<int64_t>1) << 62) - (p - 1) * (p - 1)
    out = np.zeros((n, m), dtype=np.int64)
    cdef int64_t[:, ::1] o = out
    for i in range(n):
        for t in range(k):
            aik = a[i, t]
            if aik == 0:
                continue
            for j in range(m):
                acc = o[i, j] + aik * b[t, j]
                if acc >= bound:
                    acc %= p
                o[i, j] = acc
        for j in range(m):
            o[i, j] %= p
    return out


def rref_mod(m, int64_t p):
    r_arr = np.array(m, dtype=np.int64) % p
    cdef int64_t[:, ::1] r = r_arr
    cdef Py_ssize_t rows = r.shape[0], cols = r.shape[1]
    cdef Py_ssize_t row = 0, c, i, j, piv
    cdef int64_t inv, f, tmp
    pivots = []
    for c in range(cols):
        if row == rows:
            break
        piv = -1
        for i in range(row, rows):
            if r[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != row:
            for j in range(cols):
                tmp = r[row, j]
                r[row, j] = r[piv, j]
                r[piv, j] = tmp
        inv = pow(int(r[row, c]), -1, int(p))
        for j in range(cols):
            r[row, j] = (r[row, j] * inv) % p
        for i in range(rows):
            if i == row:
                continue
            f = r[i, c]
            if f == 0:
                continue
            for j in range(cols):
                r[i, j] = (r[i, j] - f * r[row, j]) % p
                if r[i, j] < 0:
                    r[i, j] += p
        pivots.append(c)
        row += 1
    return r_arr, pivots
