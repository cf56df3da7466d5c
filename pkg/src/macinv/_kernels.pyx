# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled elimination kernel with an int64 fast path.

Same contract as ``_kernels_py.rref_int``. Inputs whose entries, or any
intermediate product, leave the int64 range are handed to the pure-Python
kernel from scratch.
"""

from libc.stdlib cimport malloc, free

from macinv import _kernels_py

cdef extern from *:
    """
    static inline int macinv_mul_ovf(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int macinv_sub_ovf(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    """
    int macinv_mul_ovf(long long a, long long b, long long *r) nogil
    int macinv_sub_ovf(long long a, long long b, long long *r) nogil

cdef long long LIMIT = (<long long>1) << 62


cdef inline long long _gcd(long long a, long long b) noexcept nogil:
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


cdef inline void _primitive(long long *row, Py_ssize_t n) noexcept nogil:
    cdef long long g = 0
    cdef Py_ssize_t k
    for k in range(n):
        if row[k]:
            g = _gcd(g, row[k])
            if g == 1:
                return
    if g > 1:
        for k in range(n):
            row[k] = row[k] // g


cdef Py_ssize_t _eliminate(long long *m, Py_ssize_t nrows, Py_ssize_t ncols,
                           Py_ssize_t *pivots) noexcept nogil:
    cdef Py_ssize_t rank = 0, c, p, i, k
    cdef long long a, b, g, aa, bb, t1, t2, x
    cdef long long *prow
    cdef long long *row
    for i in range(nrows):
        _primitive(m + i * ncols, ncols)
    for c in range(ncols):
        if rank == nrows:
            break
        p = -1
        for i in range(rank, nrows):
            if m[i * ncols + c] != 0:
                p = i
                break
        if p < 0:
            continue
        if p != rank:
            for k in range(ncols):
                x = m[p * ncols + k]
                m[p * ncols + k] = m[rank * ncols + k]
                m[rank * ncols + k] = x
        prow = m + rank * ncols
        a = prow[c]
        for i in range(nrows):
            if i == rank:
                continue
            row = m + i * ncols
            b = row[c]
            if b == 0:
                continue
            g = _gcd(a, b)
            aa = a // g
            bb = b // g
            for k in range(ncols):
                if prow[k] == 0:
                    if macinv_mul_ovf(aa, row[k], &x):
                        return -1
                else:
                    if macinv_mul_ovf(aa, row[k], &t1):
                        return -1
                    if macinv_mul_ovf(bb, prow[k], &t2):
                        return -1
                    if macinv_sub_ovf(t1, t2, &x):
                        return -1
                if x >= LIMIT or x <= -LIMIT:
                    return -1
                row[k] = x
            _primitive(row, ncols)
        pivots[rank] = c
        rank += 1
    return rank


def rref_int(rows, Py_ssize_t ncols):
    """Fraction-free Gauss-Jordan elimination on integer rows (int64 fast path)."""
    rows = [r for r in rows if any(r)]
    cdef Py_ssize_t nrows = len(rows)
    if nrows == 0 or ncols == 0:
        return [], []
    cdef long long *m = <long long *> malloc(nrows * ncols * sizeof(long long))
    cdef Py_ssize_t *piv = <Py_ssize_t *> malloc(nrows * sizeof(Py_ssize_t))
    cdef Py_ssize_t i, k, rank
    cdef long long x
    if m == NULL or piv == NULL:
        free(m)
        free(piv)
        raise MemoryError()
    try:
        for i in range(nrows):
            row = rows[i]
            for k in range(ncols):
                v = row[k]
                if v >= LIMIT or v <= -LIMIT:
                    return _kernels_py.rref_int(rows, ncols)
                m[i * ncols + k] = v
        with nogil:
            rank = _eliminate(m, nrows, ncols, piv)
        if rank < 0:
            return _kernels_py.rref_int(rows, ncols)
        out = []
        pivots = []
        for i in range(rank):
            sign = -1 if m[i * ncols + piv[i]] < 0 else 1
            out.append([sign * m[i * ncols + k] for k in range(ncols)])
            pivots.append(piv[i])
        return out, pivots
    finally:
        free(m)
        free(piv)
