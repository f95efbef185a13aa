# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Machine-integer Hermite normal form kernel.

Same algorithm and output as ``_hnf_py.hnf``. Raises ``OverflowError``
when an intermediate leaves the int64 range; the caller then retries
with the pure-Python kernel.
"""
from libc.limits cimport LLONG_MIN
from libc.stdlib cimport malloc, free

cdef extern from *:
    """
    static inline int sb_mul_ovf(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int sb_sub_ovf(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    """
    int sb_mul_ovf(long long a, long long b, long long *r) nogil
    int sb_sub_ovf(long long a, long long b, long long *r) nogil


cdef inline long long floordiv(long long a, long long b) nogil:
    cdef long long q = a / b
    if (a % b != 0) and ((a < 0) != (b < 0)):
        q -= 1
    return q


cdef int axpy(long long *dst, long long *src, long long q, int start, int n) nogil:
    # dst[k] -= q * src[k]; returns 1 on overflow
    cdef int k
    cdef long long t
    for k in range(start, n):
        if src[k] == 0:
            continue
        if sb_mul_ovf(q, src[k], &t):
            return 1
        if sb_sub_ovf(dst[k], t, &dst[k]):
            return 1
    return 0


cdef int run(long long *A, int m, int ncols) nogil:
    # returns rank, or -1 on overflow
    cdef int r = 0, j, i, k, best, nonzero
    cdef long long v, av, best_abs, p, q
    cdef long long *prow
    cdef long long *row
    cdef long long tmp
    for j in range(ncols):
        if r >= m:
            break
        best = -1
        while True:
            best = -1
            best_abs = 0
            nonzero = 0
            for i in range(r, m):
                v = A[i * ncols + j]
                if v != 0:
                    nonzero += 1
                    if v == LLONG_MIN:
                        return -1
                    av = v if v > 0 else -v
                    if best < 0 or av < best_abs:
                        best = i
                        best_abs = av
            if best < 0:
                break
            if best != r:
                for k in range(ncols):
                    tmp = A[r * ncols + k]
                    A[r * ncols + k] = A[best * ncols + k]
                    A[best * ncols + k] = tmp
            if nonzero == 1:
                break
            prow = A + r * ncols
            p = prow[j]
            for i in range(r + 1, m):
                row = A + i * ncols
                v = row[j]
                if v != 0:
                    q = floordiv(v, p)
                    if q != 0:
                        if axpy(row, prow, q, j, ncols):
                            return -1
        if best < 0:
            continue
        prow = A + r * ncols
        if prow[j] < 0:
            for k in range(j, ncols):
                if prow[k] == LLONG_MIN:
                    return -1
                prow[k] = -prow[k]
        p = prow[j]
        for i in range(r):
            row = A + i * ncols
            q = floordiv(row[j], p)
            if q != 0:
                if axpy(row, prow, q, j, ncols):
                    return -1
        r += 1
    return r


def hnf(rows, int ncols):
    cdef list nz = [r for r in rows if any(r)]
    cdef int m = len(nz)
    cdef int i, k, rank
    if m == 0 or ncols == 0:
        return []
    cdef long long *A = <long long *> malloc(m * ncols * sizeof(long long))
    if A == NULL:
        raise MemoryError()
    try:
        for i in range(m):
            row = nz[i]
            for k in range(ncols):
                A[i * ncols + k] = row[k]
        with nogil:
            rank = run(A, m, ncols)
        if rank < 0:
            raise OverflowError("int64 overflow in hnf kernel")
        return [[A[i * ncols + k] for k in range(ncols)] for i in range(rank)]
    finally:
        free(A)
