# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled kernels: same contracts as hkfl._kernels_py."""

from libc.math cimport ceil, floor, sqrt
from libc.stdlib cimport free, malloc

DEF MAXRANK = 32


cdef void _rec(int i, double rem, double eps, int n, double* d, double* mu,
               long* x, list out):
    cdef double c, lim, s, t
    cdef long xi, lo, hi, j
    cdef bint nonzero
    if i < 0:
        nonzero = False
        for j in range(n):
            if x[j] != 0:
                nonzero = True
                break
        if nonzero:
            out.append(tuple([x[j] for j in range(n)]))
        return
    c = 0.0
    for j in range(i + 1, n):
        if x[j] != 0:
            c += mu[i * n + j] * x[j]
    lim = (rem + eps) / d[i]
    if lim < 0.0:
        return
    s = sqrt(lim)
    lo = <long>ceil(-c - s - 1e-9)
    hi = <long>floor(-c + s + 1e-9)
    for xi in range(lo, hi + 1):
        t = d[i] * (xi + c) * (xi + c)
        if t <= rem + eps:
            x[i] = xi
            _rec(i - 1, rem - t, eps, n, d, mu, x, out)
    x[i] = 0


def enumerate_padded(d, mu, double bound, double eps):
    """Superset enumeration of short coordinate vectors; see the pure kernel."""
    cdef int n = len(d)
    if n > MAXRANK:
        raise ValueError("rank exceeds compiled kernel limit")
    cdef double dd[MAXRANK]
    cdef double muu[MAXRANK * MAXRANK]
    cdef long x[MAXRANK]
    cdef int i, j
    for i in range(n):
        dd[i] = d[i]
        x[i] = 0
        row = mu[i]
        for j in range(n):
            muu[i * n + j] = row[j]
    out = []
    _rec(n - 1, bound, eps, n, dd, muu, x, out)
    return out


cdef int _popcount16(unsigned int v):
    cdef int c = 0
    while v:
        v &= v - 1
        c += 1
    return c


def zero_sum_counts():
    """counts[k] = number of k-element subsets of Z_2^4 with zero sum."""
    cdef int* xs = <int*>malloc(65536 * sizeof(int))
    if xs == NULL:
        raise MemoryError()
    cdef unsigned int m, low
    cdef long counts[17]
    cdef int k
    try:
        xs[0] = 0
        for m in range(1, 65536):
            low = m & (~m + 1)
            xs[m] = xs[m ^ low] ^ (_bit_index(low))
        for k in range(17):
            counts[k] = 0
        for m in range(65536):
            if xs[m] == 0:
                counts[_popcount16(m)] += 1
        return [counts[k] for k in range(17)]
    finally:
        free(xs)


cdef int _bit_index(unsigned int v):
    cdef int i = 0
    while v > 1:
        v >>= 1
        i += 1
    return i


def kummer_pair_counts():
    """counts[k][l] over pairs (zero-sum subset S, submask T of S)."""
    cdef int* xs = <int*>malloc(65536 * sizeof(int))
    if xs == NULL:
        raise MemoryError()
    cdef unsigned int m, low, sub
    cdef long counts[17][17]
    cdef int k, l
    try:
        xs[0] = 0
        for m in range(1, 65536):
            low = m & (~m + 1)
            xs[m] = xs[m ^ low] ^ (_bit_index(low))
        for k in range(17):
            for l in range(17):
                counts[k][l] = 0
        for m in range(65536):
            if xs[m] != 0:
                continue
            k = _popcount16(m)
            sub = m
            while True:
                counts[k][_popcount16(sub)] += 1
                if sub == 0:
                    break
                sub = (sub - 1) & m
        return [[counts[k][l] for l in range(17)] for k in range(17)]
    finally:
        free(xs)
