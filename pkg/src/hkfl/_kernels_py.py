"""Pure-Python kernels: the enumeration inner loops.

Same contracts as the compiled module hkfl._speedups; the selector in
hkfl.kernels picks whichever is available.  Callers re-check candidates
with exact integer arithmetic, so these loops only have to be complete,
never exact.
"""

from __future__ import annotations

import math


def enumerate_padded(d, mu, bound, eps):
    """Candidate vectors x with sum_i d[i]*(x[i] + sum_{j>i} mu[i][j]x[j])^2 <= bound+slack.

    d, mu come from an exact Cholesky split of a positive-definite Gram
    matrix, rounded to floats.  All comparisons carry the slack eps, so
    the enumerated set is a superset of the exact solution set whenever
    eps dominates the float drift; the caller filters exactly.
    """
    n = len(d)
    out = []
    x = [0] * n

    def rec(i, rem):
        if i < 0:
            if any(x):
                out.append(tuple(x))
            return
        c = 0.0
        row = mu[i]
        for j in range(i + 1, n):
            if x[j]:
                c += row[j] * x[j]
        lim = (rem + eps) / d[i]
        if lim < 0.0:
            return
        s = math.sqrt(lim)
        lo = math.ceil(-c - s - 1e-9)
        hi = math.floor(-c + s + 1e-9)
        for xi in range(lo, hi + 1):
            t = d[i] * (xi + c) * (xi + c)
            if t <= rem + eps:
                x[i] = xi
                rec(i - 1, rem - t)
        x[i] = 0

    rec(n - 1, float(bound))
    return out


def _xor_sums():
    # xor of the element indices present in each 16-bit subset mask
    xs = [0] * 65536
    for m in range(1, 65536):
        low = m & -m
        xs[m] = xs[m ^ low] ^ (low.bit_length() - 1)
    return xs


def zero_sum_counts():
    """counts[k] = number of k-element subsets of Z_2^4 with zero sum."""
    xs = _xor_sums()
    counts = [0] * 17
    for mask in range(65536):
        if xs[mask] == 0:
            counts[mask.bit_count()] += 1
    return counts


def kummer_pair_counts():
    """counts[k][l] = number of pairs (S, T) with T a subset of S, S a
    zero-sum subset of Z_2^4, |S| = k, |T| = l.

    Full sweep: every subset mask, then every submask.
    """
    xs = _xor_sums()
    counts = [[0] * 17 for _ in range(17)]
    for mask in range(65536):
        if xs[mask] != 0:
            continue
        row = counts[mask.bit_count()]
        sub = mask
        while True:
            row[sub.bit_count()] += 1
            if sub == 0:
                break
            sub = (sub - 1) & mask
    return counts
