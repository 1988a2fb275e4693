"""Exact integer and rational linear algebra.

Everything here works on plain Python ints and fractions.Fraction, so
results are exact at any size; there is no silent wraparound anywhere.
Matrices are lists (or tuples) of rows.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import Degenerate


def mat_mul(a, b):
    """Exact matrix product of two row-major matrices."""
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    bt = [[b[k][j] for k in range(inner)] for j in range(cols)]
    return [[sum(ra[k] * cb[k] for k in range(inner)) for cb in bt] for ra in a]


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def det(mat):
    """Determinant of a square integer matrix (fraction-free Bareiss)."""
    n = len(mat)
    if n == 0:
        return 1
    m = [list(row) for row in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def inverse(mat):
    """Exact inverse of a square matrix, as Fractions.

    Raises Degenerate if the matrix is singular.
    """
    n = len(mat)
    a = [[Fraction(mat[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
         for i in range(n)]
    for c in range(n):
        pivot_row = next((r for r in range(c, n) if a[r][c] != 0), None)
        if pivot_row is None:
            raise Degenerate("matrix is singular")
        a[c], a[pivot_row] = a[pivot_row], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


def int_inverse(mat):
    """Inverse of a unimodular integer matrix, with integer entries."""
    inv = inverse(mat)
    out = []
    for row in inv:
        irow = []
        for x in row:
            if x.denominator != 1:
                raise Degenerate("matrix is not unimodular")
            irow.append(x.numerator)
        out.append(irow)
    return out


@dataclass(frozen=True)
class SnfResult:
    """Smith normal form data: left * matrix * right == diag(diag).

    diag entries are non-negative with each dividing the next; left and
    right are unimodular.
    """

    diag: tuple
    left: tuple
    right: tuple

    def diagonal_matrix(self, rows, cols):
        d = [[0] * cols for _ in range(rows)]
        for i, v in enumerate(self.diag):
            d[i][i] = v
        return d


def _pivot(m, t, rows, cols):
    """Smallest |nonzero| entry of the trailing submatrix, ties row-major."""
    best = None
    for i in range(t, rows):
        for j in range(t, cols):
            v = m[i][j]
            if v != 0 and (best is None or abs(v) < abs(best[2])):
                best = (i, j, v)
    return best


def smith_normal_form(mat) -> SnfResult:
    """Smith normal form of an arbitrary integer matrix.

    Deterministic: the pivot is always the smallest nonzero entry in
    absolute value, ties broken row-major.  Returns non-negative
    diagonal entries in divisibility order.
    """
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    m = [list(row) for row in mat]
    left = identity(rows)
    right = identity(cols)

    def row_op(i, j, q):  # row_i -= q * row_j
        m[i] = [a - q * b for a, b in zip(m[i], m[j])]
        left[i] = [a - q * b for a, b in zip(left[i], left[j])]

    def col_op(i, j, q):  # col_i -= q * col_j
        for r in range(rows):
            m[r][i] -= q * m[r][j]
        for r in range(cols):
            right[r][i] -= q * right[r][j]

    def row_swap(i, j):
        m[i], m[j] = m[j], m[i]
        left[i], left[j] = left[j], left[i]

    def col_swap(i, j):
        for r in range(rows):
            m[r][i], m[r][j] = m[r][j], m[r][i]
        for r in range(cols):
            right[r][i], right[r][j] = right[r][j], right[r][i]

    t = 0
    while t < min(rows, cols):
        piv = _pivot(m, t, rows, cols)
        if piv is None:
            break
        pi, pj, _ = piv
        if pi != t:
            row_swap(t, pi)
        if pj != t:
            col_swap(t, pj)
        while True:
            # clear the pivot column, then the pivot row; repeat until clean
            dirty = False
            for i in range(t + 1, rows):
                if m[i][t] != 0:
                    q = m[i][t] // m[t][t]
                    row_op(i, t, q)
                    if m[i][t] != 0:
                        row_swap(t, i)  # remainder is smaller, promote it
                        dirty = True
            for j in range(t + 1, cols):
                if m[t][j] != 0:
                    q = m[t][j] // m[t][t]
                    col_op(j, t, q)
                    if m[t][j] != 0:
                        col_swap(t, j)
                        dirty = True
            if not dirty and all(m[i][t] == 0 for i in range(t + 1, rows)) \
                    and all(m[t][j] == 0 for j in range(t + 1, cols)):
                break
        # divisibility fix: pivot must divide the rest of the submatrix
        fixed = True
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if m[i][j] % m[t][t] != 0:
                    row_op(t, i, -1)  # fold row i into row t and restart block
                    fixed = False
                    break
            if not fixed:
                break
        if fixed:
            t += 1

    for i in range(min(rows, cols)):
        if m[i][i] < 0:
            m[i] = [-x for x in m[i]]
            left[i] = [-x for x in left[i]]

    diag = tuple(m[i][i] for i in range(min(rows, cols)))
    return SnfResult(diag=diag,
                     left=tuple(tuple(r) for r in left),
                     right=tuple(tuple(r) for r in right))


def rational_signature(gram):
    """Signature (positive, negative) of a symmetric matrix over Q.

    Symmetric Gaussian diagonalization with exact fractions.  Zero
    eigenvalues are not counted; for non-degenerate input pos + neg
    equals the rank.
    """
    n = len(gram)
    a = [[Fraction(gram[i][j]) for j in range(n)] for i in range(n)]
    pos = neg = 0
    for i in range(n):
        if a[i][i] == 0:
            k = next((j for j in range(i + 1, n) if a[j][j] != 0), None)
            if k is not None:
                a[i], a[k] = a[k], a[i]
                for r in range(n):
                    a[r][i], a[r][k] = a[r][k], a[r][i]
            else:
                k = next((j for j in range(i + 1, n) if a[i][j] != 0), None)
                if k is None:
                    continue
                # diag is zero but a[i][k] != 0: add row/col k into i
                for c in range(n):
                    a[i][c] += a[k][c]
                for r in range(n):
                    a[r][i] += a[r][k]
        piv = a[i][i]
        if piv > 0:
            pos += 1
        else:
            neg += 1
        for j in range(i + 1, n):
            if a[j][i] != 0:
                f = a[j][i] / piv
                for c in range(n):
                    a[j][c] -= f * a[i][c]
                for r in range(n):
                    a[r][j] -= f * a[r][i]
    return pos, neg
