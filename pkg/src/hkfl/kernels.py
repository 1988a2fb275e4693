"""Kernel selection and the exact wrappers around the hot loops.

Two interchangeable backends exist: the Cython extension
hkfl._speedups and the pure-Python hkfl._kernels_py.  The compiled one
is preferred when importable; set HKFL_PURE_PYTHON=1 to force the
fallback.  Both produce byte-identical results because every candidate
the padded float enumeration yields is re-checked here with exact
integer arithmetic and canonically sorted.

Completeness of the float enumeration: the Cholesky data is computed
exactly over fractions and rounded once to doubles (relative error
2^-53), and the magnitude guards below (rank <= 24, entries <= 1e4,
bound <= 1e6, Cholesky coefficients within [1e-3, 1e6]) keep the
worst-case accumulated drift of every compared quantity at least three
orders of magnitude below the slack 1e-6 * max(1, bound) added to each
bound comparison, so the padded intervals contain the exact ones.  The
slack can only admit extra candidates, which the exact integer filter
removes.
"""

from __future__ import annotations

import math
import os
from fractions import Fraction
from functools import lru_cache

from . import _kernels_py
from .errors import BadParameter, BoundTooLarge

try:  # pragma: no cover - absence only on builds without a C toolchain
    from . import _speedups
except ImportError:  # pragma: no cover
    _speedups = None


def _force_pure() -> bool:
    return os.environ.get("HKFL_PURE_PYTHON", "") not in ("", "0")


def backend():
    if _speedups is not None and not _force_pure():
        return _speedups
    return _kernels_py


def backend_name() -> str:
    return "compiled" if backend() is _speedups else "python"


_MAX_RANK = 24
_MAX_ENTRY = 10**4
_MAX_BOUND = 10**6


def _cholesky_split(gram):
    """Exact LDL^T data: Q(x) = sum_i d[i]*(x[i] + sum_{j>i} mu[i][j]x[j])^2."""
    n = len(gram)
    a = [[Fraction(gram[i][j]) for j in range(n)] for i in range(n)]
    d = []
    mu = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        di = a[i][i]
        if di <= 0:
            raise BadParameter("gram matrix is not positive definite")
        d.append(di)
        for j in range(i + 1, n):
            mu[i][j] = a[i][j] / di
        for k in range(i + 1, n):
            for l in range(k, n):
                a[k][l] -= di * mu[i][k] * mu[i][l]
                a[l][k] = a[k][l]
    return d, mu


def _estimate_count(gram, bound) -> float:
    """Gaussian heuristic for the number of lattice points in the ball."""
    n = len(gram)
    detg = abs(_int_det(gram))
    if detg == 0:
        return math.inf
    ball = math.pi ** (n / 2) * bound ** (n / 2) / math.gamma(n / 2 + 1)
    return 2.0 * ball / math.sqrt(detg) + 2 * n * bound


def _int_det(gram):
    from . import intlinalg
    return intlinalg.det(gram)


def short_vectors(gram, bound, count_cap=10**7):
    """All nonzero integer vectors v with v^T G v <= bound, lex-sorted.

    G must be positive definite.  Raises BoundTooLarge when the
    estimated result size exceeds count_cap.
    """
    n = len(gram)
    if n == 0 or n > _MAX_RANK:
        raise BadParameter(f"rank must be in 1..{_MAX_RANK}")
    if bound < 1 or bound > _MAX_BOUND:
        raise BadParameter(f"bound must be in 1..{_MAX_BOUND}")
    if any(abs(x) > _MAX_ENTRY for row in gram for x in row):
        raise BadParameter(f"gram entries must stay within +-{_MAX_ENTRY}")
    if _estimate_count(gram, bound) > count_cap:
        raise BoundTooLarge(f"estimated vector count exceeds cap {count_cap}")
    d, mu = _cholesky_split(gram)
    if min(d) < Fraction(1, 10**3) or any(abs(x) > 10**6
                                          for row in mu for x in row):
        raise BadParameter("gram matrix too ill-conditioned for the padded "
                           "float enumeration")
    d_f = [float(x) for x in d]
    mu_f = [[float(x) for x in row] for row in mu]
    eps = 1e-6 * max(1.0, float(bound))
    raw = backend().enumerate_padded(d_f, mu_f, float(bound), eps)
    out = []
    for v in raw:
        norm = sum(v[i] * gram[i][j] * v[j] for i in range(n) for j in range(n))
        if 0 < norm <= bound:
            out.append((tuple(v), norm))
    out.sort(key=lambda t: t[0])
    return out


@lru_cache(maxsize=1)
def zero_sum_counts():
    """Zero-sum subset counts of Z_2^4 by size, as a tuple of 17 ints."""
    return tuple(backend().zero_sum_counts())


@lru_cache(maxsize=1)
def kummer_pair_counts():
    """Label-pair counts (|S|, |T|) over zero-sum S in Z_2^4, T subset of S."""
    return tuple(tuple(row) for row in backend().kummer_pair_counts())
