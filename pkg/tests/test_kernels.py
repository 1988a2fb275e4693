"""Backend parity: compiled and pure kernels must agree exactly."""

import math

import pytest

from hkfl import _kernels_py, kernels
from hkfl.e8 import e8_lattice
from hkfl.errors import BadParameter, BoundTooLarge

try:
    from hkfl import _speedups
except ImportError:
    _speedups = None

compiled = pytest.mark.skipif(_speedups is None,
                              reason="compiled kernels not available")


def short_via(backend, gram, bound):
    d, mu = kernels._cholesky_split(gram)
    eps = 1e-6 * max(1.0, float(bound))
    raw = backend.enumerate_padded([float(x) for x in d],
                                   [[float(x) for x in row] for row in mu],
                                   float(bound), eps)
    n = len(gram)
    out = []
    for v in raw:
        norm = sum(v[i] * gram[i][j] * v[j] for i in range(n) for j in range(n))
        if 0 < norm <= bound:
            out.append((tuple(v), norm))
    return sorted(out)


@compiled
@pytest.mark.parametrize("bound", [2, 4, 6, 8])
def test_backends_agree_on_e8(bound):
    gram = [list(r) for r in e8_lattice().gram]
    assert short_via(_speedups, gram, bound) == short_via(_kernels_py, gram, bound)


@compiled
def test_backends_agree_on_small_lattices():
    for gram in ([[2]], [[2, 1], [1, 2]], [[4, 1, 0], [1, 2, 1], [0, 1, 6]]):
        assert short_via(_speedups, gram, 12) == short_via(_kernels_py, gram, 12)


@compiled
def test_backends_agree_on_zero_sum_counts():
    assert list(_speedups.zero_sum_counts()) == list(_kernels_py.zero_sum_counts())


@compiled
def test_backends_agree_on_kummer_pairs():
    assert [list(r) for r in _speedups.kummer_pair_counts()] \
        == [list(r) for r in _kernels_py.kummer_pair_counts()]


def test_env_var_forces_python_backend(monkeypatch):
    monkeypatch.setenv("HKFL_PURE_PYTHON", "1")
    assert kernels.backend_name() == "python"
    monkeypatch.setenv("HKFL_PURE_PYTHON", "0")
    if _speedups is not None:
        assert kernels.backend_name() == "compiled"


def test_short_vectors_validation():
    with pytest.raises(BadParameter):
        kernels.short_vectors([[2, 1], [1, -2]], 4)  # not positive definite
    with pytest.raises(BadParameter):
        kernels.short_vectors([], 4)
    with pytest.raises(BadParameter):
        kernels.short_vectors([[2]], 0)


def test_short_vectors_conditioning_guard():
    # det 1 with a huge leading entry leaves a pivot below the guard
    with pytest.raises(BadParameter):
        kernels.short_vectors([[9802, 99], [99, 1]], 4)


def test_short_vectors_cap():
    gram = [list(r) for r in e8_lattice().gram]
    with pytest.raises(BoundTooLarge):
        kernels.short_vectors(gram, 500, count_cap=10**5)


def test_short_vectors_sorted_and_negation_closed():
    vs = kernels.short_vectors([[2, -1], [-1, 2]], 6)
    assert vs == sorted(vs)
    have = {v for v, _ in vs}
    assert all(tuple(-c for c in v) in have for v in have)


def test_kummer_pair_counts_consistent_with_zero_sum_counts():
    pairs = kernels.kummer_pair_counts()
    zsc = kernels.zero_sum_counts()
    for k in range(17):
        assert pairs[k][0] == zsc[k]
        for l in range(17):
            assert pairs[k][l] == zsc[k] * math.comb(k, l)
