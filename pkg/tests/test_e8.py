"""Root enumeration, class coverage, and the independent box-search oracle."""

import itertools

import pytest

from hkfl import e8, intlinalg
from hkfl.errors import BadParameter, BoundTooLarge

# frozen enumeration results (verified against the box-search oracle below)
NORM_COUNTS = {2: 240, 4: 2160, 6: 6720, 8: 17520}
MIN_NORM_HISTOGRAM = {0: 1, 2: 120, 4: 135}


def box_search_counts(gram, bound):
    """Exhaustive box search with exact per-coordinate bounds.

    For positive definite G, v^T G v <= B forces v_i^2 <= B * (G^-1)_ii,
    so scanning the full integer box is complete.  No pruning, so this
    stays independent of the branch-and-bound enumeration it checks.
    """
    n = len(gram)
    ginv = intlinalg.inverse(gram)
    bnds = []
    for i in range(n):
        lim = bound * ginv[i][i]
        t = 0
        while (t + 1) * (t + 1) <= lim:
            t += 1
        bnds.append(t)
    counts = {}
    last = n - 1
    g_last = gram[last][last]
    for prefix in itertools.product(*(range(-b, b + 1) for b in bnds[:last])):
        base = sum(prefix[i] * gram[i][j] * prefix[j]
                   for i in range(last) for j in range(last))
        cross = 2 * sum(gram[last][j] * prefix[j] for j in range(last))
        for x in range(-bnds[last], bnds[last] + 1):
            norm = base + cross * x + g_last * x * x
            if 0 < norm <= bound:
                counts[norm] = counts.get(norm, 0) + 1
    return dict(sorted(counts.items()))


def weight_basis_gram():
    """E8 in the dual basis: the inverse Gram is integral and small-boxed."""
    return intlinalg.int_inverse([list(r) for r in e8.e8_lattice().gram])


def rebased(gram, t):
    tt = [list(r) for r in t]
    return intlinalg.mat_mul(intlinalg.mat_mul(_transpose(tt), gram), tt)


def _transpose(m):
    return [[m[j][i] for j in range(len(m))] for i in range(len(m[0]))]


def test_enumeration_counts():
    table = e8.enumerate_short_vectors(8, use_cache=False)
    assert table.counts() == NORM_COUNTS
    assert table.total() == 26640


def test_counts_match_box_search_on_weight_basis():
    w = weight_basis_gram()
    assert box_search_counts(w, 4) == {2: 240, 4: 2160}
    t4 = e8.enumerate_short_vectors(4, use_cache=False)
    assert t4.counts() == {2: 240, 4: 2160}


def test_counts_match_box_search_on_random_rebasing():
    """Signed permutation plus one shear, seeded: keeps the box small."""
    import random
    rng = random.Random(96157)
    w = weight_basis_gram()
    perm = list(range(8))
    rng.shuffle(perm)
    t = [[0] * 8 for _ in range(8)]
    for i, p in enumerate(perm):
        t[i][p] = rng.choice((-1, 1))
    a, b = rng.sample(range(8), 2)
    shear = intlinalg.identity(8)
    shear[a][b] = rng.choice((-1, 1))
    t = intlinalg.mat_mul(t, shear)
    g2 = rebased(w, t)
    assert abs(intlinalg.det(g2)) == 1
    assert g2 != w
    assert box_search_counts(g2, 2) == {2: 240}
    from hkfl import kernels
    vs = kernels.short_vectors(g2, 2)
    assert len(vs) == 240


def test_enumeration_matches_box_search_on_random_lattices():
    """Completeness fuzz: seeded positive-definite Gram matrices of rank
    <= 4, exact box search as the oracle."""
    import random
    from hkfl import kernels
    rng = random.Random(73111)
    done = 0
    while done < 25:
        rank = rng.randint(1, 4)
        a = [[rng.randint(-3, 3) for _ in range(rank)] for _ in range(rank)]
        gram = [[sum(a[k][i] * a[k][j] for k in range(rank)) + 2 * int(i == j)
                 for j in range(rank)] for i in range(rank)]
        bound = rng.randint(2, 14)
        expected = box_search_counts(gram, bound)
        got = {}
        for _, norm in kernels.short_vectors(gram, bound):
            got[norm] = got.get(norm, 0) + 1
        assert dict(sorted(got.items())) == expected, (gram, bound)
        done += 1


def test_enumeration_rejects_bad_bounds():
    with pytest.raises(BadParameter):
        e8.enumerate_short_vectors(3, use_cache=False)
    with pytest.raises(BadParameter):
        e8.enumerate_short_vectors(0, use_cache=False)
    with pytest.raises(BoundTooLarge):
        e8.enumerate_short_vectors(1000, use_cache=False)


def test_vectors_closed_under_negation_with_even_counts():
    table = e8.enumerate_short_vectors(6, use_cache=False)
    for norm, vs in table.by_norm.items():
        assert len(vs) % 2 == 0
        have = set(vs)
        assert all(tuple(-c for c in v) in have for v in have)
        assert list(vs) == sorted(vs)
        assert all(e8.e8_lattice().norm(v) == norm for v in vs)


def test_roots():
    rs = e8.roots()
    assert len(rs) == 240
    assert all(e8.e8_lattice().norm(r) == 2 for r in rs)
    have = set(rs)
    assert all(tuple(-c for c in r) in have for r in rs)
    # generation is asserted inside roots(); re-check the SNF here
    snf = intlinalg.smith_normal_form([list(r) for r in rs])
    assert snf.diag == (1,) * 8


def test_class_coverage_bound_2():
    cov = e8.class_coverage(2, use_cache=False)
    assert len(cov.covered()) == 121  # zero class + 120 root classes


def test_class_coverage_bound_8_complete():
    cov = e8.class_coverage(8, use_cache=False)
    assert len(cov.covered()) == 256
    assert cov.min_norm_histogram() == MIN_NORM_HISTOGRAM
    # frozen truth: every class already has a representative of norm <= 4,
    # i.e. of square >= -8 after the (-2) rescale
    assert cov.max_min_norm() == 4
    zero = (0,) * 8
    assert cov.per_class[zero] == (0, zero)


def test_class_coverage_q_parity():
    cov = e8.class_coverage(8, use_cache=False)
    for cls, (norm, witness) in cov.per_class.items():
        assert e8.class_of(witness) == cls
        assert e8.e8_lattice().norm(witness) == norm
        if norm:
            assert e8.class_q(cls) == (1 if norm % 4 == 2 else 0)


def test_class_coverage_monotone_in_bound():
    covered = [e8.class_coverage(b, use_cache=False).covered() for b in (2, 4, 6, 8)]
    for small, big in zip(covered, covered[1:]):
        assert small <= big
    # coverage completes at bound 4 already
    assert len(covered[1]) == 256


def test_sum_of_roots_witness_zero_and_roots():
    zero = (0,) * 8
    w = e8.sum_of_roots_witness(zero)
    assert w.vector == zero and w.roots == () and w.orthogonal_decomposition
    r = e8.roots()[17]
    w = e8.sum_of_roots_witness(e8.class_of(r))
    assert len(w.roots) == 1 and w.norm == 2


def test_sum_of_roots_witness_all_classes():
    """Frozen truth: two pairwise-orthogonal roots always suffice."""
    lat = e8.e8_lattice()
    sizes = {}
    for bits in itertools.product((0, 1), repeat=8):
        w = e8.sum_of_roots_witness(bits)
        assert w.orthogonal_decomposition
        assert e8.class_of(w.vector) == bits
        for a, b in itertools.combinations(w.roots, 2):
            assert lat.pair(a, b) == 0
        sizes[len(w.roots)] = sizes.get(len(w.roots), 0) + 1
    assert sizes == {0: 1, 1: 120, 2: 135}


def test_cache_round_trip(tmp_path):
    fresh = e8.enumerate_short_vectors(4, use_cache=False)
    miss = e8.enumerate_short_vectors(4, use_cache=True, cache_dir=tmp_path)
    hit = e8.enumerate_short_vectors(4, use_cache=True, cache_dir=tmp_path)
    assert fresh == miss == hit
    files = list(tmp_path.glob("e8-short-vectors-*.json"))
    assert len(files) == 1


def test_cache_env_override(tmp_path, monkeypatch):
    monkeypatch.setenv("HKFL_CACHE_DIR", str(tmp_path / "alt"))
    e8.enumerate_short_vectors(2, use_cache=True)
    assert list((tmp_path / "alt").glob("*.json"))


def test_cache_rejects_stale_versions(tmp_path):
    path = tmp_path / "e8-short-vectors-v1-bound2.json"
    path.write_text('{"format": "hkfl-e8-short-vectors", "version": 99, '
                    '"bound": 2, "by_norm": {}}')
    table = e8.enumerate_short_vectors(2, use_cache=True, cache_dir=tmp_path)
    assert table.counts() == {2: 240}
