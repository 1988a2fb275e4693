"""Stratification tables: closed form vs enumeration, Kummer comparisons."""

import math
from fractions import Fraction

import pytest

from hkfl import strata
from hkfl.errors import BadParameter


def test_k3_golden_tables():
    assert strata.strata_k3_formula(2).counts_by_m() == {1: 1, 0: 28}
    assert strata.strata_k3_formula(3).counts_by_m() == {1: 8, 0: 64}
    assert strata.strata_k3_formula(4).counts_by_m() == {2: 1, 1: 28, 0: 126}
    assert strata.strata_k3_formula(1).counts_by_m() == {0: 8}


def test_k3_component_types_and_dims():
    table = strata.strata_k3_formula(4)
    for row in table.rows:
        assert row.dim == 2 * row.m
        assert row.component_type == ("point" if row.m == 0 else "Hilb^m(Y)")
        assert row.count > 0


@pytest.mark.parametrize("n", range(1, 61))
def test_k3_formula_equals_oracle(n):
    assert strata.strata_k3_formula(n).rows == strata.strata_k3_oracle(n).rows


@pytest.mark.parametrize("n", range(1, 61))
def test_k3_top_stratum_law(n):
    top = strata.strata_k3_formula(n).top_row()
    if n % 2 == 0:
        assert top.m == n // 2 and top.count == 1
    else:
        assert top.m == (n - 1) // 2 and top.count == 8


def test_k3_total_components_equals_label_count():
    for n in range(1, 13):
        labels = list(strata.component_labels("k3n", n))
        assert strata.strata_k3_oracle(n).total() == len(labels)
        for lab in labels:
            assert lab.i_minus <= lab.i_odd
            assert len(lab.i_odd) % 2 == n % 2


def test_k3_oracle_no_isolated_points_at_23():
    # the odd-n ceiling is k + 2l <= 7 + 14 = 21, so n = 23 has none
    assert 0 not in strata.strata_k3_oracle(23).counts_by_m()
    assert 0 in strata.strata_k3_oracle(24).counts_by_m()
    assert 0 in strata.strata_k3_oracle(21).counts_by_m()


def test_k3_min_m_true_law():
    for n in range(1, 61):
        actual = min(strata.strata_k3_oracle(n).counts_by_m())
        if n % 2 == 0:
            assert actual == max(0, n // 2 - 12)
        else:
            assert actual == max(0, (n - 21) // 2)


def test_k3_parameter_validation():
    with pytest.raises(BadParameter):
        strata.strata_k3_formula(0)
    with pytest.raises(BadParameter):
        strata.strata_k3_oracle(500)


def test_zero_sum_counts():
    zsc = [strata.zero_sum_subset_count(k) for k in range(17)]
    assert zsc == [1, 1, 0, 35, 140, 273, 448, 715, 870, 715, 448, 273,
                   140, 35, 0, 1, 1]
    assert zsc[3] == 35  # = number of 2-dimensional subspaces of F_2^4
    gaussian = ((2**4 - 1) * (2**4 - 2)) // ((2**2 - 1) * (2**2 - 2))
    assert gaussian == 35
    # complement symmetry: the full group sums to zero
    assert all(zsc[k] == zsc[16 - k] for k in range(17))
    with pytest.raises(BadParameter):
        strata.zero_sum_subset_count(17)


def test_zero_sum_total_identities():
    zsc = [strata.zero_sum_subset_count(k) for k in range(17)]
    # the zero-sum subsets are the kernel of a surjection (F_2)^16 -> (F_2)^4
    assert sum(zsc) == 2**16 // 16 == 2**12
    # incidence count: pairs (S, v in S) with S zero-sum
    assert sum(k * zsc[k] for k in range(17)) == 2**15


def test_kummer_golden_tables():
    assert strata.strata_kummer_oracle(1).counts_by_m() == {1: 1}
    assert strata.strata_kummer_oracle(2).counts_by_m() == {1: 1, 0: 36}
    assert strata.strata_kummer_oracle(3).counts_by_m() == {2: 1, 0: 140}


@pytest.mark.parametrize("n", range(1, 61))
def test_kummer_top_stratum_count_one(n):
    table = strata.strata_kummer_oracle(n)
    top = table.top_row()
    assert top.count == 1
    assert top.m == ((n + 1) // 2 if n % 2 else n // 2)


def test_kummer_total_equals_label_count():
    for n in range(1, 9):
        labels = list(strata.component_labels("kummer", n))
        assert strata.strata_kummer_oracle(n).total() == len(labels)
        for lab in labels:
            acc = 0
            for v in lab.i_odd:
                acc ^= v
            assert acc == 0
            assert len(lab.i_odd) % 2 == (n + 1) % 2


@pytest.mark.parametrize("n", range(1, 41))
def test_kummer_corrected_formula_matches_oracle(n):
    table = strata.strata_kummer_oracle(n)
    for m, count in table.counts_by_m().items():
        assert strata.kummer_corrected_formula(n, m) == count


def test_kummer_published_formula_literal_values():
    # all top indices non-integral: zero
    assert strata.kummer_published_formula(2, 0) == 1  # only the I = {0} term
    assert strata.kummer_published_formula(3, 2) == 0
    # n=2, m=1: (2-1)/2 not integral for k=1; k=0 gives top -1: zero?
    # literal evaluation fixed by enumeration:
    assert strata.kummer_published_formula(2, 1) == 1


def test_kummer_comparison_emits_records():
    rows, records = strata.kummer_comparison(2)
    by_m = {r["m"]: r for r in rows}
    assert by_m[0]["oracle"] == 36 and by_m[0]["corrected"] == 36
    assert not by_m[0]["printed_matches"]
    assert any(r.anchor == "kummer-printed-count-formula" for r in records)
    assert all(r.code == "PAPER-DISCREPANCY" for r in records)


def test_kummer_comparison_n3():
    rows, records = strata.kummer_comparison(3)
    by_m = {r["m"]: r for r in rows}
    assert by_m[2]["oracle"] == 1
    assert by_m[2]["printed"] == strata.kummer_published_formula(3, 2)
    assert all(r["corrected_matches"] for r in rows)


def test_kummer_paper_convention_dims_odd():
    table = strata.strata_kummer_oracle(3, convention="paper")
    assert all(row.dim % 2 == 1 for row in table.rows)
    assert all(isinstance(row.m, Fraction) for row in table.rows)
    records = strata.paper_convention_records(3)
    assert records and records[0].anchor == "kummer-printed-dimension-parity"
    # same labels, shifted dimension
    derived = strata.strata_kummer_oracle(3)
    assert table.total() == derived.total()


def test_kummer_convention_validation():
    with pytest.raises(BadParameter):
        strata.strata_kummer_oracle(3, convention="other")


def test_kummer_isolated_point_set():
    """Isolated points exist iff n+1 is an achievable size k + 2l with
    zero-sum k: every n <= 47 except n = 1 and n = 46."""
    have = {n for n in range(1, 61)
            if 0 in strata.strata_kummer_oracle(n).counts_by_m()}
    expected = set(range(2, 48)) - {46}
    assert have == expected


def test_bounds_report_k3():
    rep = strata.bounds_report("k3n", 24)
    assert rep.has_isolated and rep.actual_min_m == 0
    assert rep.within_stated_bounds
    assert not rep.discrepancies
    rep = strata.bounds_report("k3n", 26)
    assert rep.actual_min_m == 1 and rep.stated_min_m == 1
    rep = strata.bounds_report("k3n", 23)
    assert not rep.has_isolated
    assert any(r.anchor == "k3n-isolated-point-threshold"
               for r in rep.discrepancies)
    rep = strata.bounds_report("k3n", 25)
    assert any(r.anchor == "k3n-min-dimension-bound" for r in rep.discrepancies)


def test_bounds_report_kummer():
    rep = strata.bounds_report("kummer", 47)
    assert rep.has_isolated
    rep = strata.bounds_report("kummer", 46)
    assert not rep.has_isolated
    assert any(r.anchor == "kummer-isolated-point-threshold"
               for r in rep.discrepancies)
    rep = strata.bounds_report("kummer", 49)
    assert not rep.has_isolated
    # even n: stated ceiling (n+1)/2 is fractional
    rep = strata.bounds_report("kummer", 4)
    assert any(r.anchor == "kummer-top-stratum-parity" for r in rep.discrepancies)


def test_bounds_report_within_bounds_everywhere():
    for n in range(1, 61):
        assert strata.bounds_report("k3n", n).within_stated_bounds
        assert strata.bounds_report("kummer", n).within_stated_bounds


def poly_mul(a, b, cap):
    out = [0] * (cap + 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if i + j > cap:
                    break
                out[i + j] += x * y
    return out


def test_k3_totals_match_generating_function():
    """Third route: each fixed point contributes a factor 1 + x + x^3
    (even multiplicity, odd plus, odd minus with one extra pair), and
    the free invariant pairs contribute 1/(1 - x^2)."""
    cap = 60
    factor = [1, 1, 0, 1]
    series = [1]
    for _ in range(8):
        series = poly_mul(series, factor, cap)
    pairs = [1 if d % 2 == 0 else 0 for d in range(cap + 1)]
    series = poly_mul(series, pairs, cap)
    for n in range(1, cap + 1):
        assert strata.strata_k3_oracle(n).total() == series[n]


def test_strata_table_invariants():
    for n in (5, 12, 31):
        t = strata.strata_k3_oracle(n)
        ms = [row.m for row in t.rows]
        assert ms == sorted(ms, reverse=True)
        assert len(set(ms)) == len(ms)
        assert all(row.count > 0 for row in t.rows)
        parity_counts = sum(math.comb(8, k) * math.comb(k, l)
                            for k in range(9) for l in range(k + 1)
                            if k % 2 == n % 2 and n - k - 2 * l >= 0)
        assert t.total() == parity_counts
