import math
from itertools import permutations

import pytest

from pdckit.moments import (
    class_counts,
    distinct_tuple_sum,
    moment_report,
    moment_sum,
    stirling_coefficient,
    verify_moment_inequality,
    verify_power_identity,
    verify_tuple_link,
)


def test_class_counts(table_1e4):
    counts = class_counts(table_1e4, 100, 3)
    assert counts == [1, 11, 13]
    assert sum(class_counts(table_1e4, 10**4, 30)) == 1229


def test_moment_sum_small(table_1e4):
    # primes <= 20 split mod 3 as {3}, {7,13,19}, {2,5,11,17}
    assert moment_sum(table_1e4, 20, 3, 2) == 1 + 9 + 16
    assert moment_sum(table_1e4, 20, 1, 3) == 8**3
    assert moment_sum(table_1e4, 20, 3, 2, coprime_only=True) == 9 + 16


def test_stirling_coefficients():
    # S(m, m - i) against a hand table
    assert stirling_coefficient(3, 0) == 1
    assert stirling_coefficient(3, 1) == 3
    assert stirling_coefficient(3, 2) == 1
    assert stirling_coefficient(4, 1) == 6
    assert stirling_coefficient(4, 2) == 7
    assert stirling_coefficient(5, 2) == 25
    with pytest.raises(ValueError):
        stirling_coefficient(3, 3)


def test_distinct_tuple_sum_oracle(table_1e4):
    # brute force over ordered distinct tuples in each class
    for q in (1, 2, 3):
        counts = class_counts(table_1e4, 50, q)
        for j in (1, 2, 3):
            brute = sum(
                sum(1 for _ in permutations(range(n), j)) for n in counts
            )
            assert distinct_tuple_sum(table_1e4, 50, q, j) == brute


def test_power_identity_sweep(table_1e4):
    for x in (100, 1000):
        for q in (1, 2, 3, 5, 30):
            for m in (2, 3, 4):
                ok, residual = verify_power_identity(table_1e4, x, q, m)
                assert ok and residual == 0


def test_tuple_link_small(table_1e4):
    for x in (100, 500):
        for q in (1, 2, 3, 5):
            for k in (2, 3):
                assert verify_tuple_link(table_1e4, x, q, k)


def test_tuple_link_rejects_bad_k(table_1e4):
    with pytest.raises(ValueError):
        verify_tuple_link(table_1e4, 100, 1, 4)


def test_inequality_frozen(table_1e4):
    m = verify_moment_inequality(table_1e4, 10**4, 30, 2)
    assert m.margin == pytest.approx(-898.125, abs=1e-9)
    assert m.budget == pytest.approx(522.5089477578487, rel=1e-12)
    assert not m.ok  # the bound needs larger x to kick in; recorded as observed

    m2 = verify_moment_inequality(table_1e4, 10**4, 210, 3)
    assert m2.margin == pytest.approx(3914.979166666628, abs=1e-6)
    assert m2.budget == pytest.approx(3505.421200435948, rel=1e-12)
    assert m2.ok


def test_inequality_needs_k_at_least_two(table_1e4):
    with pytest.raises(ValueError):
        verify_moment_inequality(table_1e4, 100, 3, 1)


def test_moment_report(table_1e4):
    rep = moment_report(table_1e4, 10**4, 30, 2)
    assert rep.a_k == 187904
    assert rep.full_sum == 187907
    assert rep.b_k == pytest.approx(-440.25, abs=1e-9)
    assert rep.distinct_sums == (1229, 186678)
    assert rep.identity_ok
    assert rep.inequality_margin == pytest.approx(-898.125, abs=1e-9)

    rep1 = moment_report(table_1e4, 100, 3, 1)
    assert rep1.inequality_margin is None
    assert rep1.a_k == 24  # pi(100) minus the prime 3 itself

    d = rep.to_dict()
    assert d["x"] == 10**4 and d["q"] == 30 and d["k"] == 2
