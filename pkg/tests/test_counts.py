import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from factlab.combinatorics import bell, fubini
from factlab.counts import (F_count, G_count, as_signature, count_by_signature, counts_rows,
                            f_capped, f_count, g_count, nonincreasing_factorizations,
                            oracle_ordered, oracle_unordered)
from factlab.errors import InvalidArgument
from factlab.sieve import signature, signature_index


def partitions(n):
    # Euler's pentagonal-number recurrence
    p = [1] + [0] * n
    for m in range(1, n + 1):
        total, j = 0, 1
        while True:
            g1 = j * (3 * j - 1) // 2
            if g1 > m:
                break
            sign = 1 if j % 2 else -1
            total += sign * p[m - g1]
            g2 = j * (3 * j + 1) // 2
            if g2 <= m:
                total += sign * p[m - g2]
            j += 1
        p[m] = total
    return p[n]


def macmahon_g(sig):
    # ordered factorizations via inclusion-exclusion on parts equal to 1
    if not sig:
        return 1
    total = 0
    for j in range(1, sum(sig) + 1):
        total += sum(
            (-1) ** i * math.comb(j, i) * math.prod(math.comb(e + j - i - 1, j - i - 1) for e in sig)
            for i in range(j)
        )
    return total


def test_f_examples():
    assert f_count(1) == 1
    assert f_count(12) == 4
    assert f_count(64) == 11 == partitions(6)


def test_g_examples():
    assert g_count(1) == 1
    assert g_count(12) == 8
    assert g_count(30) == 13 == fubini(3)


def test_F_G_examples():
    assert F_count(0) == G_count(0) == 1
    assert F_count(2) == 2 and G_count(2) == 3
    assert F_count(3) == 5 and G_count(3) == 13
    with pytest.raises(InvalidArgument):
        F_count(-1)


def test_oracle_examples():
    assert oracle_unordered(12) == 4
    assert oracle_unordered(12, coprime=True) == 2
    assert oracle_ordered(12) == 8
    assert oracle_ordered(12, coprime=True) == 3
    for p in (2, 97, 7919):
        assert oracle_unordered(p) == oracle_unordered(p, coprime=True) == 1
    assert oracle_ordered(49) == 2 and oracle_ordered(49, coprime=True) == 1
    assert sorted(nonincreasing_factorizations(12)) == [(3, 2, 2), (4, 3), (6, 2), (12,)]


def test_oracle_range():
    with pytest.raises(InvalidArgument):
        oracle_unordered(0)
    with pytest.raises(InvalidArgument):
        oracle_ordered(10**6 + 1)


def test_input_forms_agree():
    assert f_count(360) == f_count([(2, 3), (3, 2), (5, 1)]) == f_count([1, 3, 2]) == f_count((3, 2, 1))
    assert g_count(360) == g_count([(2, 3), (3, 2), (5, 1)])
    with pytest.raises(InvalidArgument):
        as_signature([2, 0])


def test_all_four_match_oracles_to_2000():
    for n in range(1, 2001):
        sig = as_signature(n)
        k = len(sig)
        assert f_count(sig) == oracle_unordered(n), n
        assert g_count(sig) == oracle_ordered(n), n
        assert F_count(k) == oracle_unordered(n, coprime=True), n
        assert G_count(k) == oracle_ordered(n, coprime=True), n


def test_squarefree_and_coprime_bounds_to_1e4():
    for n in range(1, 10**4 + 1):
        sig = as_signature(n)
        k = len(sig)
        assert F_count(k) <= f_count(sig) and G_count(k) <= g_count(sig)
        if all(e == 1 for e in sig):
            assert f_count(sig) == F_count(k) == bell(k)
            assert g_count(sig) == G_count(k) == fubini(k)


def test_signature_functions(sieve_1e5):
    ids, sigs = signature_index(sieve_1e5)
    by_sig = {}
    for n in range(2, 10**5 + 1):
        by_sig.setdefault(ids[n], []).append(n)
    rng = random.Random(11)
    pools = [v for v in by_sig.values() if len(v) > 1]
    for _ in range(100):
        n, m = rng.sample(rng.choice(pools), 2)
        assert signature(sieve_1e5, n) == signature(sieve_1e5, m)
        assert oracle_unordered(n) == oracle_unordered(m) == f_count(n)
        assert oracle_ordered(n) == oracle_ordered(m) == g_count(n)


def test_prime_powers():
    for k in range(0, 30):
        assert f_count((k,) if k else ()) == partitions(k)
    assert [g_count(2**k) for k in range(6)] == [1, 1, 2, 4, 8, 16]
    for k in range(6):
        assert oracle_ordered(2**k) == 2 ** max(k - 1, 0)


def test_knapsack_matches_capped_recursion():
    for n in list(range(1, 3000)) + [2**10 * 3**5, 720720, 2**6 * 3**3 * 5**2 * 7]:
        assert f_count(n) == f_capped(n), n


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(min_value=1, max_value=6), min_size=0, max_size=5))
def test_g_matches_macmahon(exps):
    sig = as_signature(exps) if exps else ()
    assert g_count(sig) == macmahon_g(sig)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(min_value=1, max_value=4), min_size=1, max_size=4))
def test_counts_are_symmetric_and_ordered(exps):
    sig = as_signature(exps)
    shuffled = list(reversed(exps))
    assert f_count(shuffled) == f_count(sig)
    assert g_count(sig) >= f_count(sig) >= bell(len(sig)) >= 1
    assert count_by_signature("G", sig) == fubini(len(sig))


def test_counts_rows():
    rows = list(counts_rows(1, 12))
    assert rows[0] == (1, 0, 1, 1, 1, 1)
    assert rows[-1] == (12, 2, 4, 8, 2, 3)
