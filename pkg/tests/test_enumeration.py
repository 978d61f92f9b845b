import math

import numpy as np
import pytest

from udooc.digraph import adjacency_set, walk_count
from udooc.enumeration import (
    asymptotic_class,
    asymptotic_classes,
    brute_force_avoid_counts,
    brute_force_codeword_counts,
    count_codewords,
    count_s,
    count_table,
    cumulative,
    det_polynomial,
    growth_rate,
    growth_rate_bounds,
    h_polynomial,
    verify_h_equals_det,
)
from udooc.uw import UniqueWord, all_words, complement, count_overlap_vectors, reverse


def w(s):
    return UniqueWord.parse(s)


def test_h_examples():
    assert h_polynomial(w("000")).coeffs == (1, -1, -1, -1)
    for L in range(2, 9):
        assert h_polynomial(UniqueWord((0,) * (L - 1) + (1,))).coeffs == (1, -2) + (0,) * (L - 2) + (1,)
        assert h_polynomial(UniqueWord((0,) * L)).coeffs == (1,) + (-1,) * L


def test_h_degree_and_constant():
    for L in range(2, 8):
        for k in all_words(L):
            h = h_polynomial(k)
            assert h.coeffs[0] == 1 and h.degree == L


def test_det_small():
    assert det_polynomial(adjacency_set(w("00"))).coeffs == (1, -1, -1)
    assert verify_h_equals_det(w("010"))
    assert all(verify_h_equals_det(k) for k in all_words(4))


def test_det_cap():
    with pytest.raises(ValueError):
        verify_h_equals_det(UniqueWord((0,) * 9))


def test_counts_examples():
    assert count_codewords(w("00"), 7) == [1, 1, 1, 2, 3, 5, 8, 13]
    assert count_codewords(w("01"), 10) == list(range(1, 12))
    assert count_codewords(w("010"), 4)[4] == 7
    assert count_s(w("000"), 3)[3] == 7


def test_s_initial_values():
    for L in range(2, 7):
        for k in all_words(L):
            s = count_s(k, L)
            assert s[:L] == [2**n for n in range(L)]
            assert s[L] == 2**L - 1


def test_oracle_sweep():
    for L in range(2, 6):
        for k in all_words(L):
            assert count_codewords(k, 12) == brute_force_codeword_counts(k, 12)
            assert count_s(k, 12) == brute_force_avoid_counts(k, 12)


def test_recursion_agrees_with_walks():
    for L in range(2, 7):
        for k in all_words(L):
            adj = adjacency_set(k)
            c = count_codewords(k, L + 8)
            for n in range(max(1, L), L + 9):
                assert c[n] == walk_count(adj, n + L - 1)


def test_cumulative():
    assert cumulative(count_codewords(w("010"), 3))[3] == 8
    assert cumulative(count_codewords(w("00"), 4))[4] == 8
    tab = count_table(w("0001"), 10)
    assert tab.F[0] == 1 and tab.F_at(-1) == 0
    assert all(tab.F[n] == tab.F[n - 1] + tab.c[n] for n in range(1, 11))
    assert all(tab.c[n] <= tab.s[n] <= 2**n for n in range(tab.uw.L, 11))


def test_big_counts_are_exact():
    c = count_codewords(w("00"), 200)
    a, b = 1, 1
    for _ in range(199):
        a, b = b, a + b
    assert c[200] == a  # F_199, beyond 64-bit range
    assert c[200] > 2**64


def test_c_lower_bound_claim():
    for L in range(2, 7):
        for k in all_words(L):
            c = count_codewords(k, L + 1)
            assert all(c[n] >= 2 ** (n - 2) for n in range(2, L + 2))


def test_s_ratio_bound():
    for L in range(2, 7):
        lo = 2 - 2.0 ** (2 - L)
        for k in all_words(L):
            s = count_s(k, 20)
            assert all(s[n] / s[n - 1] >= lo - 1e-12 for n in range(1, 21))


def test_symmetry_of_tables():
    for L in range(2, 7):
        for k in all_words(L):
            c = count_codewords(k, 15)
            assert count_codewords(reverse(k), 15) == c
            assert count_codewords(complement(k), 15) == c


def test_growth_examples():
    assert growth_rate(w("00")).value == pytest.approx((1 + math.sqrt(5)) / 2, abs=1e-9)
    g = growth_rate(w("01"))
    assert g.is_degenerate and g.value == 1.0
    assert growth_rate(w("10")).is_degenerate
    for L in range(3, 9):
        assert growth_rate(UniqueWord((0,) * (L - 1) + (1,))).value == pytest.approx(
            growth_rate(UniqueWord((0,) * (L - 1))).value, abs=1e-9)


def test_growth_against_numpy_roots():
    for L in range(3, 8):
        for k in all_words(L):
            roots = np.roots(h_polynomial(k).coeffs[::-1])
            z = min(r.real for r in roots if abs(r.imag) < 1e-9 and r.real > 0)
            assert growth_rate(k).value == pytest.approx(1 / z, abs=1e-9)


def test_growth_matches_count_ratio():
    for s in ("000", "0101", "0011", "00101"):
        c = count_codewords(w(s), 400)
        assert growth_rate(w(s)).value == pytest.approx(c[400] / c[399], abs=1e-9)


def test_growth_bounds():
    assert growth_rate_bounds(4) == (1.75, 1.9375)
    assert growth_rate_bounds(2) == (1.0, 1.75)
    lo, hi = growth_rate_bounds(8)
    assert round(lo, 3) == 1.984 and round(hi, 3) == 1.996
    for L in range(2, 9):
        lo, hi = growth_rate_bounds(L)
        for k in all_words(L):
            g = growth_rate(k).value
            assert lo - 1e-12 <= g <= hi + 1e-12


def test_extremal():
    for L in range(2, 7):
        gs = [growth_rate(k).value for k in all_words(L)]
        assert growth_rate(UniqueWord((0,) * L)).value == pytest.approx(max(gs), abs=1e-9)
        assert growth_rate(UniqueWord((0,) * (L - 1) + (1,))).value == pytest.approx(min(gs), abs=1e-9)


def test_classes():
    assert asymptotic_class(w("00")) == asymptotic_class(w("11"))
    for L in range(2, 9):
        assert len(asymptotic_classes(L)) <= count_overlap_vectors(L)
    # 0001 and 0100 differ in overlap vector and in growth rate
    assert abs(asymptotic_class(w("0001")) - asymptotic_class(w("0100"))) > 1e-3
