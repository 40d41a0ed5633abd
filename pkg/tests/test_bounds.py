from fractions import Fraction

import pytest

from locekr import constructions as C
from locekr.bounds import (
    coarse_layer_bound,
    counterexample_window,
    layer_bound,
    product_bound_check,
    sharpness_bound,
    thresholds,
    j_deficit,
)
from locekr.exact import binomial
from locekr.phi import layer_profile, phi_direct
from locekr.setfamily import Family


def test_threshold_values():
    ts = thresholds(3, 0)
    assert ts.cubic == 24
    assert ts.conjectured == 7
    assert ts.ak_range[1] == 6
    assert thresholds(2).conjectured == 4
    assert thresholds(3, 5).quadratic == 3 + 15 + 5     # ceil(9/4) = 3
    assert thresholds(4).quadratic == 4 + 20
    with pytest.raises(ValueError):
        thresholds(0)
    with pytest.raises(ValueError):
        thresholds(3, -1)


def test_threshold_ordering_scan():
    for k in range(8, 65):
        ts = thresholds(k, 0)
        assert ts.cubic >= ts.quadratic >= ts.conjectured
        assert 2 * ts.cubic == k ** 3 + 2 * k ** 2 + k
        assert ts.quadratic >= Fraction(k * k, 4) + 5 * k > ts.quadratic - 1


def test_layer_bound_example():
    v = layer_bound(10, 3, 1)
    assert v.entry1 == Fraction(11, 18) == 1 - Fraction(28, 72)
    assert v.entry2 == Fraction(11, 18) == Fraction(36 - 15 + 1, 36)
    assert v.max == Fraction(11, 18)


def test_layer_bound_edge_and_errors():
    # n - k = t(k - t) + 1 kills the subtracted fraction; needs n > (t+1)(k-t+1)
    for k, t in [(5, 1), (6, 2), (7, 3)]:
        n = k + t * (k - t) + 1
        if n > (t + 1) * (k - t + 1):
            assert layer_bound(n, k, t).entry1 == 1
    with pytest.raises(ValueError):
        layer_bound(6, 3, 1)
    with pytest.raises(ValueError):
        layer_bound(10, 3, 3)


def test_layer_bound_entries_below_one_on_grid():
    for k in range(2, 8):
        for t in range(1, k):
            for n in range((t + 1) * (k - t + 1) + 1, 60):
                v = layer_bound(n, k, t)
                assert v.max == max(v.entry1, v.entry2)
                if n - k > t * (k - t) + 1:
                    assert v.entry1 < 1
                assert v.entry2 < 1 or t >= binomial(n - k - 1, k - t)


def test_layer_bound_dominates_nontrivial_extremal_layers():
    # H_1 and H_2 are the extremal nontrivial families, so both ratios sit under the bound
    for k in range(2, 6):
        for t in range(1, k):
            for n in range((t + 1) * (k - t + 1) + 1, 22):
                cap = layer_bound(n, k, t).max
                top = binomial(n - t, k - t)
                assert Fraction(len(C.h1(n, k, t)), top) <= cap
                assert Fraction(len(C.h2(n, k, t)), top) <= cap


def test_coarse_layer_bound():
    assert coarse_layer_bound(10, 3, 1) == 32
    assert coarse_layer_bound(12, 5, 4) == 6
    assert coarse_layer_bound(20, 4, 2) == 85
    assert len(C.h1(10, 3, 1)) == 22 <= 32


def test_product_bound_examples():
    S = C.star(10, 3, 1)
    v = product_bound_check(S, S, 1)
    assert (v.product, v.bound, v.applicable, v.holds) == (36 * 36, 36 ** 2, True, True)
    S2 = C.star(12, 4, 2)
    v = product_bound_check(S2, S2, 2)
    assert v.product == v.bound == binomial(10, 2) ** 2
    assert v.cross_ok and not v.applicable
    assert v.status.startswith("inapplicable")
    assert product_bound_check(C.star(14, 4, 2), C.star(14, 4, 2), 2).applicable  # 14 >= 13.52
    single = Family.from_sets(9, 3, [(1, 2, 3)])
    v = product_bound_check(single, single, 3)
    assert v.product == v.bound == 1 and v.applicable and v.holds


def test_product_bound_not_cross():
    A = Family.from_sets(10, 2, [(1, 2)])
    B = Family.from_sets(10, 2, [(3, 4)])
    v = product_bound_check(A, B, 1)
    assert not v.cross_ok
    assert "not cross" in v.status


def test_product_bound_on_cross_intersecting_pairs():
    # the s-star and any family inside it are cross-s-intersecting
    for n, k, s in [(12, 3, 1), (14, 3, 2), (16, 4, 3)]:
        A, B = C.star(n, k, s + 1), C.star(n, k, s)
        v = product_bound_check(A, B, s)
        assert v.cross_ok and v.applicable and v.holds


def test_sharpness_examples():
    assert sharpness_bound(5, 3, 1) == Fraction(4, 3) == 1 + Fraction(2 * (4 - 2), 4 * 3)
    assert sharpness_bound(3, 2, 1) == Fraction(3, 2)
    for k, t in [(3, 1), (5, 2), (6, 3)]:
        assert sharpness_bound(k + (k - t) * (t + 1), k, t) == 1
    with pytest.raises(ValueError):
        sharpness_bound(3, 3, 1)


def test_sharpness_is_a_lower_bound_on_grid():
    for k in range(3, 7):
        for t in range(1, k - 1):
            for n in range(k + 1, 41):
                if n < t + 2:
                    continue
                phi = phi_direct(C.j_family(n, k, t))
                b = sharpness_bound(n, k, t)
                assert phi >= b
                assert (b > 1) == (k < n < k + (k - t) * (t + 1))
                if k < n < k + (k - t) * (t + 1):
                    assert phi > 1
                if n >= (t + 1) * (k - t + 1) and n >= k + (k - t) * (t + 1):
                    assert len(C.j_family(n, k, t)) <= binomial(n - t, k - t)


def test_sharpness_lower_bound_from_partition():
    # X = members containing [t+2], Y = the rest; X scores at i >= t+1, Y at i >= t
    for n, k, t in [(7, 4, 1), (9, 5, 2), (12, 6, 3)]:
        J = C.j_family(n, k, t)
        prof = layer_profile(J)
        x = binomial(n - t - 2, k - t - 2)
        assert prof[t + 1] >= x
        direct = Fraction(len(J) - x, binomial(n - t, k - t)) + Fraction(x, binomial(n - t - 1, k - t - 1))
        assert direct == sharpness_bound(n, k, t)


def test_counterexample_window():
    assert counterexample_window(3) == (1, 3, 7)
    assert counterexample_window(4) == (2, 4, 10)
    assert counterexample_window(6) == (3, 6, 18)
    with pytest.raises(ValueError):
        counterexample_window(2)


def test_deficit_closed_form():
    assert j_deficit(5, 3, 1) == 1
    assert j_deficit(6, 3, 1) == 0
    assert j_deficit(7, 3, 1) == -2
