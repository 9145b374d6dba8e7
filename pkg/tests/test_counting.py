import itertools
import math

import pytest
from hypothesis import given, strategies as st

from bunkbed.counting import (
    Triplet,
    boundary_count,
    brute_force_boundary,
    brute_force_counts,
    cdiff_sign,
    check_factorial_indicator,
    check_identity_even,
    check_identity_odd,
    count_c1,
    count_c1_binomial,
    count_c2,
    count_c2_by_cases,
    count_cdiff,
    count_cdiff_from_counts,
    count_total,
    find_i0,
    valid_triplets,
)


def test_boundary_examples():
    assert boundary_count(2, Triplet(1, 0, 0)) == 2
    assert boundary_count(2, Triplet(2, 2, 2)) == 0
    # the direct cut-edge count gives 10 here
    assert boundary_count(4, Triplet(2, 2, 1)) == 10
    assert brute_force_boundary(4, Triplet(2, 2, 1)) == 10


def test_count_examples():
    assert count_total(2, Triplet(2, 1, 1)) == 2
    assert count_total(2, Triplet(1, 1, 0)) == 1
    for n in range(1, 6):
        assert count_total(n, Triplet(1, 0, 0)) == 1
    assert count_c1(2, Triplet(2, 0, 0)) == 1
    assert count_c2(2, Triplet(1, 1, 0)) == 1
    assert count_c2(2, Triplet(1, 1, 1)) == 0


def test_invalid_triplets():
    for n, t in [(2, Triplet(0, 0, 0)), (2, Triplet(2, 2, 1)), (3, Triplet(1, 2, 2))]:
        with pytest.raises(ValueError):
            count_c1(n, t)
        with pytest.raises(ValueError):
            boundary_count(n, t)


@pytest.mark.parametrize("n", range(1, 8))
def test_closed_forms_match_brute_force(n):
    brute = brute_force_counts(n)
    for t in valid_triplets(n):
        total, c1, c2 = brute.get(t, (0, 0, 0))
        assert count_total(n, t) == total
        assert count_c1(n, t) == c1
        assert count_c2(n, t) == c2
        assert count_c2_by_cases(n, t) == c2
        assert count_c1_binomial(n, t) == c1
    assert set(brute) <= set(valid_triplets(n))


@pytest.mark.parametrize("n", range(1, 6))
def test_boundary_matches_cut_edges(n):
    for t in valid_triplets(n):
        assert boundary_count(n, t) == brute_force_boundary(n, t)


def test_cdiff_examples():
    assert count_cdiff(4, 2, 0, 0, 1) == -2
    assert count_cdiff(4, 2, 1, 0, 1) == 2
    assert cdiff_sign(4, 2, 0, 0, 1) == -1
    assert cdiff_sign(4, 2, 1, 0, 1) == 1
    assert cdiff_sign(5, 3, 0, 0, 3) == 0
    with pytest.raises(ValueError):
        count_cdiff(4, 2, 0, 2, 1)


def _cdiff_cells(n):
    for z in range(1, n + 1):
        for k in range(z, n + 1):
            for eps in (0, 1):
                for i in range(0, k - z + 1):
                    x, y = k + i + eps, k - i
                    if x + y - z <= n:
                        yield k, i, eps, z


@pytest.mark.parametrize("n", range(2, 31))
def test_sign_coherence(n):
    for k, i, eps, z in _cdiff_cells(n):
        c = count_cdiff(n, k, i, eps, z)
        assert cdiff_sign(n, k, i, eps, z) == (c > 0) - (c < 0)


@pytest.mark.parametrize("n", range(2, 9))
def test_cdiff_closed_form_matches_counts(n):
    for k, i, eps, z in _cdiff_cells(n):
        assert count_cdiff(n, k, i, eps, z) == count_cdiff_from_counts(n, k + i + eps, k - i, z)


def test_find_i0_examples():
    assert find_i0(3, 0, 3) == 0
    assert find_i0(2, 0, 1) == 1
    assert find_i0(8, 0, 1) == 2
    with pytest.raises(ValueError):
        find_i0(1, 0, 2)


@given(st.integers(1, 400), st.integers(0, 400), st.sampled_from((0, 1)))
def test_find_i0_matches_linear_search(z, extra, eps):
    k = z + extra
    i = 0
    while (2 * i + eps) ** 2 < 2 * k + eps - 2 * z:
        i += 1
    assert find_i0(k, eps, z) == i


@pytest.mark.parametrize("n", range(2, 31))
def test_boundary_shrinks_with_imbalance(n):
    groups = {}
    for t in valid_triplets(n):
        groups.setdefault((t.x + t.y, t.z), []).append(t)
    for members in groups.values():
        for a, b in itertools.permutations(members, 2):
            if abs(a.x - a.y) > abs(b.x - b.y):
                assert boundary_count(n, a) + 2 <= boundary_count(n, b)


def test_boundary_imbalance_direction_witness():
    # the more unbalanced class has the smaller cut, never the larger one
    assert boundary_count(4, Triplet(3, 1, 1)) == 8
    assert boundary_count(4, Triplet(2, 2, 1)) == 10


@given(st.integers(0, 40), st.integers(0, 40))
def test_factorial_indicator(x, k):
    assert check_factorial_indicator(x, k)


def test_factorial_indicator_product_range_matters():
    # a product running through j = k would give 1 here instead of 1/2
    x, k = 3, 1
    assert check_factorial_indicator(x, k)
    assert math.prod(x - j for j in range(k + 1)) / math.factorial(x) != 1 / math.factorial(x - k)


def test_identity_small_cells():
    assert check_identity_even(2, 1)
    assert check_identity_odd(2, 1)
    for z in range(1, 6):
        assert check_identity_even(z, z)
        assert check_identity_odd(z, z)


def test_identities_exhaustive_to_60():
    for k in range(1, 61):
        for z in range(1, k + 1):
            assert check_identity_even(k, z)
            assert check_identity_odd(k, z)


@given(st.integers(1, 12), st.integers(0, 12), st.integers(0, 6))
def test_identity_at_larger_n(z, extra, slack):
    k = z + extra
    n = 2 * k + 1 - z + slack
    assert check_identity_even(k, z, n)
    assert check_identity_odd(k, z, n)
