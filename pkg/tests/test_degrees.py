from __future__ import annotations

from math import comb, factorial, prod

import hypothesis.strategies as st
import pytest
from hypothesis import given

from linrig.certificates import enumerate_cycles
from linrig.degrees import (
    barnes_tb,
    count_components_r1,
    deg_closed_Dku,
    deg_join,
    deg_join_alternating,
    deg_join_recursive,
    deg_sigma,
    deg_sigma_barnes,
    deg_sigma_product,
    degree_csv,
    expected_dim,
    is_hypersurface,
)


def test_barnes_tb():
    assert barnes_tb(1) == barnes_tb(2) == 1
    assert barnes_tb(4) == 12
    assert barnes_tb(6) == prod(factorial(i) for i in range(1, 6)) == 34560


def test_deg_sigma_examples():
    assert deg_sigma(3, 1) == 6
    assert deg_sigma(4, 2) == 20
    assert deg_sigma(3, 2) == 3
    assert deg_sigma_barnes(4, 2) == 34560 // 1728


@pytest.mark.parametrize("n", range(2, 13))
def test_deg_sigma_known_families(n):
    # Segre variety: C(2n-2, n-1); determinant hypersurface: n; full space: 1
    assert deg_sigma(n, 1) == comb(2 * n - 2, n - 1)
    assert deg_sigma(n, n - 1) == n
    assert deg_sigma(n, n) == 1


def test_deg_sigma_routes_agree():
    for n in range(1, 13):
        for r in range(1, n + 1):
            assert deg_sigma_product(n, r) == deg_sigma_barnes(n, r)


def test_deg_sigma_range():
    with pytest.raises(ValueError):
        deg_sigma(3, 4)


def test_deg_join_examples():
    assert deg_join(3, 1, 1) == 5 == deg_sigma(3, 1) - 1
    assert deg_join(3, 1, 2) == 4
    assert deg_join(4, 2, 3) == 5 == 20 - (4 + 5 + 6)


def test_deg_join_errors():
    with pytest.raises(ValueError):
        deg_join(3, 1, 4)
    with pytest.raises(ValueError):
        deg_join(3, 0, 1)


def test_routes_agree_n_le_10():
    for n in range(2, 11):
        for r in range(1, n):
            for s in range(n + 1):
                assert deg_join_recursive(n, r, s) == deg_join_alternating(n, r, s)


@pytest.mark.parametrize("n", range(4, 11))
def test_nm2_degree(n):
    assert deg_join(n, n - 2, 3) == 2 * n - 3


@pytest.mark.parametrize("n", range(4, 11))
@pytest.mark.parametrize("u", [1, 2])
def test_closed_form_k2(n, u):
    assert deg_closed_Dku(n, 2, u) == deg_join(n, n - 2, 4 - u)


def test_closed_form_examples():
    assert deg_closed_Dku(4, 2, 2) == 9
    assert deg_closed_Dku(5, 2, 1) == 7
    assert deg_closed_Dku(9, 3, 1) == deg_join(9, 6, 8)
    assert deg_closed_Dku(10, 3, 2) == deg_join(10, 7, 7)
    with pytest.raises(ValueError):
        deg_closed_Dku(5, 3, 1)  # 8 scattered entries do not fit in 5 x 5
    with pytest.raises(ValueError):
        deg_closed_Dku(5, 2, 3)


@given(st.integers(3, 10), st.data())
def test_monotone_in_s(n, data):
    # strict while the bigger join has expected dimension <= n^2; past that the
    # formula no longer describes a proper subvariety and drops to 0
    r = data.draw(st.integers(1, n - 1))
    s = data.draw(st.integers(0, min(n, (n - r) ** 2) - 1))
    assert deg_join(n, r, s + 1) < deg_join(n, r, s)


def test_component_counts():
    assert count_components_r1(2) == (1, {2: 1})
    assert count_components_r1(3) == (15, {2: 9, 3: 6})
    total, per = count_components_r1(4)
    assert per[2] == 36 and total == 204 == sum(per.values())
    assert count_components_r1(5)[0] == 3940


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_component_counts_match_enumeration(n):
    total, per = count_components_r1(n)
    cyc = list(enumerate_cycles(n))
    assert len(cyc) == total
    for k, c in per.items():
        assert sum(1 for x in cyc if x.k == k) == c


def test_dimension_bookkeeping():
    assert expected_dim(5, 3, 3) == 24 and is_hypersurface(5, 3, 3)
    assert expected_dim(5, 3, 4) == 25 and not is_hypersurface(5, 3, 4)
    assert expected_dim(4, 0, 0) == 0


@given(st.integers(2, 12), st.data())
def test_hypersurface_iff_codim_one(n, data):
    r = data.draw(st.integers(0, n - 1))
    s = data.draw(st.integers(0, n * n))
    assert is_hypersurface(n, r, s) == (r * (2 * n - r) + s == n * n - 1)


def test_degree_csv():
    text, ok = degree_csv(6)
    assert ok
    lines = text.splitlines()
    assert lines[0] == "n,r,s,degree,routes"
    assert "4,2,3,5,agree" in lines
    assert degree_csv(6) == (text, ok)
