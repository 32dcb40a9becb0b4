from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import log2

import hypothesis.strategies as st
import pytest
from hypothesis import given

from conftest import rational_matrices
from linrig.acceptance import generic_matrix, generic_symmetric
from linrig.cyclotomic import root_of_unity
from linrig.families import CauchyParams, VandermondeParams, cauchy, dft, m_w, vandermonde
from linrig.matrix import Matrix, minor, rank
from linrig.rigidity import (
    RigidityBound,
    border_membership_upper,
    cdft_upper,
    eigen_upper,
    is_transpose_cycle,
    lower_hitting,
    max_border_rigid_nm2,
    max_border_rigid_r1,
    min_hitting_set,
    schur_upper,
    shokrollahi_threshold,
    verify_changes,
)


def brute_hitting(sets):
    bits = sorted({b for s in sets for b in range(s.bit_length()) if s >> b & 1})
    for k in range(len(bits) + 1):
        for T in combinations(bits, k):
            mask = sum(1 << b for b in T)
            if all(s & mask for s in sets):
                return k
    raise AssertionError("unreachable")


# ---------------------------------------------------------------- RigidityBound

def test_bound_invariants():
    with pytest.raises(ValueError):
        RigidityBound(1, lower=3, upper=2)
    d = RigidityBound(1, 0, 1, {(0, 1): Fraction(1, 2)}).to_json()
    assert d["witness_upper"] == [{"row": 1, "col": 2, "value": "1/2"}]


def test_verify_changes_rejects_non_changes():
    M = Matrix([[1, 2], [3, 4]])
    assert verify_changes(M, 1, {(1, 1): Fraction(6)})
    assert not verify_changes(M, 1, {(1, 1): Fraction(4)})
    assert not verify_changes(M, 1, {(1, 1): Fraction(5)})


# ---------------------------------------------------------------- Schur

def test_schur_examples():
    b = schur_upper(generic_matrix(4, 0), 2)
    assert b.upper == 4 and verify_changes(generic_matrix(4, 0), 2, b.changes)
    assert schur_upper(generic_matrix(4, 1), 4).upper == 0
    D = dft(4)
    b = schur_upper(D, 2)
    assert b.upper == 4 and rank(D.with_entries(b.changes)) <= 2


@given(rational_matrices(min_n=2, max_n=5), st.data())
def test_schur_property(M, data):
    r = data.draw(st.integers(0, M.nrows))
    b = schur_upper(M, r)
    assert b.upper <= (M.nrows - r) ** 2
    assert len(b.changes) == b.upper
    assert verify_changes(M, r, b.changes)


# ---------------------------------------------------------------- eigenvalues

def test_eigen_dft16():
    i = root_of_unity(16) ** 4
    D = dft(16).scale(Fraction(1, 4))
    res = eigen_upper(D, [1, -1, i, -i])
    assert res.multiplicities == (5, 4, 4, 3)
    assert res.eigenvalue == 1 and res.multiplicity == 5
    assert res.bound.r == 11 and res.bound.upper == 16
    assert res.nontrivial


def test_eigen_dft4_pattern():
    # DFT_4 / 2 has eigenvalue multiplicities (m+1, m, m, m-1) with m = 1
    i = root_of_unity(4)
    res = eigen_upper(dft(4), [2, -2, 2 * i, -2 * i])
    assert res.multiplicities == (2, 1, 1, 0)
    assert res.bound.r == 2 and not res.nontrivial


def test_eigen_trivial_cases():
    res = eigen_upper(Matrix.identity(4), [1])
    assert res.multiplicity == 4 and res.bound.r == 0 and res.bound.upper == 4
    res = eigen_upper(generic_matrix(4, 0), [0])
    assert res.multiplicity == 0 and res.bound.r == 4 and res.bound.upper == 0
    assert not res.nontrivial


# ---------------------------------------------------------------- CDFT

@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_cdft_counts(p):
    M, b = cdft_upper(p)
    assert b.upper == p * p - 3 * p + 3
    assert rank(M.with_entries(b.changes)) == 1


def test_cdft_p5_is_m_w():
    M, b = cdft_upper(5)
    assert M == m_w(root_of_unity(5)) and b.upper == 13


def test_cdft_rejects_composite():
    with pytest.raises(ValueError):
        cdft_upper(9)


# ---------------------------------------------------------------- deciders

def test_r1_cauchy_and_vandermonde():
    assert max_border_rigid_r1(cauchy(CauchyParams.random(4, seed=1)))
    assert max_border_rigid_r1(vandermonde(VandermondeParams.random(5, seed=2)))


@pytest.mark.parametrize("n", [3, 4, 5])
def test_r1_symmetric_fails_on_transpose_cycle(n):
    res = max_border_rigid_r1(generic_symmetric(n, 0))
    assert not res
    assert is_transpose_cycle(res.witness)
    assert res.witness.k >= 3


def test_r1_symmetric_transpose_cycle_value():
    for n in (3, 4, 5):
        M = generic_symmetric(n, 1)
        a = b = Fraction(1)
        for t in range(n):
            a *= M[t, (t + 1) % n]
            b *= M[(t + 1) % n, t]
        assert a == b


def test_r1_guards():
    with pytest.raises(ValueError):
        max_border_rigid_r1(Matrix.identity(7))
    with pytest.raises(ValueError):
        max_border_rigid_r1(Matrix([[1]]))


def test_r1_zero_entry_pattern():
    # a 2x2 block of zeros makes its determinant binomial vanish
    M = generic_matrix(3, 0).with_entries({(0, 0): 0, (0, 1): 0, (1, 0): 0, (1, 1): 0})
    res = max_border_rigid_r1(M)
    assert not res and res.witness.k == 2


def test_nm2_cauchy_vandermonde():
    assert max_border_rigid_nm2(cauchy(CauchyParams.random(5, seed=1)))
    assert max_border_rigid_nm2(vandermonde(VandermondeParams.random(5, seed=1)))


def test_nm2_rank_deficient():
    M = Matrix([[1, 2, 3, 4], [2, 4, 6, 8], [1, 0, 0, 0], [0, 0, 0, 1]])
    res = max_border_rigid_nm2(M)
    assert not res and res.stage == "minor"
    with pytest.raises(ValueError):
        max_border_rigid_nm2(Matrix.identity(3))


def test_nm2_decider_matches_search():
    # a maximally (n-2)-rigid matrix needs at least 4 changes for rank n - 2
    C = cauchy(CauchyParams.random(4, seed=3))
    assert max_border_rigid_nm2(C)
    assert border_membership_upper(C, 2, 2).upper is None


# ---------------------------------------------------------------- search

def test_border_search_planted():
    base = Matrix([[1, 2, 3], [2, 4, 6], [1, 1, 1]])
    assert rank(base) == 2
    M = base.with_entries({(1, 2): Fraction(7)})
    b = border_membership_upper(M, 2, 2)
    assert b.upper == 1 and verify_changes(M, 2, b.changes)


def test_border_search_m_w_r3():
    b = border_membership_upper(m_w(root_of_unity(5)), 3, 3)
    if b.upper is not None:
        assert b.upper <= 3 and verify_changes(m_w(root_of_unity(5)), 3, b.changes)
    else:
        assert "not complete" in b.notes[0]


@given(rational_matrices(min_n=2, max_n=4), st.data())
def test_search_sound(M, data):
    r = data.draw(st.integers(0, M.nrows - 1))
    b = border_membership_upper(M, r, 2)
    if b.upper is not None:
        assert len(b.changes) == b.upper
        assert verify_changes(M, r, b.changes)


# ---------------------------------------------------------------- hitting sets

def test_hitting_examples():
    n = 4
    lb = lower_hitting(Matrix.identity(n), 1, 10)
    assert lb.lower == n - 1
    assert lower_hitting(Matrix([[1] * 3] * 3), 1, 5).lower == 0
    assert lower_hitting(dft(5), 3, 5).lower >= 3


@given(st.lists(st.integers(1, 2 ** 9 - 1), min_size=0, max_size=12))
def test_min_hitting_set_matches_brute(sets):
    h, mask = min_hitting_set(sets)
    assert h == brute_hitting(sets)
    assert all(s & mask for s in sets)
    assert bin(mask).count("1") == h


def test_min_hitting_cap():
    sets = [1 << k for k in range(6)]
    assert min_hitting_set(sets, cap=3)[0] == 3
    with pytest.raises(ValueError):
        min_hitting_set([0])


@given(rational_matrices(min_n=2, max_n=4), st.data())
def test_lower_le_upper(M, data):
    r = data.draw(st.integers(0, M.nrows - 1))
    lo = lower_hitting(M, r, M.nrows ** 2)
    up = schur_upper(M, r)
    assert lo.lower <= up.upper


# ---------------------------------------------------------------- threshold

def test_threshold_examples():
    t = shokrollahi_threshold(8, 2)
    assert t.lo == t.hi == Fraction(32, 3) and t.rigidity_lower == 11
    t = shokrollahi_threshold(4, 1)
    assert t.lo == t.hi == 4 and t.rigidity_lower == 4
    t = shokrollahi_threshold(3, 2)
    assert t.hi < 1


@given(st.integers(2, 200), st.data())
def test_threshold_encloses_float(n, data):
    r = data.draw(st.integers(1, n - 1))
    t = shokrollahi_threshold(n, r)
    val = n * n / (4 * (r + 1)) * log2(n / r)
    assert float(t.lo) <= val * (1 + 1e-12) and val <= float(t.hi) * (1 + 1e-12)
    assert t.hi - t.lo <= Fraction(n * n, 2 ** 32)


def test_threshold_rejects():
    with pytest.raises(ValueError):
        shokrollahi_threshold(4, 4)
    with pytest.raises(ValueError):
        shokrollahi_threshold(4, 0)


@pytest.mark.parametrize("n,r", [(4, 1), (5, 2)])
def test_threshold_consistent_with_hitting(n, r):
    # for a matrix with all minors nonzero both bounds are valid lower bounds
    # and cannot exceed the universal upper bound (n - r)^2
    C = cauchy(CauchyParams.random(n, seed=0))
    t = shokrollahi_threshold(n, r)
    assert t.rigidity_lower <= (n - r) ** 2
    assert lower_hitting(C, r, (n - r) ** 2).lower <= (n - r) ** 2
