import numpy as np
import pytest
from hypothesis import given, strategies as st

from hvms.indexcore import (
    build_index_set,
    inv_power,
    level_indices,
    monomial,
    set_size,
    shift,
    shift_matrix,
    size_to_order,
    support,
)


def test_canonical_order_small():
    assert build_index_set(1).indices == ((1, 0), (0, 1))
    assert build_index_set(2).indices == ((1, 0), (0, 1), (2, 0), (1, 1), (0, 2))


def test_cardinality_n3():
    # independent oracle: enumerate all pairs with 1 <= n1+n2 <= 3
    brute = {(i, j) for i in range(4) for j in range(4) if 1 <= i + j <= 3}
    idx = build_index_set(3)
    assert len(idx) == 9 == len(brute)
    assert set(idx.indices) == brute


def test_rejects_nonpositive_size():
    with pytest.raises(ValueError):
        build_index_set(0)


@given(st.integers(min_value=1, max_value=12), st.integers(min_value=1, max_value=12))
def test_nesting(M, N):
    if M > N:
        M, N = N, M
    big = build_index_set(N)
    small = build_index_set(M)
    assert big.indices[: len(small)] == small.indices
    assert big.truncate(M).indices == small.indices


@given(st.integers(min_value=1, max_value=10))
def test_size_formula(N):
    assert set_size(N) == len(build_index_set(N))
    assert size_to_order(set_size(N)) == N


def test_size_to_order_rejects_bad_sizes():
    with pytest.raises(ValueError):
        size_to_order(3)


def test_positions_total():
    idx = build_index_set(4)
    for i, n in enumerate(idx):
        assert idx.position(n) == i
    with pytest.raises(ValueError):
        idx.position((5, 0))


def test_levels():
    idx = build_index_set(3)
    assert idx.level(2) == ((2, 0), (1, 1), (0, 2))
    assert level_indices(1) == ((1, 0), (0, 1))


def test_shift_single_indicators():
    # indicator of (1,0) shifted in direction 1 lands on (2,0)
    src = build_index_set(1)
    f = np.zeros(len(src))
    f[src.position((1, 0))] = 1.0
    out = shift(f, 1)
    dst = build_index_set(2)
    expect = np.zeros(len(dst))
    expect[dst.position((2, 0))] = 1.0
    assert np.array_equal(out, expect)
    # indicator of (0,1) shifted in direction 1 lands on (1,1)
    g = np.zeros(len(src))
    g[src.position((0, 1))] = 1.0
    out = shift(g, 1)
    expect = np.zeros(len(dst))
    expect[dst.position((1, 1))] = 1.0
    assert np.array_equal(out, expect)


@given(st.integers(min_value=2, max_value=6), st.integers(min_value=0, max_value=10))
def test_shift_first_column_vanishes(N, seed):
    # (S_1 f)(0, k) = 0 for every f: (0,k) - e1 never lies in the source set
    rng = np.random.default_rng(seed)
    f = rng.normal(size=set_size(N - 1))
    out = shift(f, 1)
    dst = build_index_set(N)
    for k in range(1, N + 1):
        assert out[dst.position((0, k))] == 0.0
    out2 = shift(f, 2)
    for k in range(1, N + 1):
        assert out2[dst.position((k, 0))] == 0.0


@given(st.integers(min_value=2, max_value=6), st.integers(min_value=1, max_value=2))
def test_shift_injective(N, d):
    S = shift_matrix(N, d)
    # columns are distinct standard basis vectors
    assert np.linalg.matrix_rank(S) == set_size(N - 1)
    assert np.all(S.sum(axis=0) == 1.0)


def test_shift_dimension_mismatch():
    with pytest.raises(ValueError):
        shift(np.zeros(3), 1)
    with pytest.raises(ValueError):
        shift(np.zeros((2, 2)), 1)


def test_monomial_and_support():
    assert monomial((2j, 3.0), (2, 1)) == (2j) ** 2 * 3.0
    assert inv_power((2.0, 4.0), (1, 1)) == 1 / 8.0
    f = np.zeros(set_size(2))
    f[build_index_set(2).position((1, 1))] = 2.0
    assert support(f) == ((1, 1),)
