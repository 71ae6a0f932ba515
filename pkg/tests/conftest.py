"""Shared builders for the test-suite: valid pairs and surgical corruptions.

Each corruption breaks exactly one of the four membership conditions while
provably leaving the other three intact (the entries touched sit outside the
index ranges the other conditions inspect).
"""

from __future__ import annotations

import numpy as np

from hvms import HankelPair, random_realization, gram_of
from hvms.hankel_pair import C1, C2, C3, C4
from hvms.indexcore import build_index_set, set_size


def valid_pair(rng: np.random.Generator, N: int, dim: int) -> HankelPair:
    return gram_of(random_realization(rng, N, dim))


def full_rank_pair(rng: np.random.Generator, N: int) -> HankelPair:
    """A verified pair whose summed Gram matrix has full numerical rank, so
    the kernel condition is vacuous and stays vacuous under small edits."""
    size = set_size(N)
    for _ in range(20):
        pair = valid_pair(rng, N, size + 2)
        vals = np.linalg.eigvalsh(pair.gram)
        if vals[0] > 1e-6 * vals[-1]:
            return pair
    raise AssertionError("could not draw a full-rank pair")


def _scale(pair: HankelPair) -> float:
    return 1.0 + max(np.abs(pair.a1).max(), np.abs(pair.a2).max())


def corrupt_psd(pair: HankelPair, rng: np.random.Generator) -> HankelPair:
    """Dip a mixed top-degree diagonal entry of a1 below zero.

    That entry is never read by the shift-consistency equations (its column
    has top degree) nor by the corner checks (it is mixed), and on a
    full-rank base the kernel condition stays vacuous.
    """
    idx = build_index_set(pair.N)
    p = idx.position((1, pair.N - 1))
    a1 = pair.a1.copy()
    a1[p, p] -= a1[p, p].real + 0.1 * _scale(pair)
    return HankelPair(pair.N, a1, pair.a2, pair.tol)


def corrupt_shift_consistency(pair: HankelPair, rng: np.random.Generator) -> HankelPair:
    """Congruence-scale a mixed top-degree row/column of a1.

    Congruence preserves positivity and Hermiticity and misses the corner
    diagonals, but rescales entries a1[(1,N-1), n] that one side of the
    shift-consistency identity reads.
    """
    idx = build_index_set(pair.N)
    p = idx.position((1, pair.N - 1))
    k = set_size(pair.N - 1)
    assert np.abs(pair.a1[p, :k]).max() > 1e-6 * _scale(pair), "degenerate base pair"
    d = np.ones(len(idx))
    d[p] = 1.3
    a1 = pair.a1 * np.outer(d, d)
    return HankelPair(pair.N, a1, pair.a2, pair.tol)


def corrupt_corners(pair: HankelPair, rng: np.random.Generator, side: int = 1) -> HankelPair:
    """Lift one corner diagonal: a1 at (0,N) or a2 at (N,0).

    A diagonal bump keeps both matrices positive, and those rows/columns sit
    outside every index slot the shift conditions read.
    """
    idx = build_index_set(pair.N)
    bump = 0.1 * _scale(pair)
    if side == 1:
        p = idx.position((0, pair.N))
        a1 = pair.a1.copy()
        a1[p, p] += bump
        return HankelPair(pair.N, a1, pair.a2, pair.tol)
    p = idx.position((pair.N, 0))
    a2 = pair.a2.copy()
    a2[p, p] += bump
    return HankelPair(pair.N, pair.a1, a2, pair.tol)


def kernel_violating_pair(N: int, a: float, weight: float = 1.0) -> HankelPair:
    """A pair passing everything except kernel shift-invariance.

    The a1 block is the one-variable moment chain of a point mass at ``a``
    on the (k,0) line plus a rank-one bump at (N,0): the chain contributes a
    kernel vector with a nonzero (N-1,0) component, whose shift hits the
    bump.  For N = 2 the chain must be dropped (its kernel has no such
    component), leaving the pure bump.
    """
    if N < 2:
        raise ValueError("kernel condition is vacuous for N = 1")
    if N == 2 and a != 0.0:
        raise ValueError("size 2 needs the pure-bump pattern (a = 0)")
    size = set_size(N)
    idx = build_index_set(N)
    g = np.zeros(size)
    if a != 0.0:
        for k in range(1, N + 1):
            g[idx.position((k, 0))] = a ** (k - 1)
    a1 = weight * np.outer(g, g).astype(complex)
    p = idx.position((N, 0))
    a1[p, p] += weight
    return HankelPair(N, a1, np.zeros((size, size), dtype=complex))


CORRUPTIONS = {
    C1: corrupt_psd,
    C2: corrupt_shift_consistency,
    C3: corrupt_corners,
}
