"""Graded two-variable multi-index sets and their shift operators.

A multi-index is a pair ``n = (n1, n2)`` of nonnegative integers with total
degree ``|n| = n1 + n2``.  The set of all indices with ``1 <= |n| <= N`` is
kept in a fixed canonical order -- ascending degree, descending first
component within a degree:

    (1,0), (0,1), (2,0), (1,1), (0,2), (3,0), ...

Every matrix and coefficient vector in this package is laid out in that
order, and the set of size ``M`` is always a prefix of the set of size
``N >= M``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

Index = tuple[int, int]

E1: Index = (1, 0)
E2: Index = (0, 1)


def grade(n: Index) -> int:
    """Total degree |n| = n1 + n2."""
    return n[0] + n[1]


def add(m: Index, n: Index) -> Index:
    return (m[0] + n[0], m[1] + n[1])


def set_size(N: int) -> int:
    """Number of indices with 1 <= |n| <= N, equal to N (N + 3) / 2."""
    return N * (N + 3) // 2


def size_to_order(size: int) -> int:
    """Inverse of :func:`set_size`; raises if ``size`` is not attained."""
    N = int(round((-3 + np.sqrt(9 + 8 * size)) / 2))
    for cand in (N - 1, N, N + 1):
        if cand >= 0 and set_size(cand) == size:
            return cand
    raise ValueError(f"{size} is not the cardinality of any graded index set")


def level_indices(l: int) -> tuple[Index, ...]:
    """Indices of degree exactly l, in canonical (descending n1) order."""
    return tuple((n1, l - n1) for n1 in range(l, -1, -1))


def monomial(z, n: Index):
    """z^n = z1^n1 * z2^n2; works for complex, float and mpmath scalars."""
    return z[0] ** n[0] * z[1] ** n[1]


def inv_power(b, n: Index):
    """1 / b^n for b with nonzero entries."""
    return 1 / monomial(b, n)


@dataclass(frozen=True)
class IndexSet:
    """The indices {n : 1 <= |n| <= N} in canonical order with O(1) lookup."""

    N: int
    indices: tuple[Index, ...]
    _pos: dict[Index, int] = field(repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)

    def __contains__(self, n: Index) -> bool:
        return n in self._pos

    def position(self, n: Index) -> int:
        try:
            return self._pos[n]
        except KeyError:
            raise ValueError(f"index {n} does not lie in the set of size {self.N}") from None

    def level(self, l: int) -> tuple[Index, ...]:
        if not 1 <= l <= self.N:
            raise ValueError(f"level {l} out of range 1..{self.N}")
        return self.indices[self.level_slice(l)]

    def level_slice(self, l: int) -> slice:
        """Positions of the degree-l block inside the canonical layout."""
        return slice(set_size(l - 1), set_size(l))

    def truncate(self, M: int) -> "IndexSet":
        """The size-M set; a prefix of this one for M <= N."""
        if M > self.N:
            raise ValueError(f"cannot truncate a size-{self.N} set to larger size {M}")
        return build_index_set(M)


@lru_cache(maxsize=None)
def build_index_set(N: int) -> IndexSet:
    """Construct (and cache) the canonical index set of size N >= 1."""
    if not isinstance(N, (int, np.integer)) or N < 1:
        raise ValueError("index set size must be a positive integer")
    idx: list[Index] = []
    for l in range(1, N + 1):
        idx.extend(level_indices(l))
    return IndexSet(int(N), tuple(idx), {n: i for i, n in enumerate(idx)})


@lru_cache(maxsize=None)
def shift_matrix(N: int, direction: int) -> np.ndarray:
    """0/1 matrix of the shift S_d from coefficients on the size-(N-1) set
    into the size-N set: (S_d f)(n) = f(n - e_d) when defined, else 0."""
    if N < 2:
        raise ValueError("shift operators need N >= 2")
    if direction not in (1, 2):
        raise ValueError("direction must be 1 or 2")
    src = build_index_set(N - 1)
    dst = build_index_set(N)
    e = E1 if direction == 1 else E2
    S = np.zeros((len(dst), len(src)))
    for j, n in enumerate(src):
        S[dst.position(add(n, e)), j] = 1.0
    S.setflags(write=False)
    return S


def shift(f, direction: int) -> np.ndarray:
    """Apply S_d to a coefficient vector on the size-(N-1) set.

    The source size is inferred from ``len(f)``; a length that is not the
    cardinality of any graded index set is a dimension mismatch.
    """
    f = np.asarray(f)
    if f.ndim != 1:
        raise ValueError("coefficient vector must be one-dimensional")
    N = size_to_order(f.shape[0]) + 1
    return shift_matrix(N, direction) @ f


def support(f, N: int | None = None, tol: float = 0.0) -> tuple[Index, ...]:
    """Indices where the coefficient vector is nonzero (|f(n)| > tol)."""
    f = np.asarray(f)
    idx = build_index_set(N if N is not None else size_to_order(f.shape[0]))
    if len(idx) != f.shape[0]:
        raise ValueError("coefficient vector length does not match the index set")
    return tuple(n for i, n in enumerate(idx) if abs(f[i]) > tol)
