"""Candidate Hankel pairs and the four-condition membership test.

A pair of Hermitian matrices (a1, a2) indexed by the graded set of size N is
a Hankel pair when it arises as the pair of Gram matrices <Y v_n, v_m> and
<(1-Y) v_n, v_m> of a vector moment family.  Membership is decided by four
checkable conditions:

    C1  a1 and a2 are positive semi-definite;
    C2  a1[m+e1, n] + a2[m+e2, n] = a1[m, n+e1] + a2[m, n+e2]
        for all m, n of degree <= N-1 (shift consistency);
    C3  a1[(0,l),(0,l)] = a2[(l,0),(l,0)] = 0 for l = 1..N (corner vanishing);
    C4  every kernel vector of a1+a2 supported on degrees <= N-1 stays in the
        kernel after shifting: (a1 S1 + a2 S2) f = 0 (kernel shift-invariance).

This module also houses the one-variable machinery the pair test
generalizes: the Hankel-matrix moment test with its kernel clause, the
truncated finite-rank (Kronecker-type) test, and the Cauchy-transform oracle
for discrete measures.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .indexcore import Index, add, build_index_set, set_size, shift_matrix, E1, E2
from .tolerances import DEFAULT_TOL, Tolerances

C1 = "psd"
C2 = "shift_consistency"
C3 = "corner_vanishing"
C4 = "kernel_shift_invariance"
CONDITION_NAMES = (C1, C2, C3, C4)

H_PSD = "hankel_psd"
H_KERNEL = "hankel_kernel_shift"


def _hermitize(a: np.ndarray) -> np.ndarray:
    return 0.5 * (a + a.conj().T)


def _as_matrix(a, size: int, name: str) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if a.shape != (size, size):
        raise ValueError(f"{name} must be {size}x{size}, got {a.shape}")
    return a


@dataclass(frozen=True, eq=False)
class HankelPair:
    """Two Hermitian matrices on the graded index set of size N.

    Rows and columns follow the canonical index order.  Construction rejects
    matrices that are non-Hermitian beyond ``tol.hermitian`` (relative).
    """

    N: int
    a1: np.ndarray
    a2: np.ndarray
    tol: Tolerances = DEFAULT_TOL

    def __post_init__(self) -> None:
        if self.N < 1:
            raise ValueError("pair size N must be a positive integer")
        size = set_size(self.N)
        for name in ("a1", "a2"):
            a = _as_matrix(getattr(self, name), size, name)
            dev = np.abs(a - a.conj().T).max()
            scale = 1.0 + np.abs(a).max()
            if dev > self.tol.hermitian * scale:
                raise ValueError(
                    f"{name} is not Hermitian: max deviation {dev:.3e} "
                    f"exceeds {self.tol.hermitian:.1e} * {scale:.3e}"
                )
            a = _hermitize(a)
            a.setflags(write=False)
            object.__setattr__(self, name, a)

    @property
    def size(self) -> int:
        return set_size(self.N)

    @property
    def index_set(self):
        return build_index_set(self.N)

    @property
    def gram(self) -> np.ndarray:
        """The summed Gram matrix a1 + a2."""
        return self.a1 + self.a2


@dataclass(frozen=True)
class ConditionResult:
    """Outcome of a single condition: pass/fail with headroom and witness.

    ``margin`` is the signed distance to the acceptance threshold in relative
    units; positive means the condition passed with that much headroom.  A
    failure always carries a concrete witness (an eigenvalue and vector, an
    index pair with both sides, or a kernel vector with its image).
    """

    name: str
    passed: bool
    margin: float
    witness: dict | None = None
    vacuous: bool = False


@dataclass(frozen=True)
class VerdictReport:
    passed: bool
    conditions: tuple[ConditionResult, ...]

    def condition(self, name: str) -> ConditionResult:
        for c in self.conditions:
            if c.name == name:
                return c
        raise KeyError(name)

    def failing(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.conditions if not c.passed)


class VerificationError(ValueError):
    """Raised when an operation requires a verified pair but the verdict failed."""

    def __init__(self, report: VerdictReport, message: str | None = None):
        self.report = report
        failing = ", ".join(report.failing()) or "none"
        super().__init__(message or f"verification failed; failing conditions: {failing}")


def _complex_pair(x: complex) -> list[float]:
    return [float(x.real), float(x.imag)]


def _vector_pairs(v: np.ndarray) -> list[list[float]]:
    return [_complex_pair(complex(x)) for x in v]


def _check_psd(pair: HankelPair) -> ConditionResult:
    tol = pair.tol.psd
    worst_rel = np.inf
    witness = None
    for name, a in (("a1", pair.a1), ("a2", pair.a2)):
        vals, vecs = np.linalg.eigh(a)
        scale = 1.0 + max(abs(vals[0]), abs(vals[-1]))
        rel = vals[0] / scale
        if rel < worst_rel:
            worst_rel = rel
            witness = {
                "matrix": name,
                "eigenvalue": float(vals[0]),
                "vector": _vector_pairs(vecs[:, 0]),
            }
    return ConditionResult(C1, bool(worst_rel >= -tol), float(tol + worst_rel), witness)


def _check_shift_consistency(pair: HankelPair) -> ConditionResult:
    if pair.N == 1:
        return ConditionResult(C2, True, pair.tol.equality, None, vacuous=True)
    idx = pair.index_set
    inner = build_index_set(pair.N - 1)
    p = idx.position
    rows_e1 = [p(add(m, E1)) for m in inner]
    rows_e2 = [p(add(m, E2)) for m in inner]
    rows = [p(m) for m in inner]
    cols = rows
    cols_e1 = rows_e1
    cols_e2 = rows_e2
    lhs = pair.a1[np.ix_(rows_e1, cols)] + pair.a2[np.ix_(rows_e2, cols)]
    rhs = pair.a1[np.ix_(rows, cols_e1)] + pair.a2[np.ix_(rows, cols_e2)]
    resid = np.abs(lhs - rhs)
    scale = 1.0 + max(np.abs(pair.a1).max(), np.abs(pair.a2).max())
    i, j = np.unravel_index(int(resid.argmax()), resid.shape)
    worst = resid[i, j] / scale
    witness = {
        "m": list(inner.indices[i]),
        "n": list(inner.indices[j]),
        "lhs": _complex_pair(complex(lhs[i, j])),
        "rhs": _complex_pair(complex(rhs[i, j])),
    }
    return ConditionResult(C2, bool(worst <= pair.tol.equality), float(pair.tol.equality - worst), witness)


def _check_corners(pair: HankelPair) -> ConditionResult:
    p = pair.index_set.position
    scale = 1.0 + max(np.abs(pair.a1).max(), np.abs(pair.a2).max())
    worst = -1.0
    witness = None
    for l in range(1, pair.N + 1):
        for name, a, n in (("a1", pair.a1, (0, l)), ("a2", pair.a2, (l, 0))):
            val = abs(a[p(n), p(n)]) / scale
            if val > worst:
                worst = val
                witness = {"matrix": name, "index": list(n), "value": float(a[p(n), p(n)].real)}
    return ConditionResult(C3, bool(worst <= pair.tol.equality), float(pair.tol.equality - worst), witness)


def _near_nullspace(B: np.ndarray, tol: float) -> tuple[np.ndarray, float]:
    """Orthonormal basis of the numerical nullspace of a rectangular matrix,
    chosen as right singular vectors with sigma <= tol * (1 + sigma_max)."""
    _, sig, vh = np.linalg.svd(B)
    smax = sig[0] if sig.size else 0.0
    cut = tol * (1.0 + smax)
    null = [vh[i].conj() for i in range(vh.shape[0]) if (sig[i] if i < sig.size else 0.0) <= cut]
    basis = np.array(null).T if null else np.zeros((B.shape[1], 0))
    return basis, float(smax)


def _check_kernel_shift(pair: HankelPair) -> ConditionResult:
    if pair.N == 1:
        return ConditionResult(C4, True, pair.tol.kernel, None, vacuous=True)
    k = set_size(pair.N - 1)
    G = pair.gram
    # Vectors supported on degrees <= N-1 occupy the first k coordinates.
    basis, _ = _near_nullspace(G[:, :k], pair.tol.kernel)
    if basis.shape[1] == 0:
        return ConditionResult(C4, True, pair.tol.kernel, None, vacuous=True)
    S1 = shift_matrix(pair.N, 1)
    S2 = shift_matrix(pair.N, 2)
    concl = pair.a1 @ S1 + pair.a2 @ S2
    scale = 1.0 + max(np.abs(pair.a1).max(), np.abs(pair.a2).max())
    images = concl @ basis
    norms = np.linalg.norm(images, axis=0) / scale
    worst = int(norms.argmax())
    witness = {
        "kernel_vector": _vector_pairs(basis[:, worst]),
        "conclusion_norm": float(norms[worst] * scale),
        "kernel_dimension": int(basis.shape[1]),
    }
    return ConditionResult(
        C4, bool(norms[worst] <= pair.tol.kernel), float(pair.tol.kernel - norms[worst]), witness
    )


def verify_hankel_pair(pair: HankelPair) -> VerdictReport:
    """Decide membership via conditions C1-C4, always evaluating all of them.

    For N = 1 the shift conditions C2 and C4 are vacuous and reported as
    such.  Hermiticity is a constructor invariant of :class:`HankelPair`, so
    non-Hermitian input never reaches the condition checks.
    """
    conditions = (
        _check_psd(pair),
        _check_shift_consistency(pair),
        _check_corners(pair),
        _check_kernel_shift(pair),
    )
    return VerdictReport(all(c.passed for c in conditions), conditions)


def kronecker_rank(pair: HankelPair) -> int:
    """Numerical rank of a1 + a2 at the pair's rank tolerance.

    Finite (small) rank across truncations is the matrix fingerprint of a
    rational function behind the pair.
    """
    vals = np.linalg.eigvalsh(pair.gram)
    cut = pair.tol.rank * max(1.0, float(vals[-1]) if vals.size else 0.0)
    return int(np.sum(vals > cut))


# ----------------------------------------------------------------------------
# One-variable Hankel machinery
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class Moments1D:
    """Asymptotic coefficients rho_1 .. rho_{2N-1} of a one-variable function."""

    rho: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.rho) % 2 == 0 or len(self.rho) < 1:
            raise ValueError("moment vector must have odd length 2N-1")
        object.__setattr__(self, "rho", tuple(float(r) for r in self.rho))

    @property
    def N(self) -> int:
        return (len(self.rho) + 1) // 2

    def hankel_matrix(self) -> np.ndarray:
        """H[i, j] = -rho_{i+j+1}, the N-by-N moment matrix."""
        N = self.N
        H = np.empty((N, N))
        for i in range(N):
            for j in range(N):
                H[i, j] = -self.rho[i + j]
        return H


def hamburger_1d(moments: Moments1D, tol: Tolerances = DEFAULT_TOL) -> VerdictReport:
    """One-variable moment test: H PSD plus the kernel shift clause.

    The kernel clause requires that whenever (c_1, ..., c_{N-1}, 0) lies in
    the kernel of H, the shifted vector (0, c_1, ..., c_{N-1}) does too.
    """
    H = moments.hankel_matrix()
    N = moments.N
    vals, vecs = np.linalg.eigh(H)
    scale = 1.0 + max(abs(vals[0]), abs(vals[-1]))
    rel = vals[0] / scale
    psd = ConditionResult(
        H_PSD,
        bool(rel >= -tol.psd),
        float(tol.psd + rel),
        {"eigenvalue": float(vals[0]), "vector": _vector_pairs(vecs[:, 0])},
    )
    if N == 1:
        kernel = ConditionResult(H_KERNEL, True, tol.kernel, None, vacuous=True)
    else:
        basis, _ = _near_nullspace(H[:, : N - 1], tol.kernel)
        if basis.shape[1] == 0:
            kernel = ConditionResult(H_KERNEL, True, tol.kernel, None, vacuous=True)
        else:
            shifted = np.zeros((N, basis.shape[1]), dtype=basis.dtype)
            shifted[1:, :] = basis
            norms = np.linalg.norm(H @ shifted, axis=0) / scale
            worst = int(norms.argmax())
            kernel = ConditionResult(
                H_KERNEL,
                bool(norms[worst] <= tol.kernel),
                float(tol.kernel - norms[worst]),
                {
                    "kernel_vector": _vector_pairs(basis[:, worst]),
                    "shifted_image_norm": float(norms[worst] * scale),
                },
            )
    return VerdictReport(psd.passed and kernel.passed, (psd, kernel))


def atom_moments(weights: Sequence[float], atoms: Sequence[float], count: int) -> Moments1D:
    """Moment vector of the discrete measure sum_i w_i * delta_{t_i}.

    Returns rho_1 .. rho_count with rho_{k+1} = -sum_i w_i t_i^k, the sign
    convention under which the Cauchy transform expands as sum rho_k z^-k.
    """
    if count % 2 == 0 or count < 1:
        raise ValueError("count must be odd")
    w = np.asarray(weights, dtype=float)
    t = np.asarray(atoms, dtype=float)
    if w.shape != t.shape or w.ndim != 1:
        raise ValueError("weights and atoms must be matching one-dimensional sequences")
    if np.any(w < 0):
        raise ValueError("weights must be nonnegative")
    rho = [-float(np.sum(w * t**k)) for k in range(count)]
    return Moments1D(tuple(rho))


def cauchy_transform(weights: Sequence[float], atoms: Sequence[float]) -> Callable:
    """The function z -> sum_i w_i / (t_i - z) of a discrete measure.

    Accepts complex or mpmath arguments; the returned callable is the exact
    oracle for the moment vector produced by :func:`atom_moments`.
    """
    pairs = [(float(w), float(t)) for w, t in zip(weights, atoms)]

    def transform(z):
        return sum((w / (t - z) for w, t in pairs), start=0 * z)

    return transform


def pair_from_moments_1d(moments: Moments1D, tol: Tolerances = DEFAULT_TOL) -> HankelPair:
    """Embed a one-variable moment vector as a pair concentrated on the
    (k, 0) line: a1[(j,0),(k,0)] = -rho_{j+k-1}, a2 = 0.

    The embedded pair passes the four-condition test exactly when the
    one-variable test passes, which is the sense in which the pair test
    contains the classical one.
    """
    N = moments.N
    size = set_size(N)
    idx = build_index_set(N)
    a1 = np.zeros((size, size), dtype=complex)
    for j in range(1, N + 1):
        for k in range(1, N + 1):
            a1[idx.position((j, 0)), idx.position((k, 0))] = -moments.rho[j + k - 2]
    return HankelPair(N, a1, np.zeros((size, size), dtype=complex), tol)
