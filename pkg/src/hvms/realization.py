"""Finite-dimensional realizations behind verified Hankel pairs.

A realization is a tuple (Y, A, alpha, {alpha_n}) on C^d: a Hermitian weight
Y with spectrum in [0, 1], a Hermitian shift A, and moment vectors alpha_n
indexed by the graded set, satisfying

    Y alpha_(0,l) = 0,  (1 - Y) alpha_(l,0) = 0           (corners)
    A alpha_n = Y alpha_{n+e1} + (1 - Y) alpha_{n+e2}     (degree |n| <= N-1)
    alpha = alpha_(1,0) + alpha_(0,1).

It evaluates to the function  h(z) = < (A - z_Y)^{-1} alpha, alpha >  with
z_Y = z1 Y + z2 (1 - Y), a holomorphic map of the bi-upper-half-plane into
the closed upper half-plane.  The inner product convention is <u, v> = v* u
(linear in the first slot).

The module provides: the Gram-factorization construction from a verified
pair (`realize`), the reverse map (`gram_of`), resolvent evaluation with an
arbitrary-precision path, iterated vector moments, scalar moments with their
homogeneity test, asymptotic residues by two independent formulas, rank
compression, and seeded generators used throughout the test-suite.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Mapping

import mpmath
import numpy as np

from .hankel_pair import HankelPair, VerdictReport, VerificationError, verify_hankel_pair
from .indexcore import (
    E1,
    E2,
    Index,
    add,
    build_index_set,
    inv_power,
    level_indices,
    set_size,
)
from .tolerances import DEFAULT_TOL, Tolerances

# Relative residual above which the constructed shift operator is deemed
# inconsistent with the pair (a kernel violation below verifier resolution).
_BUILD_TOL = 1e-6

_MP_TYPES = (mpmath.mpf, mpmath.mpc)


class RealizationError(ValueError):
    """A realization failed an internal consistency requirement."""


class ConditioningWarning(UserWarning):
    """Resolvent solve encountered a badly conditioned operator pencil."""


def _hermitize(a: np.ndarray) -> np.ndarray:
    return 0.5 * (a + a.conj().T)


def _lock(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Realization:
    """Immutable realization data; see the module docstring for invariants.

    Construction checks shapes and index coverage only; the numerical
    invariants are the business of :func:`realize` and can be audited with
    :func:`validate_realization` (negative controls in tests deliberately
    build broken instances).
    """

    N: int
    Y: np.ndarray
    A: np.ndarray
    alpha: np.ndarray
    moments: Mapping[Index, np.ndarray]
    tol: Tolerances = DEFAULT_TOL

    def __post_init__(self) -> None:
        if self.N < 1:
            raise ValueError("realization size N must be a positive integer")
        alpha = np.asarray(self.alpha, dtype=complex).reshape(-1)
        d = alpha.shape[0]
        Y = np.asarray(self.Y, dtype=complex)
        A = np.asarray(self.A, dtype=complex)
        if Y.shape != (d, d) or A.shape != (d, d):
            raise ValueError(f"Y and A must be {d}x{d} to match alpha")
        idx = build_index_set(self.N)
        moments = {}
        for n in idx:
            if n not in self.moments:
                raise ValueError(f"missing moment vector for index {n}")
            v = np.asarray(self.moments[n], dtype=complex).reshape(-1)
            if v.shape[0] != d:
                raise ValueError(f"moment vector {n} has dimension {v.shape[0]}, expected {d}")
            moments[n] = _lock(v)
        object.__setattr__(self, "Y", _lock(Y))
        object.__setattr__(self, "A", _lock(A))
        object.__setattr__(self, "alpha", _lock(alpha))
        object.__setattr__(self, "moments", moments)

    @property
    def dim(self) -> int:
        return self.alpha.shape[0]

    @property
    def index_set(self):
        return build_index_set(self.N)

    def moment(self, n: Index) -> np.ndarray:
        return self.moments[n]

    @cached_property
    def moment_matrix(self) -> np.ndarray:
        """Moment vectors as columns, in canonical index order (dim x size)."""
        if self.dim == 0:
            return np.zeros((0, set_size(self.N)), dtype=complex)
        return _lock(np.column_stack([self.moments[n] for n in self.index_set]))

    @cached_property
    def _mp_operators(self):
        """mpmath copies of (A, Y, 1-Y, alpha); float->mpf conversion is exact."""
        d = self.dim
        A = mpmath.matrix(d, d)
        Y = mpmath.matrix(d, d)
        C = mpmath.matrix(d, d)
        for i in range(d):
            for j in range(d):
                A[i, j] = mpmath.mpc(self.A[i, j])
                Y[i, j] = mpmath.mpc(self.Y[i, j])
                C[i, j] = mpmath.mpc((i == j) - self.Y[i, j])
        alpha = mpmath.matrix([mpmath.mpc(x) for x in self.alpha])
        return A, Y, C, alpha


def zero_realization(N: int, tol: Tolerances = DEFAULT_TOL) -> Realization:
    """The d = 0 realization; evaluates to the zero function."""
    empty = np.zeros(0, dtype=complex)
    moments = {n: empty for n in build_index_set(N)}
    return Realization(N, np.zeros((0, 0)), np.zeros((0, 0)), empty, moments, tol)


# ----------------------------------------------------------------------------
# Construction from a verified pair, and its inverse
# ----------------------------------------------------------------------------


def realize(pair: HankelPair, report: VerdictReport | None = None) -> Realization:
    """Build a realization whose Gram pair reproduces a verified pair.

    The moment vectors are the rank-revealing factor of G = a1 + a2 (columns
    of sqrt(Lambda) V* over the kept eigenpairs), so the carrier dimension is
    the numerical rank of G.  The weight is the compression of a1 onto that
    factor, which lands in [0, I] because 0 <= a1 <= G.  The shift is the
    minimal Hermitian solution of A W = T, where W stacks the moment vectors
    of degree <= N-1 and T the required images; its well-definedness is
    exactly the kernel condition C4 and its Hermiticity exactly the shift
    consistency C2.
    """
    report = report if report is not None else verify_hankel_pair(pair)
    if not report.passed:
        raise VerificationError(report)
    tol = pair.tol
    G = pair.gram
    vals, vecs = np.linalg.eigh(G)
    lam_max = float(vals[-1]) if vals.size else 0.0
    keep = vals > tol.rank * max(1.0, lam_max)
    if not np.any(keep):
        return zero_realization(pair.N, tol)
    lam = vals[keep]
    V = vecs[:, keep]
    d = int(lam.shape[0])
    sqrt_lam = np.sqrt(lam)
    M = sqrt_lam[:, None] * V.conj().T  # moment vectors as columns of (d, size)

    scaled = V * (1.0 / sqrt_lam)[None, :]
    Y = _hermitize(scaled.conj().T @ pair.a1 @ scaled)

    idx = pair.index_set
    if pair.N >= 2:
        k = set_size(pair.N - 1)
        W = M[:, :k]
        cols_e1 = [idx.position(add(n, E1)) for n in build_index_set(pair.N - 1)]
        cols_e2 = [idx.position(add(n, E2)) for n in build_index_set(pair.N - 1)]
        T = Y @ M[:, cols_e1] + (M[:, cols_e2] - Y @ M[:, cols_e2])
        Wp = np.linalg.pinv(W, rcond=np.sqrt(tol.rank))
        TWp = T @ Wp
        A = _hermitize(TWp + TWp.conj().T - Wp.conj().T @ (W.conj().T @ T) @ Wp)
        resid = np.linalg.norm(A @ W - T) / (1.0 + np.linalg.norm(T))
        if resid > _BUILD_TOL:
            raise RealizationError(
                f"shift operator does not reproduce the pair: relative residual {resid:.3e}; "
                "the pair violates kernel shift-invariance below the verifier's resolution"
            )
    else:
        A = np.zeros((d, d), dtype=complex)

    moments = {n: M[:, i].copy() for i, n in enumerate(idx)}
    alpha = moments[E1] + moments[E2]
    return Realization(pair.N, Y, A, alpha, moments, tol)


def gram_of(r: Realization) -> HankelPair:
    """Gram pair of a realization: a1[m,n] = <Y a_n, a_m>, a2 = <(1-Y) a_n, a_m>."""
    M = r.moment_matrix
    a1 = _hermitize(M.conj().T @ r.Y @ M)
    g = _hermitize(M.conj().T @ M)
    return HankelPair(r.N, a1, g - a1, r.tol)


# ----------------------------------------------------------------------------
# Evaluation
# ----------------------------------------------------------------------------


def _pencil(r: Realization, z1: complex, z2: complex) -> np.ndarray:
    eye = np.eye(r.dim)
    return r.A - (z1 * r.Y + z2 * (eye - r.Y))


def evaluate(r: Realization, z, cond_warn: float = 1e12) -> complex:
    """h(z) = < (A - z_Y)^{-1} alpha, alpha > for z in the open bi-upper
    half-plane.

    With mpmath arguments the solve runs at the caller's working precision
    (used by the asymptotic certification, where float64 cancellation at
    large |z| would swamp the quantity being measured).  Ill-conditioning
    beyond ``cond_warn`` emits a :class:`ConditioningWarning`, not an error.
    """
    z1, z2 = z
    if isinstance(z1, _MP_TYPES) or isinstance(z2, _MP_TYPES):
        return _evaluate_mp(r, z1, z2)
    z1 = complex(z1)
    z2 = complex(z2)
    if not (z1.imag > 0 and z2.imag > 0):
        raise ValueError("evaluation point must lie in the open bi-upper half-plane")
    if r.dim == 0:
        return 0j
    B = _pencil(r, z1, z2)
    cond = np.linalg.cond(B)
    if cond > cond_warn:
        warnings.warn(
            f"resolvent solve at z=({z1}, {z2}) has condition number {cond:.3e}",
            ConditioningWarning,
            stacklevel=2,
        )
    x = np.linalg.solve(B, r.alpha)
    return complex(np.vdot(r.alpha, x))


def _evaluate_mp(r: Realization, z1, z2):
    z1 = mpmath.mpc(z1)
    z2 = mpmath.mpc(z2)
    if not (z1.imag > 0 and z2.imag > 0):
        raise ValueError("evaluation point must lie in the open bi-upper half-plane")
    if r.dim == 0:
        return mpmath.mpc(0)
    A, Y, C, alpha = r._mp_operators
    B = A - (z1 * Y + z2 * C)
    x = mpmath.lu_solve(B, alpha)
    return sum((mpmath.conj(alpha[i]) * x[i] for i in range(r.dim)), mpmath.mpc(0))


def evaluator(r: Realization) -> Callable:
    """The realization as a black-box function (z1, z2) -> h(z)."""

    def h(z1, z2):
        return evaluate(r, (z1, z2))

    return h


def diagonal_cauchy(r: Realization) -> Callable:
    """Restriction to the diagonal as a one-variable Cauchy transform.

    On z1 = z2 = z the operator pencil collapses to A - z, so h equals
    sum_i |<alpha, v_i>|^2 / (lambda_i - z) over the spectral decomposition
    of A.  Used as an independent oracle for diagonal evaluation.
    """
    vals, vecs = np.linalg.eigh(r.A)
    weights = np.abs(vecs.conj().T @ r.alpha) ** 2

    def transform(z):
        return complex(np.sum(weights / (vals - z)))

    return transform


def resolvent_identity_residual(r: Realization, z, v: np.ndarray | None = None) -> float:
    """Relative residual of A (A - z_Y)^{-1} v = v + z_Y (A - z_Y)^{-1} v.

    An internal numerical health check: both sides are computed from one
    solve, so the residual is rounding-level for any well-conditioned point.
    """
    if r.dim == 0:
        return 0.0
    z1, z2 = complex(z[0]), complex(z[1])
    v = r.alpha if v is None else np.asarray(v, dtype=complex)
    B = _pencil(r, z1, z2)
    x = np.linalg.solve(B, v)
    zY = z1 * r.Y + z2 * (np.eye(r.dim) - r.Y)
    lhs = r.A @ x
    rhs = v + zY @ x
    return float(np.linalg.norm(lhs - rhs) / (1.0 + np.linalg.norm(rhs)))


# ----------------------------------------------------------------------------
# Vector and scalar moments
# ----------------------------------------------------------------------------


def _check_admissible(z1: complex, z2: complex) -> None:
    if z2 == 0:
        raise ValueError("weighted substitution z_Y is singular when z2 = 0")
    ratio = z1 / z2
    if abs(ratio.imag) < 1e-300 and ratio.real <= 0:
        raise ValueError("z1/z2 on (-inf, 0] makes the weighted substitution singular")


def vector_moment_sum(r: Realization, l: int, z) -> np.ndarray:
    """Iterated resolvent-weighted vector z_Y^{-1} (A z_Y^{-1})^{l-1} alpha.

    For a valid realization this equals sum_{|n|=l} z^{-n} alpha_n, which is
    the identity that makes the level-l moment vectors recoverable from the
    operator data alone.
    """
    if not 1 <= l <= r.N:
        raise ValueError(f"level {l} out of range 1..{r.N}")
    z1, z2 = complex(z[0]), complex(z[1])
    _check_admissible(z1, z2)
    if r.dim == 0:
        return np.zeros(0, dtype=complex)
    zY = z1 * r.Y + z2 * (np.eye(r.dim) - r.Y)
    x = np.linalg.solve(zY, r.alpha)
    for _ in range(l - 1):
        x = np.linalg.solve(zY, r.A @ x)
    return x


@dataclass(frozen=True)
class ScalarMoments:
    """Coefficient form of the scalar moments r_k(b) = sum_n coeff[n] / b^n.

    ``levels[k]`` maps each degree-k index to its real coefficient; the
    asymptotic residues are the negated coefficients.
    """

    levels: Mapping[int, Mapping[Index, float]]

    @property
    def max_level(self) -> int:
        return max(self.levels) if self.levels else 0

    def coefficient(self, n: Index) -> float:
        return self.levels[n[0] + n[1]][n]

    def residues(self) -> dict[Index, float]:
        """rho_n = -coefficient(n), for all covered indices."""
        out: dict[Index, float] = {}
        for k in sorted(self.levels):
            for n in level_indices(k):
                out[n] = -self.levels[k][n]
        return out

    def value_at(self, k: int, b) -> float:
        """Evaluate r_k at a positive direction b."""
        return sum(c * inv_power(b, n) for n, c in self.levels[k].items())


def _moment_pairs(k: int):
    """(m, n) index pairs contributing to degree-k coefficients: m + n runs
    over degree k with |m| = floor(k/2) (so |n| = ceil(k/2))."""
    lm = k // 2
    ln = k - lm
    for m in level_indices(lm):
        for n in level_indices(ln):
            yield m, n


def scalar_moments_from_pair(pair: HankelPair) -> ScalarMoments:
    """Scalar moment coefficients straight from the Gram data.

    coeff(k=1):  <alpha_n, alpha> read off G = a1 + a2;
    coeff(k>=2): sums of a1[m+e1, n] + a2[m+e2, n] over the degree split of
    :func:`_moment_pairs`.  Only the pair enters, which is why any two
    realizations with the same Gram pair share all scalar moments.
    """
    idx = pair.index_set
    p = idx.position
    G = pair.gram
    scale = 1.0 + max(np.abs(pair.a1).max(), np.abs(pair.a2).max())
    levels: dict[int, dict[Index, float]] = {}
    worst_imag = 0.0
    row10, row01 = p(E1), p(E2)
    levels[1] = {}
    for n in level_indices(1):
        val = G[row10, p(n)] + G[row01, p(n)]
        worst_imag = max(worst_imag, abs(val.imag))
        levels[1][n] = float(val.real)
    for k in range(2, 2 * pair.N):
        coeffs: dict[Index, complex] = {n: 0j for n in level_indices(k)}
        for m, n in _moment_pairs(k):
            target = add(m, n)
            coeffs[target] += pair.a1[p(add(m, E1)), p(n)] + pair.a2[p(add(m, E2)), p(n)]
        levels[k] = {}
        for n, val in coeffs.items():
            worst_imag = max(worst_imag, abs(val.imag))
            levels[k][n] = float(val.real)
    if worst_imag > pair.tol.consistency * scale:
        raise RealizationError(
            f"scalar moment coefficients are not real: max imaginary part {worst_imag:.3e}"
        )
    return ScalarMoments(levels)


def scalar_moments(r: Realization) -> ScalarMoments:
    """Scalar moments of a realization (computed through its Gram pair)."""
    return scalar_moments_from_pair(gram_of(r))


def residue_routes(r: Realization) -> tuple[dict[Index, float], dict[Index, float]]:
    """Residues by the two independent formulas.

    Route one negates the Gram-data scalar-moment coefficients; route two
    evaluates -sum { <alpha_n, A alpha_m> : m + n = k, |m| = floor(|k|/2) }
    directly through the shift operator (with alpha as the right factor at
    degree one).  Agreement within tolerance is a structural invariant.
    """
    from_gram = scalar_moments(r).residues()
    M = r.moment_matrix
    AM = M.conj().T @ r.A @ M
    p = r.index_set.position
    from_shift: dict[Index, float] = {}
    for n in level_indices(1):
        from_shift[n] = -float(np.vdot(r.alpha, r.moments[n]).real)
    for k in range(2, 2 * r.N):
        vals = {n: 0.0 for n in level_indices(k)}
        for m, n in _moment_pairs(k):
            vals[add(m, n)] -= float(AM[p(m), p(n)].real)
        from_shift.update(vals)
    return from_gram, from_shift


def residues(r: Realization) -> dict[Index, float]:
    """Asymptotic residues rho_n for 1 <= |n| <= 2N-1, cross-checked.

    Raises :class:`RealizationError` when the two formulas disagree beyond
    the consistency tolerance, which signals a broken realization.
    """
    from_gram, from_shift = residue_routes(r)
    scale = 1.0 + max((abs(v) for v in from_gram.values()), default=0.0)
    worst = max((abs(from_gram[n] - from_shift[n]) for n in from_gram), default=0.0)
    if worst > r.tol.consistency * scale:
        raise RealizationError(
            f"residue formulas disagree by {worst:.3e}; the realization is inconsistent"
        )
    return from_gram


# ----------------------------------------------------------------------------
# Homogeneity of the sampled scalar moments
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class HomogeneityReport:
    passed: bool
    max_residual: float
    residuals: Mapping[int, float]
    coefficients: ScalarMoments


def _sample_scalar_moment(r: Realization, k: int, b) -> complex:
    """r_k(b) through the operator expressions (resolvent-weighted solves)."""
    b1, b2 = float(b[0]), float(b[1])
    if b1 <= 0 or b2 <= 0:
        raise ValueError("sample directions must be strictly positive")
    zY = b1 * r.Y + b2 * (np.eye(r.dim) - r.Y)
    x = np.linalg.solve(zY, r.alpha)
    if k == 1:
        return complex(np.vdot(r.alpha, x))
    chain = [x]
    for _ in range((k + 1) // 2 - 1):
        chain.append(np.linalg.solve(zY, r.A @ chain[-1]))
    if k % 2 == 0:
        u = chain[k // 2 - 1]
        return complex(np.vdot(r.A @ u, u))
    u_hi = chain[(k + 1) // 2 - 1]
    u_lo = chain[(k + 1) // 2 - 2]
    return complex(np.vdot(r.A @ u_lo, u_hi))


def homogeneity_check(r: Realization, samples: int = 48, seed: int = 0) -> HomogeneityReport:
    """Test that each sampled r_k is a homogeneous degree-k polynomial in 1/b.

    Samples the operator expressions on a seeded grid of positive directions
    and least-squares fits the degree-k monomials 1/b^n; the verdict compares
    the worst relative fit residual against ``tol.fit``.  A genuine
    realization passes; corrupting the operator data (for example making the
    shift non-Hermitian) sends the residual above threshold.
    """
    if r.dim == 0:
        empty = ScalarMoments({k: {n: 0.0 for n in level_indices(k)} for k in range(1, 2 * r.N)})
        return HomogeneityReport(True, 0.0, {k: 0.0 for k in range(1, 2 * r.N)}, empty)
    rng = np.random.default_rng(seed)
    order = 2 * r.N - 1
    count = max(samples, 4 * (order + 2))
    bs = np.exp(rng.uniform(np.log(0.2), np.log(5.0), size=(count, 2)))
    residuals: dict[int, float] = {}
    fitted: dict[int, dict[Index, float]] = {}
    for k in range(1, order + 1):
        y = np.array([_sample_scalar_moment(r, k, b) for b in bs])
        X = np.array([[inv_power(b, n) for n in level_indices(k)] for b in bs], dtype=float)
        col_norms = np.linalg.norm(X, axis=0)
        coeffs, *_ = np.linalg.lstsq(X / col_norms, y, rcond=None)
        coeffs = coeffs / col_norms
        resid = np.linalg.norm(X @ coeffs - y)
        denom = max(np.linalg.norm(y), 1e-30)
        residuals[k] = float(resid / denom)
        fitted[k] = {n: float(c.real) for n, c in zip(level_indices(k), coeffs)}
    worst = max(residuals.values())
    return HomogeneityReport(
        bool(worst < r.tol.fit), worst, residuals, ScalarMoments(fitted)
    )


# ----------------------------------------------------------------------------
# Compression, inflation, generators, validation
# ----------------------------------------------------------------------------


def compress(r: Realization) -> Realization:
    """Rebuild the realization from its Gram pair on a minimal-rank carrier.

    The output dimension is the numerical rank of a1 + a2; scalar moments and
    residues are preserved exactly because they only see the pair.  Already
    minimal realizations keep their dimension.
    """
    return realize(gram_of(r))


def inflate(r: Realization, dim: int, seed: int = 0) -> Realization:
    """Embed into a larger space, padding with directions the vector data
    never reaches.  The Gram pair (hence every moment quantity and the
    evaluated function) is unchanged; only the carrier dimension grows."""
    if dim < r.dim:
        raise ValueError(f"cannot inflate dimension {r.dim} down to {dim}")
    if dim == r.dim:
        return r
    rng = np.random.default_rng(seed)
    Z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    Q, _ = np.linalg.qr(Z)
    U = Q[:, : r.dim]
    P = U @ U.conj().T
    comp = np.eye(dim) - P
    junk = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    junk = _hermitize(junk)
    Y = _hermitize(U @ r.Y @ U.conj().T + 0.5 * comp)
    A = _hermitize(U @ r.A @ U.conj().T + comp @ junk @ comp)
    moments = {n: U @ v for n, v in r.moments.items()}
    return Realization(r.N, Y, A, U @ r.alpha, moments, r.tol)


def random_realization(rng: np.random.Generator, N: int, dim: int) -> Realization:
    """Seeded generator of exactly-valid realizations of any size.

    Uses a projection weight: with Y = P an orthogonal projection, the
    defining relations split along ran P and ker P, so the moment recursion

        alpha_m = P A alpha_{m-e1} + (1 - P) A alpha_{m-e2}

    (terms present when the source index exists) produces a family whose
    corner and shift relations hold to rounding error for every N.
    """
    if dim < 2:
        raise ValueError("generator needs dimension >= 2 so both corners are nontrivial")
    Z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    Q, _ = np.linalg.qr(Z)
    rank = int(rng.integers(1, dim))
    U = Q[:, :rank]
    P = U @ U.conj().T
    H = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    H = _hermitize(H)
    H /= max(1.0, np.linalg.norm(H, 2))
    g1 = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    g2 = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    comp = np.eye(dim) - P
    moments: dict[Index, np.ndarray] = {E1: P @ g1, E2: comp @ g2}
    norm1 = max(np.linalg.norm(moments[E1]), 1e-2)
    norm2 = max(np.linalg.norm(moments[E2]), 1e-2)
    moments[E1] = moments[E1] / norm1
    moments[E2] = moments[E2] / norm2
    for l in range(2, N + 1):
        for n in level_indices(l):
            v = np.zeros(dim, dtype=complex)
            if n[0] >= 1:
                v += P @ (H @ moments[(n[0] - 1, n[1])])
            if n[1] >= 1:
                v += comp @ (H @ moments[(n[0], n[1] - 1)])
            moments[n] = v
    return Realization(N, _hermitize(P), H, moments[E1] + moments[E2], moments)


def validate_realization(r: Realization) -> dict[str, float]:
    """Relative residuals of every structural invariant; all should be tiny
    for a realization produced by :func:`realize` or the generators."""
    out: dict[str, float] = {}
    if r.dim == 0:
        return {
            "weight_hermitian": 0.0,
            "weight_spectrum": 0.0,
            "shift_hermitian": 0.0,
            "corners": 0.0,
            "shift_relation": 0.0,
            "alpha_sum": 0.0,
        }
    mscale = 1.0 + max(np.linalg.norm(v) for v in r.moments.values())
    out["weight_hermitian"] = float(
        np.abs(r.Y - r.Y.conj().T).max() / (1.0 + np.abs(r.Y).max())
    )
    yvals = np.linalg.eigvalsh(_hermitize(r.Y))
    out["weight_spectrum"] = float(max(max(-yvals[0], 0.0), max(yvals[-1] - 1.0, 0.0)))
    out["shift_hermitian"] = float(
        np.abs(r.A - r.A.conj().T).max() / (1.0 + np.abs(r.A).max())
    )
    eye = np.eye(r.dim)
    corner = 0.0
    for l in range(1, r.N + 1):
        corner = max(corner, np.linalg.norm(r.Y @ r.moments[(0, l)]))
        corner = max(corner, np.linalg.norm((eye - r.Y) @ r.moments[(l, 0)]))
    out["corners"] = float(corner / mscale)
    relation = 0.0
    if r.N >= 2:
        for n in build_index_set(r.N - 1):
            lhs = r.A @ r.moments[n]
            rhs = r.Y @ r.moments[add(n, E1)] + (eye - r.Y) @ r.moments[add(n, E2)]
            relation = max(relation, np.linalg.norm(lhs - rhs))
    out["shift_relation"] = float(relation / mscale)
    out["alpha_sum"] = float(
        np.linalg.norm(r.alpha - r.moments[E1] - r.moments[E2]) / mscale
    )
    return out
