"""A built-in family of rational two-variable Pick functions with closed forms.

Each term (w, lam, t) contributes a 2x2 block: shift diag(lam, -lam), weight
the rank-one projection onto (t, u) with u = sqrt(1 - t^2), and first-level
vectors sqrt(w) (t, u) and sqrt(w) (u, -t).  The evaluated function is

    h(z) = sum_j w_j (4 t_j u_j lam_j + z1 + z2)
                 / (lam_j^2 - lam_j (2 t_j^2 - 1)(z1 - z2) - z1 z2),

and the first three scalar moments have explicit coefficient formulas.  The
family doubles as the main test oracle: everything the package computes
numerically can be checked against these closed forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
import numpy as np

from .indexcore import Index, build_index_set, level_indices
from .realization import Realization, ScalarMoments, zero_realization
from .tolerances import DEFAULT_TOL, Tolerances

Term = tuple[float, float, float]


@dataclass(frozen=True)
class ExampleSpec:
    """Parameters {(w_j, lam_j, t_j)} of the block family.

    Weights are nonnegative, mixing parameters t lie in [0, 1]; the list is
    finite so all summability hypotheses of the infinite family hold
    trivially.
    """

    terms: tuple[Term, ...]

    def __post_init__(self) -> None:
        clean = []
        for term in self.terms:
            w, lam, t = (float(x) for x in term)
            if w < 0:
                raise ValueError("weights must be nonnegative")
            if not 0.0 <= t <= 1.0:
                raise ValueError("mixing parameters must lie in [0, 1]")
            clean.append((w, lam, t))
        object.__setattr__(self, "terms", tuple(clean))

    def __len__(self) -> int:
        return len(self.terms)

    def weight_sum(self, power: int = 0) -> float:
        """sum_j w_j lam_j^power."""
        return float(sum(w * lam**power for (w, lam, t) in self.terms))


def build_example(spec: ExampleSpec, N: int, tol: Tolerances = DEFAULT_TOL) -> Realization:
    """Direct-sum realization of the family, size N in {1, 2}.

    Closed-form moment vectors are available through degree two only, which
    is why larger sizes are rejected rather than silently extended.
    """
    if N not in (1, 2):
        raise ValueError("closed-form moment vectors are only available for N in {1, 2}")
    if len(spec) == 0:
        return zero_realization(N, tol)
    J = len(spec)
    d = 2 * J
    A = np.zeros((d, d), dtype=complex)
    Y = np.zeros((d, d), dtype=complex)
    moments: dict[Index, np.ndarray] = {
        n: np.zeros(d, dtype=complex) for n in build_index_set(N)
    }
    for j, (w, lam, t) in enumerate(spec.terms):
        u = math.sqrt(1.0 - t * t)
        sw = math.sqrt(w)
        sl = slice(2 * j, 2 * j + 2)
        A[sl, sl] = np.diag([lam, -lam])
        Y[sl, sl] = np.array([[t * t, t * u], [t * u, u * u]])
        moments[(1, 0)][sl] = sw * np.array([t, u])
        moments[(0, 1)][sl] = sw * np.array([u, -t])
        if N == 2:
            moments[(2, 0)][sl] = sw * lam * (2 * t * t - 1) * np.array([t, u])
            moments[(1, 1)][sl] = 2 * sw * lam * np.array(
                [t - t**3 + t * t * u, t - t**3 - t * t * u]
            )
            moments[(0, 2)][sl] = sw * lam * (1 - 2 * t * t) * np.array([u, -t])
    alpha = moments[(1, 0)] + moments[(0, 1)]
    return Realization(N, Y, A, alpha, moments, tol)


def closed_form_h(spec: ExampleSpec, z):
    """Evaluate the family's rational formula at z = (z1, z2).

    Plain Python arithmetic throughout, so complex and mpmath inputs both
    work; the denominator does not vanish on the bi-upper half-plane.
    """
    z1, z2 = z
    total = 0 * z1
    for (w, lam, t) in spec.terms:
        u = math.sqrt(1.0 - t * t)
        denom = lam * lam - lam * (2 * t * t - 1) * (z1 - z2) - z1 * z2
        total = total + w * (4 * t * u * lam + z1 + z2) / denom
    return total


def closed_form_evaluator(spec: ExampleSpec):
    """The closed form as a black-box callable (z1, z2) -> h(z)."""

    def h(z1, z2):
        return closed_form_h(spec, (z1, z2))

    return h


def closed_form_moments(spec: ExampleSpec) -> ScalarMoments:
    """Closed-form scalar-moment coefficients for degrees one through three."""

    def total(f) -> float:
        return float(sum(f(w, lam, t, math.sqrt(1.0 - t * t)) for (w, lam, t) in spec.terms))

    levels = {
        1: {
            (1, 0): total(lambda w, lam, t, u: w),
            (0, 1): total(lambda w, lam, t, u: w),
        },
        2: {
            (2, 0): total(lambda w, lam, t, u: w * lam * (2 * t * t - 1)),
            (1, 1): total(lambda w, lam, t, u: w * lam * 4 * t * u),
            (0, 2): total(lambda w, lam, t, u: w * lam * (1 - 2 * t * t)),
        },
        3: {
            (3, 0): total(lambda w, lam, t, u: w * lam * lam * (2 * t * t - 1) ** 2),
            (2, 1): total(
                lambda w, lam, t, u: w * lam * lam * (4 * (t * t - t**4) + 4 * t * (2 * t * t - 1) * u)
            ),
            (1, 2): total(
                lambda w, lam, t, u: w * lam * lam * (4 * (t * t - t**4) + 4 * t * (1 - 2 * t * t) * u)
            ),
            (0, 3): total(lambda w, lam, t, u: w * lam * lam * (2 * t * t - 1) ** 2),
        },
    }
    return ScalarMoments(levels)


def closed_form_residues(spec: ExampleSpec, precision: int | None = None) -> dict[Index, float]:
    """True residues rho_n = -coefficient(n) through degree three.

    With ``precision`` set, the coefficient sums are carried out in mpmath at
    that many digits and returned as mpf values.  Certifying the expansion at
    large |z| compares h against sum rho_n z^-n to a resolution far below
    float64 rounding of the coefficients, so the certification acceptance
    needs the oracle at extended precision.
    """
    if precision is None:
        return closed_form_moments(spec).residues()
    with mpmath.workdps(precision):
        zero = mpmath.mpf(0)
        sums = {n: zero for k in (1, 2, 3) for n in level_indices(k)}
        for (w, lam, t) in spec.terms:
            w, lam, t = mpmath.mpf(w), mpmath.mpf(lam), mpmath.mpf(t)
            u = mpmath.sqrt(1 - t * t)
            even = 2 * t * t - 1
            sums[(1, 0)] += w
            sums[(0, 1)] += w
            sums[(2, 0)] += w * lam * even
            sums[(1, 1)] += w * lam * 4 * t * u
            sums[(0, 2)] -= w * lam * even
            sums[(3, 0)] += w * lam * lam * even**2
            sums[(0, 3)] += w * lam * lam * even**2
            sums[(2, 1)] += w * lam * lam * (4 * (t * t - t**4) + 4 * t * even * u)
            sums[(1, 2)] += w * lam * lam * (4 * (t * t - t**4) - 4 * t * even * u)
        return {n: -v for n, v in sums.items()}


def random_spec(rng: np.random.Generator, max_terms: int = 5) -> ExampleSpec:
    """Seeded random family member for property tests.

    Defaults stay away from the degenerate corners (t near 0 or 1); pin the
    corner values t in {0, 1, 1/sqrt(2)} explicitly where a test needs them.
    """
    count = int(rng.integers(1, max_terms + 1))
    terms = tuple(
        (
            float(rng.uniform(0.05, 1.0)),
            float(rng.uniform(-5.0, 5.0)),
            float(rng.uniform(0.05, 0.95)),
        )
        for _ in range(count)
    )
    return ExampleSpec(terms)


def zero_level_indices(order: int) -> tuple[Index, ...]:
    """All indices with 1 <= |n| <= order (flat helper for report layouts)."""
    out: list[Index] = []
    for k in range(1, order + 1):
        out.extend(level_indices(k))
    return tuple(out)
