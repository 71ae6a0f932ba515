"""Non-tangential approach machinery at infinity.

Everything here samples a black-box evaluator h(z1, z2) along rays z = i s b
with a fixed positive direction b and s growing geometrically.  Such a ray
stays inside the approach region ||z|| <= c min(Im z1, Im z2) with the
sharp aperture c = ||b|| / min(b1, b2).

Three operations are provided:

* residue extraction: on a ray, odd-degree residue combinations survive in
  Im h(i s b) and even-degree ones in Re h(i s b); scaling by s^l and
  subtracting the already-extracted lower levels telescopes each level to a
  finite limit sum_{|n|=l} rho_n / b^n, and enough distinct directions
  separate the individual rho_n through a small Vandermonde solve;
* certification: tabulate ||z||^order |h(z) - sum rho_n z^-n| along each ray
  and check that the column decays below tolerance;
* the scalar limit s h(is, is), finite exactly for functions with a
  resolvent representation, where it equals i ||alpha||^2.

Measuring these limits numerically at large s subtracts nearly equal
quantities, so the default path samples in mpmath at a working precision
that grows with the expansion order; the evaluators shipped in this package
accept mpmath arguments transparently.  Pass ``precision=None`` to force
plain float64 sampling (adequate only for low orders and moderate s).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

import mpmath
import numpy as np

from .indexcore import Index, inv_power, level_indices, monomial
from .tolerances import DEFAULT_TOL, Tolerances


@dataclass(frozen=True)
class ApproachRegion:
    """A sampled ray z = i s b towards infinity inside a fixed aperture."""

    b: tuple[float, float]
    s_values: tuple[float, ...]

    def __post_init__(self) -> None:
        b = (float(self.b[0]), float(self.b[1]))
        if b[0] <= 0 or b[1] <= 0:
            raise ValueError("ray direction must have strictly positive entries")
        s = tuple(float(x) for x in self.s_values)
        if len(s) < 2:
            raise ValueError("a region needs at least two sample magnitudes")
        if any(x < 1.0 for x in s) or any(s[i + 1] <= s[i] for i in range(len(s) - 1)):
            raise ValueError("sample magnitudes must be >= 1 and strictly increasing")
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "s_values", s)

    @property
    def aperture(self) -> float:
        """Smallest c with ||z|| <= c min(Im z1, Im z2) on the ray."""
        return math.hypot(*self.b) / min(self.b)

    @property
    def ratio(self) -> float:
        return self.b[0] / self.b[1]

    def points(self) -> tuple[tuple[complex, complex], ...]:
        return tuple(
            (complex(0.0, s * self.b[0]), complex(0.0, s * self.b[1])) for s in self.s_values
        )


def default_s_values(smin: float = 1e2, smax: float = 1e6, ratio: float = 10.0**0.25) -> tuple[float, ...]:
    """Geometric magnitude grid; defaults span 1e2..1e6 at ratio 10^(1/4)."""
    if not (smin >= 1.0 and smax > smin and ratio > 1.0):
        raise ValueError("need 1 <= smin < smax and ratio > 1")
    out = [smin]
    while out[-1] * ratio <= smax * (1.0 + 1e-12):
        out.append(out[-1] * ratio)
    return tuple(out)


def default_directions(count: int) -> tuple[tuple[float, float], ...]:
    """(1,1), (1,2), (2,1), (1,3), (3,1), ...: pairwise distinct slopes."""
    dirs: list[tuple[float, float]] = [(1.0, 1.0)]
    k = 2
    while len(dirs) < count:
        dirs.append((1.0, float(k)))
        if len(dirs) < count:
            dirs.append((float(k), 1.0))
        k += 1
    return tuple(dirs[:count])


def default_regions(order: int, s_values: Sequence[float] | None = None) -> tuple[ApproachRegion, ...]:
    """Enough rays for extraction to the given order (order + 1 directions)."""
    s = tuple(s_values) if s_values is not None else default_s_values()
    return tuple(ApproachRegion(b, s) for b in default_directions(order + 1))


def aperture_bound_check(region: ApproachRegion, n: Index) -> bool:
    """Check |z^-n| <= aperture^|n| ||z||^-|n| on every sampled point.

    True by construction of the region; exposed as a self-test of the
    sampling geometry.
    """
    c = region.aperture
    k = n[0] + n[1]
    for (z1, z2) in region.points():
        lhs = abs(z1) ** -n[0] * abs(z2) ** -n[1] if k else 1.0
        norm = math.hypot(abs(z1), abs(z2))
        if lhs > (c**k) * norm**-k * (1.0 + 1e-12):
            return False
    return True


# ----------------------------------------------------------------------------
# Reports
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class DecayRow:
    b: tuple[float, float]
    s: float
    scaled_error: float


@dataclass(frozen=True)
class RayVerdict:
    b: tuple[float, float]
    aperture: float
    final_scaled_error: float
    tail_monotone: bool
    below_threshold: bool

    @property
    def certified(self) -> bool:
        return self.tail_monotone and self.below_threshold


@dataclass(frozen=True)
class ExpansionReport:
    """Residues at infinity plus the decay evidence backing them.

    ``certified`` holds when, on every sampled ray, the scaled-error column
    is eventually monotone decreasing and its final entry falls below the
    decay tolerance (relative to the degree-one residue magnitude).
    """

    order: int
    residues: dict[Index, float]
    decay_table: tuple[DecayRow, ...]
    certified: bool
    ray_verdicts: tuple[RayVerdict, ...]
    diagnostics: dict


@dataclass(frozen=True)
class Type1Report:
    estimate: complex
    is_type1: bool
    samples: tuple[tuple[float, complex], ...]


def write_decay_csv(report: ExpansionReport, path) -> None:
    """Export the decay table as CSV with columns b1, b2, s, scaled_error."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("b1,b2,s,scaled_error\n")
        for row in report.decay_table:
            fh.write(
                f"{row.b[0]:.17g},{row.b[1]:.17g},{row.s:.17g},{row.scaled_error:.17g}\n"
            )


# ----------------------------------------------------------------------------
# Sampling helpers
# ----------------------------------------------------------------------------


def _working_dps(precision: int, order: int, smax: float) -> int:
    # Telescoped level-l data cancels ~ (l-1) log10(smax) leading digits, so
    # the working precision must absorb that on top of the target digits.
    return precision + max(0, math.ceil((order - 1) * math.log10(max(smax, 10.0)))) + 5


def _sample_ray(h: Callable, region: ApproachRegion, mp_mode: bool) -> list:
    vals = []
    for s in region.s_values:
        if mp_mode:
            z1 = mpmath.mpc(0, mpmath.mpf(s) * region.b[0])
            z2 = mpmath.mpc(0, mpmath.mpf(s) * region.b[1])
            vals.append(mpmath.mpc(h(z1, z2)))
        else:
            vals.append(complex(h(complex(0.0, s * region.b[0]), complex(0.0, s * region.b[1]))))
    return vals


def _extrapolate_to_zero(xs: list, ys: list):
    """Neville extrapolation of y(x) to x = 0 on decreasing positive nodes.

    Returns (limit, spread) where spread is the magnitude of the final
    correction, a cheap convergence indicator for the tail.
    """
    tab = list(ys)
    n = len(tab)
    if n == 1:
        return tab[0], abs(tab[0])
    for m in range(1, n):
        for i in range(n - m):
            tab[i] = (xs[i] * tab[i + 1] - xs[i + m] * tab[i]) / (xs[i] - xs[i + m])
    # One-shallower estimate for the spread: redo without the last point.
    shallow = list(ys[:-1])
    for m in range(1, n - 1):
        for i in range(n - 1 - m):
            shallow[i] = (xs[i] * shallow[i + 1] - xs[i + m] * shallow[i]) / (xs[i] - xs[i + m])
    return tab[0], abs(tab[0] - shallow[0])


def _tail_window(count: int) -> int:
    return max(2, (count + 3) // 4)


def _level_sign(k: int) -> int:
    # i^-k = (-1)^ceil(k/2) * (i if k odd else 1): the real sign carried by
    # level k after the ray substitution.
    return -1 if ((k + 1) // 2) % 2 else 1


def _inv_power_t(b, n: Index, mp_mode: bool):
    """1 / b^n in the working arithmetic; float64 rounding of the monomial
    would be amplified by the telescoping, so the mp path recomputes it."""
    if mp_mode:
        return 1 / (mpmath.mpf(b[0]) ** n[0] * mpmath.mpf(b[1]) ** n[1])
    return inv_power(b, n)


def _ray_limits(region: ApproachRegion, values: list, order: int, mp_mode: bool):
    """Telescoped per-ray limits q_k(b) -> sum_{|n|=k} rho_n / b^n, k <= order.

    Level k scales the matching parity part (Im for odd k, Re for even) by
    s^k and subtracts the ray's own lower limits times s^(k-j).  Subtracting
    this ray's limits rather than values reconstructed from other rays is
    essential: the subtraction is amplified by s^(k-j), and only the ray's
    own limit matches its samples to working accuracy.
    """
    svs = [mpmath.mpf(s) if mp_mode else float(s) for s in region.s_values]
    xs = [1 / (sv * sv) for sv in svs]
    w = _tail_window(len(svs))
    raw: dict[int, object] = {}
    out: dict[int, object] = {}
    spreads: dict[int, float] = {}
    for level in range(1, order + 1):
        lower = range(2 - (level % 2), level, 2)
        series = []
        for sv, v in zip(svs, values):
            part = v.imag if level % 2 else v.real
            acc = sv**level * part
            for k in lower:
                acc -= sv ** (level - k) * raw[k]
            series.append(acc)
        limit, spread = _extrapolate_to_zero(xs[-w:], series[-w:])
        raw[level] = limit
        out[level] = _level_sign(level) * limit
        spreads[level] = float(spread) / (1.0 + abs(float(limit)))
    return out, spreads


def _distinct_ratio_regions(regions: Sequence[ApproachRegion]) -> list[ApproachRegion]:
    seen: list[float] = []
    out: list[ApproachRegion] = []
    for reg in regions:
        if all(abs(reg.ratio - u) > 1e-12 * (1 + abs(u)) for u in seen):
            seen.append(reg.ratio)
            out.append(reg)
    return out


def _decay_rows(region: ApproachRegion, values: list, residues, order: int, mp_mode: bool):
    # Residue values keep their native type: mpf entries stay exact, floats
    # convert to mpf losslessly, so the partial sum is the exact sum of the
    # proposed coefficients at working precision.
    rows = []
    bnorm = math.hypot(*region.b)
    terms = [(n, residues.get(n, 0.0)) for k in range(1, order + 1) for n in level_indices(k)]
    for s, v in zip(region.s_values, values):
        if mp_mode:
            z = (mpmath.mpc(0, mpmath.mpf(s) * region.b[0]), mpmath.mpc(0, mpmath.mpf(s) * region.b[1]))
            partial = mpmath.mpc(0)
            for n, rho in terms:
                if rho:
                    partial += rho / monomial(z, n)
        else:
            z = (complex(0.0, s * region.b[0]), complex(0.0, s * region.b[1]))
            partial = 0j
            for n, rho in terms:
                if rho:
                    partial += float(rho) / monomial(z, n)
        err = abs(v - partial) * (s * bnorm) ** order
        rows.append(DecayRow(region.b, float(s), float(err)))
    return rows


def _ray_verdict(region: ApproachRegion, rows: list[DecayRow], threshold: float) -> RayVerdict:
    col = [r.scaled_error for r in rows]
    w = _tail_window(len(col))
    tail = col[-w:]
    monotone = all(tail[i + 1] <= tail[i] * 1.05 + 1e-300 for i in range(len(tail) - 1))
    monotone = monotone and tail[-1] <= tail[0] * (1.0 + 1e-9) + 1e-300
    return RayVerdict(
        region.b,
        region.aperture,
        tail[-1],
        bool(monotone),
        bool(tail[-1] < threshold),
    )


def _decay_threshold(residues: Mapping[Index, float], tol: Tolerances) -> float:
    level1 = sum(float(abs(residues.get(n, 0.0))) for n in level_indices(1))
    return tol.decay * max(1.0, level1)


# ----------------------------------------------------------------------------
# Extraction and certification
# ----------------------------------------------------------------------------


def extract_residues(
    h: Callable,
    N: int,
    regions: Sequence[ApproachRegion] | None = None,
    *,
    precision: int | None = 30,
    tol: Tolerances = DEFAULT_TOL,
    overdetermined: bool = False,
) -> ExpansionReport:
    """Recover the residues of h to order 2N-1 from ray samples alone.

    Levels are extracted strictly in order with telescoping subtraction;
    each level l needs l+1 rays with distinct slopes, solved as an exactly
    determined Vandermonde system (or least squares over all rays when
    ``overdetermined`` is set).  The returned report carries the decay
    evidence for the recovered expansion; non-convergent tails or decay
    failures leave ``certified`` False rather than raising.
    """
    if N < 1:
        raise ValueError("order parameter N must be >= 1")
    order = 2 * N - 1
    regs = list(regions) if regions is not None else list(default_regions(order))
    distinct = _distinct_ratio_regions(regs)
    if len(distinct) < order + 1:
        raise ValueError(
            f"need at least {order + 1} rays with distinct slopes for order {order}, "
            f"got {len(distinct)}"
        )
    mp_mode = precision is not None
    smax = max(max(r.s_values) for r in regs)

    def run():
        used = distinct if overdetermined else distinct[: order + 1]
        samples = {id(reg): _sample_ray(h, reg, mp_mode) for reg in regs}
        limits = {}
        spreads: dict[int, float] = {}
        for reg in used:
            lim, spr = _ray_limits(reg, samples[id(reg)], order, mp_mode)
            limits[id(reg)] = lim
            for level, s in spr.items():
                spreads[level] = max(spreads.get(level, 0.0), s)
        # Residues solved level by level from the per-ray limits; kept in the
        # sampling arithmetic until the final report.
        work: dict[Index, object] = {}
        conditions: dict[int, float] = {}
        for level in range(1, order + 1):
            use = used if overdetermined else used[: level + 1]
            rows = [[_inv_power_t(reg.b, n, mp_mode) for n in level_indices(level)] for reg in use]
            rhs = [limits[id(reg)][level] for reg in use]
            cond = float(np.linalg.cond(np.array(rows, dtype=float)))
            conditions[level] = cond
            if cond > 1e10:
                raise ValueError(
                    f"direction set is ill-conditioned at level {level} (condition {cond:.3e})"
                )
            if mp_mode:
                if len(use) == level + 1:
                    sol = mpmath.lu_solve(mpmath.matrix(rows), mpmath.matrix(rhs))
                else:
                    sol = mpmath.qr_solve(mpmath.matrix(rows), mpmath.matrix(rhs))[0]
            elif len(use) == level + 1:
                sol = np.linalg.solve(np.array(rows, dtype=float), np.array(rhs, dtype=float))
            else:
                sol, *_ = np.linalg.lstsq(
                    np.array(rows, dtype=float), np.array(rhs, dtype=float), rcond=None
                )
            for n, value in zip(level_indices(level), sol):
                work[n] = value

        residues = {n: float(v) for n, v in work.items()}
        tails_converged = all(v <= 1e-4 for v in spreads.values())
        threshold = _decay_threshold(residues, tol)
        table: list[DecayRow] = []
        verdicts: list[RayVerdict] = []
        for reg in regs:
            rows_d = _decay_rows(reg, samples[id(reg)], work, order, mp_mode)
            table.extend(rows_d)
            verdicts.append(_ray_verdict(reg, rows_d, threshold))
        certified = tails_converged and all(v.certified for v in verdicts)
        diagnostics = {
            "tail_spread": spreads,
            "vandermonde_condition": conditions,
            "tails_converged": tails_converged,
            "threshold": threshold,
            "precision": precision,
        }
        return ExpansionReport(order, residues, tuple(table), certified, tuple(verdicts), diagnostics)

    if mp_mode:
        with mpmath.workdps(_working_dps(precision, order, smax)):
            return run()
    return run()


def certify_expansion(
    h: Callable,
    residues: Mapping[Index, float],
    order: int,
    regions: Sequence[ApproachRegion] | None = None,
    *,
    precision: int | None = 30,
    tol: Tolerances = DEFAULT_TOL,
) -> ExpansionReport:
    """Tabulate scaled errors of a proposed expansion and judge their decay.

    Missing residue entries count as zero.  Certification never raises: a
    non-decaying column simply leaves ``certified`` False, with the evidence
    in the decay table.
    """
    if order < 1:
        raise ValueError("expansion order must be >= 1")
    regs = list(regions) if regions is not None else list(default_regions(order)[:3])
    residues = dict(residues)  # values keep their type; mpf inputs stay exact
    mp_mode = precision is not None
    smax = max(max(r.s_values) for r in regs)

    def run():
        threshold = _decay_threshold(residues, tol)
        table: list[DecayRow] = []
        verdicts: list[RayVerdict] = []
        for reg in regs:
            values = _sample_ray(h, reg, mp_mode)
            rows = _decay_rows(reg, values, residues, order, mp_mode)
            table.extend(rows)
            verdicts.append(_ray_verdict(reg, rows, threshold))
        certified = all(v.certified for v in verdicts)
        diagnostics = {"threshold": threshold, "precision": precision}
        return ExpansionReport(
            order,
            {n: float(v) for n, v in residues.items()},
            tuple(table),
            certified,
            tuple(verdicts),
            diagnostics,
        )

    if mp_mode:
        with mpmath.workdps(_working_dps(precision, order, smax)):
            return run()
    return run()


def type1_limit(
    h: Callable,
    s_values: Sequence[float] | None = None,
    rel_tol: float = 1e-3,
) -> Type1Report:
    """Estimate lim s h(is, is) along the diagonal ray.

    The sequence converges exactly for functions with a finite resolvent
    representation (the limit is then i ||alpha||^2); growth of the sampled
    sequence is reported as ``is_type1 = False`` with the raw samples kept
    for inspection.
    """
    s = tuple(float(x) for x in (s_values if s_values is not None else default_s_values()))
    if len(s) < 3:
        raise ValueError("need at least three magnitudes to judge convergence")
    samples = []
    for sv in s:
        z = complex(0.0, sv)
        samples.append((sv, sv * complex(h(z, z))))
    g = [v for _, v in samples]
    converged = (
        abs(g[-1] - g[-2]) <= rel_tol * (1.0 + abs(g[-1]))
        and abs(g[-2] - g[-3]) <= 10 * rel_tol * (1.0 + abs(g[-2]))
    )
    r = s[-1] / s[-2]
    estimate = (r * g[-1] - g[-2]) / (r - 1.0)
    return Type1Report(complex(estimate), bool(converged), tuple(samples))
