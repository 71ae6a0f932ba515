"""Numerical tolerances shared by the verification and construction routines.

All thresholds are relative: a quantity q is compared against ``tol * scale``
where the scale is ``1 + (a natural norm of the data)``, so the defaults work
unchanged for small and large matrices.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    """Tolerance bundle attached to pairs, realizations and reports.

    hermitian:   accepted relative deviation from self-adjointness on input.
    psd:         slack for positive semi-definiteness tests (smallest
                 eigenvalue >= -psd * (1 + spectral norm)).
    equality:    slack for entrywise identities (shift consistency, corner
                 vanishing).
    kernel:      threshold below which a singular value counts as numerically
                 zero when computing near-kernels, and the acceptance level
                 for the kernel shift-invariance conclusion.
    rank:        relative eigenvalue cutoff for numerical rank decisions.
    consistency: accepted disagreement between independent computations of
                 the same quantity (dual residue formulas, realness checks).
    fit:         relative residual threshold for homogeneous polynomial fits.
    decay:       threshold for certified asymptotic decay of scaled errors.
    """

    hermitian: float = 1e-9
    psd: float = 1e-9
    equality: float = 1e-9
    kernel: float = 1e-8
    rank: float = 1e-10
    consistency: float = 1e-9
    fit: float = 1e-6
    decay: float = 1e-4

    def __post_init__(self) -> None:
        for f in dataclasses.fields(self):
            if getattr(self, f.name) <= 0:
                raise ValueError(f"tolerance {f.name!r} must be strictly positive")

    def replace(self, **kwargs: float) -> "Tolerances":
        return dataclasses.replace(self, **kwargs)

    def as_dict(self) -> dict[str, float]:
        return dataclasses.asdict(self)


DEFAULT_TOL = Tolerances()
