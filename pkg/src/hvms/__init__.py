"""Finite Hankel pairs, their operator realizations, and asymptotic
expansions of two-variable Pick functions at infinity.

The package verifies candidate Gram pairs against four matrix conditions,
constructs minimal operator realizations behind verified pairs, evaluates
the associated functions on the bi-upper half-plane, computes their scalar
moments and residues by independent routes, and extracts/certifies their
non-tangential asymptotic expansions by ray sampling.  A built-in rational
family with closed forms serves as the oracle for all of it.
"""

from .asymptotics import (
    ApproachRegion,
    ExpansionReport,
    Type1Report,
    aperture_bound_check,
    certify_expansion,
    default_regions,
    default_s_values,
    extract_residues,
    type1_limit,
    write_decay_csv,
)
from .examples import (
    ExampleSpec,
    build_example,
    closed_form_evaluator,
    closed_form_h,
    closed_form_moments,
    closed_form_residues,
    random_spec,
)
from .hankel_pair import (
    HankelPair,
    Moments1D,
    VerdictReport,
    VerificationError,
    atom_moments,
    cauchy_transform,
    hamburger_1d,
    kronecker_rank,
    pair_from_moments_1d,
    verify_hankel_pair,
)
from .indexcore import IndexSet, build_index_set, shift, shift_matrix, support
from .realization import (
    Realization,
    RealizationError,
    ScalarMoments,
    compress,
    diagonal_cauchy,
    evaluate,
    evaluator,
    gram_of,
    homogeneity_check,
    inflate,
    random_realization,
    realize,
    residue_routes,
    residues,
    resolvent_identity_residual,
    scalar_moments,
    scalar_moments_from_pair,
    validate_realization,
    vector_moment_sum,
    zero_realization,
)
from .tolerances import Tolerances

__version__ = "0.1.0"

__all__ = [
    "ApproachRegion",
    "ExampleSpec",
    "ExpansionReport",
    "HankelPair",
    "IndexSet",
    "Moments1D",
    "Realization",
    "RealizationError",
    "ScalarMoments",
    "Tolerances",
    "Type1Report",
    "VerdictReport",
    "VerificationError",
    "aperture_bound_check",
    "atom_moments",
    "build_example",
    "build_index_set",
    "cauchy_transform",
    "certify_expansion",
    "closed_form_evaluator",
    "closed_form_h",
    "closed_form_moments",
    "closed_form_residues",
    "compress",
    "default_regions",
    "default_s_values",
    "diagonal_cauchy",
    "evaluate",
    "evaluator",
    "extract_residues",
    "gram_of",
    "hamburger_1d",
    "homogeneity_check",
    "inflate",
    "kronecker_rank",
    "pair_from_moments_1d",
    "random_realization",
    "random_spec",
    "realize",
    "residue_routes",
    "residues",
    "resolvent_identity_residual",
    "scalar_moments",
    "scalar_moments_from_pair",
    "shift",
    "shift_matrix",
    "support",
    "type1_limit",
    "validate_realization",
    "vector_moment_sum",
    "verify_hankel_pair",
    "write_decay_csv",
    "zero_realization",
]
