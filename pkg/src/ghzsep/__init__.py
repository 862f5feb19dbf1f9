"""Exact separability analysis for three-qubit GHZ-diagonal states.

Closed-form decisions (separable / PPT-entangled / NPT-entangled) with
explicit witness certificates, cross-checked by brute-force oracles.
"""

__version__ = "0.1.0"

from .decide import (
    Case,
    Detection,
    NecessaryCheckResult,
    Verdict,
    classify_case,
    critical_bound,
    critical_cubics,
    critical_point,
    decide,
    max_overlap_ratio,
    necessary_check,
    overlap_ratio,
    pq_state,
)
from .states import (
    GhzDiagonalState,
    GhzWeights,
    PauliCoefficients,
    XState,
    from_ghz_weights,
    from_pauli_coefficients,
    ghz_basis,
    is_positive,
    is_ppt,
    partial_transpose,
    pauli_coefficients,
    symmetrize,
    to_dense,
    x_part,
)
from .witness import (
    Region,
    WitnessCertificate,
    antidiag_overlap,
    classify_region,
    diag_floor,
    is_witness,
    make_witness,
    make_x_witness,
    max_angle_form,
    max_antidiag_form,
    min_diag_form,
    pair,
)

__all__ = [
    "__version__",
    "Case",
    "Detection",
    "GhzDiagonalState",
    "GhzWeights",
    "NecessaryCheckResult",
    "PauliCoefficients",
    "Region",
    "Verdict",
    "WitnessCertificate",
    "XState",
    "antidiag_overlap",
    "classify_case",
    "classify_region",
    "critical_bound",
    "critical_cubics",
    "critical_point",
    "decide",
    "diag_floor",
    "from_ghz_weights",
    "from_pauli_coefficients",
    "ghz_basis",
    "is_positive",
    "is_ppt",
    "is_witness",
    "make_witness",
    "make_x_witness",
    "max_angle_form",
    "max_antidiag_form",
    "max_overlap_ratio",
    "min_diag_form",
    "necessary_check",
    "overlap_ratio",
    "pair",
    "partial_transpose",
    "pauli_coefficients",
    "pq_state",
    "symmetrize",
    "to_dense",
    "x_part",
]
