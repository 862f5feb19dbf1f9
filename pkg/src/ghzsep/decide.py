"""Exact separability decisions for GHZ-diagonal three-qubit states.

A GHZ-diagonal state is separable iff min_i a_i >= f_max, where f_max is
the global maximum over real nonzero z of the normalized anti-diagonal
overlap

    overlap_ratio(c, z) = (c . z) / max_angle_form(z).

The maximum has a closed form routed by the signs of the Pauli
coefficients lambda = (xxx, yyx, yxy, xyy) and of the cubic vector
critical_cubics(c): it is max_i |c_i| except in the interior case, where
it is attained at an interior critical point and equals critical_bound.
Sign decisions are evaluated in exact integer arithmetic on the binary
representations of c, so boundary cases are classified deterministically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .states import (
    GhzDiagonalState,
    PauliCoefficients,
    StateLike,
    Vec4,
    XState,
    _as_x,
    is_positive,
    is_ppt,
    partial_transpose,
    pauli_coefficients,
)
from .witness import (
    WitnessCertificate,
    antidiag_overlap,
    diag_floor,
    make_witness,
    max_angle_form,
    max_antidiag_form,
    min_diag_form,
    pair,
)

__all__ = [
    "Case",
    "Verdict",
    "Detection",
    "NecessaryCheckResult",
    "critical_cubics",
    "classify_case",
    "critical_bound",
    "critical_point",
    "overlap_ratio",
    "max_overlap_ratio",
    "decide",
    "necessary_check",
    "pq_state",
]

SEPARABILITY_TOL = 1e-12


class Case(str, Enum):
    """Sign regime of the anti-diagonal c.

    I:   xxx*yyx*yxy*xyy <= 0; the threshold is max |c_i| and separability
         coincides with PPT.
    II:  positive product but no interior critical point; same threshold.
    III: positive product with an interior critical point; the threshold
         is critical_bound and PPT states can still be entangled.
    """

    I = "i"
    II = "ii"
    III = "iii"


def critical_cubics(c: Sequence[float]) -> Vec4:
    """Cubic vector t(c); the interior critical point of the overlap
    ratio has components proportional to 1/t_i."""
    c1, c2, c3, c4 = (float(x) for x in c)
    return (
        c1 * (-c1 * c1 + c2 * c2 + c3 * c3 + c4 * c4) - 2.0 * c2 * c3 * c4,
        c2 * (c1 * c1 - c2 * c2 + c3 * c3 + c4 * c4) - 2.0 * c1 * c3 * c4,
        c3 * (c1 * c1 + c2 * c2 - c3 * c3 + c4 * c4) - 2.0 * c1 * c2 * c4,
        c4 * (c1 * c1 + c2 * c2 + c3 * c3 - c4 * c4) - 2.0 * c1 * c2 * c3,
    )


def _scaled_integers(c: Sequence[float]) -> tuple[int, int, int, int]:
    """Represent floats c_i exactly as integers n_i / 2^k on a common
    dyadic scale (every finite float is such a rational)."""
    ratios = [float(x).as_integer_ratio() for x in c]
    den = max(r[1] for r in ratios)
    return tuple(num * (den // d) for num, d in ratios)  # type: ignore[return-value]


def classify_case(state: GhzDiagonalState | Sequence[float]) -> Case:
    """Case of a GHZ-diagonal state (or directly of its anti-diagonal c).

    All sign comparisons are exact: the lambda products and cubic products
    are evaluated in integer arithmetic, so values that are algebraically
    zero never flip a branch through rounding.  Zero products route to
    case I resp. case II.
    """
    c = state.c if isinstance(state, GhzDiagonalState) else tuple(float(x) for x in state)
    n1, n2, n3, n4 = _scaled_integers(c)
    l5 = n1 + n2 + n3 + n4
    l6 = -n1 - n2 + n3 + n4
    l7 = -n1 + n2 - n3 + n4
    l8 = -n1 + n2 + n3 - n4
    if l5 * l6 * l7 * l8 <= 0:
        return Case.I
    t1 = n1 * (-n1 * n1 + n2 * n2 + n3 * n3 + n4 * n4) - 2 * n2 * n3 * n4
    t2 = n2 * (n1 * n1 - n2 * n2 + n3 * n3 + n4 * n4) - 2 * n1 * n3 * n4
    t3 = n3 * (n1 * n1 + n2 * n2 - n3 * n3 + n4 * n4) - 2 * n1 * n2 * n4
    t4 = n4 * (n1 * n1 + n2 * n2 + n3 * n3 - n4 * n4) - 2 * n1 * n2 * n3
    if t1 * t4 * l6 * l7 < 0 and t2 * t3 * l5 * l8 > 0:
        return Case.III
    return Case.II


def critical_bound(lam: PauliCoefficients) -> float:
    """Value of the overlap ratio at the interior critical point:

        sqrt((xxx yyx + yxy xyy)(xxx yxy + yyx xyy)(xxx xyy + yyx yxy))
        / (8 sqrt(xxx yyx yxy xyy)).

    Requires a positive product xxx*yyx*yxy*xyy; under that condition the
    radicand is nonnegative by an even-sign-count argument, and a negative
    rounding is reported as a diagnostic error rather than a NaN.
    """
    l5, l6, l7, l8 = lam.xxx, lam.yyx, lam.yxy, lam.xyy
    prod = l5 * l6 * l7 * l8
    if prod <= 0:
        raise ValueError("critical_bound requires a positive Pauli product")
    radicand = (l5 * l6 + l7 * l8) * (l5 * l7 + l6 * l8) * (l5 * l8 + l6 * l7)
    if radicand < 0:
        raise ArithmeticError("critical bound radicand rounded negative; input is degenerate")
    return math.sqrt(radicand / prod) / 8.0


def critical_point(c: Sequence[float]) -> Vec4:
    """Interior critical point of z -> overlap_ratio(c, z), normalized to
    sum |z_i| = 1 and signed so the overlap is positive.

    Components are proportional to 1/t_i; they are built from triple
    products of the t_j so no division by a small t occurs.  Raises when
    some t_i vanishes (no interior critical point).
    """
    cc = [float(x) for x in c]
    scale = max(abs(x) for x in cc)
    if scale == 0.0:
        raise ValueError("c must be nonzero")
    t = critical_cubics([x / scale for x in cc])
    if any(x == 0.0 for x in t):
        raise ValueError("critical point undefined: a cubic component vanishes")
    s = [
        t[1] * t[2] * t[3],
        t[0] * t[2] * t[3],
        t[0] * t[1] * t[3],
        t[0] * t[1] * t[2],
    ]
    norm = sum(abs(x) for x in s)
    s = [x / norm for x in s]
    if sum(si * ci for si, ci in zip(s, cc)) < 0:
        s = [-x for x in s]
    return tuple(s)  # type: ignore[return-value]


def overlap_ratio(c: Sequence[float], z: Sequence[float]) -> float:
    """(c . z) / max_angle_form(z) for real c and real nonzero z."""
    cc = [float(x) for x in c]
    zz = [float(x) for x in z]
    return sum(ci * zi for ci, zi in zip(cc, zz)) / max_angle_form(zz)


def max_overlap_ratio(state: GhzDiagonalState) -> float:
    """Global maximum of overlap_ratio(c, .): the separability threshold
    f_max for the smallest diagonal entry."""
    case = classify_case(state)
    max_c = max(abs(x) for x in state.c)
    if case is not Case.III:
        return max_c
    try:
        return critical_bound(pauli_coefficients(state))
    except (ValueError, ArithmeticError):
        # exact signs said case III but the float product degenerated to
        # the boundary, where the bound collapses to max |c_i|
        return max_c


@dataclass(frozen=True)
class Verdict:
    """Complete decision record for a GHZ-diagonal state."""

    trace: float
    positive: bool
    ppt: bool
    npt_subsystem: str | None
    case: Case
    pauli: PauliCoefficients
    cubics: Vec4
    min_diag: float
    f_max: float
    separable: bool
    witness: WitnessCertificate | None


def _npt_subsystem(x: XState) -> str | None:
    for sub in ("A", "B", "C"):
        if not is_positive(partial_transpose(x, sub)):
            return sub
    return None


def _witness_certificate(state: GhzDiagonalState, case: Case) -> WitnessCertificate:
    c = state.c
    i = max(range(4), key=lambda k: abs(c[k]))
    zi = [0.0, 0.0, 0.0, 0.0]
    zi[i] = 1.0 if c[i] >= 0 else -1.0
    candidates = [tuple(zi)]
    if case is Case.III:
        try:
            candidates.append(critical_point(c))
        except ValueError:
            pass
    z = max(candidates, key=lambda cand: overlap_ratio(c, cand))
    j = min(range(4), key=lambda k: state.a[k])
    ej = tuple(1.0 if k == j else 0.0 for k in range(4))
    w = make_witness(ej, ej, z)
    return WitnessCertificate(
        witness=w,
        pairing=pair(state, w),
        diag_value=min_diag_form(w.a, w.b),
        antidiag_value=max_antidiag_form(w.c),
    )


def decide(state: GhzDiagonalState, include_witness: bool = True) -> Verdict:
    """Decide separability of a GHZ-diagonal state.

    Never raises on non-positive inputs: those come back with
    positive=False and separable=False.  For positive states,
    separable <=> min_i a_i >= f_max, evaluated with an absolute
    tolerance of 1e-12 on the case III bound; in cases I and II the
    comparison reduces to PPT and is exact.
    """
    positive = is_positive(state)
    ppt = is_ppt(state)
    lam = pauli_coefficients(state)
    case = classify_case(state)
    f_max = max_overlap_ratio(state)
    min_diag = min(state.a)
    separable = positive and ppt and (min_diag >= f_max - SEPARABILITY_TOL)
    npt = None
    if positive and not ppt:
        npt = _npt_subsystem(state.as_x())
    witness = None
    if include_witness and positive and not separable:
        witness = _witness_certificate(state, case)
    return Verdict(
        trace=state.trace,
        positive=positive,
        ppt=ppt,
        npt_subsystem=npt,
        case=case,
        pauli=lam,
        cubics=critical_cubics(state.c),
        min_diag=min_diag,
        f_max=f_max,
        separable=separable,
        witness=witness,
    )


class Detection(str, Enum):
    ENTANGLED_CERTIFIED = "ENTANGLED_CERTIFIED"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class NecessaryCheckResult:
    verdict: Detection
    z: tuple[complex, complex, complex, complex] | None
    margin: float

    @property
    def certified(self) -> bool:
        return self.verdict is Detection.ENTANGLED_CERTIFIED


def _violation(x: XState, z: Sequence[complex], delta: float) -> float:
    u0 = (z[0], z[1], z[2], complex(np.conjugate(z[3])))
    cval = max_antidiag_form(u0)
    if cval <= 0.0:
        return -math.inf
    return antidiag_overlap(x, z) - cval * delta


def necessary_check(state: StateLike, samples: int = 512, seed: int = 0) -> NecessaryCheckResult:
    """Search for a complex z violating the separability inequality
    antidiag_overlap(x, z) <= max_angle_form(z) * diag_floor(x).

    A violation by more than 1e-10 certifies entanglement of any X-shaped
    state (GHZ-diagonal or not); no violation is inconclusive.  The search
    combines phase-aligned coordinate directions, the real-theory optimum
    reattached to the phases of c, random complex samples and a local
    polish of the best candidate.
    """
    x = _as_x(state)
    delta = diag_floor(x)
    c = x.c

    candidates: list[tuple[complex, complex, complex, complex]] = []
    for k in range(4):
        if abs(c[k]) == 0.0:
            continue
        z = [0j, 0j, 0j, 0j]
        phase = c[k] / abs(c[k])
        z[k] = phase if k == 3 else np.conjugate(phase)
        candidates.append(tuple(z))

    mags = [abs(v) for v in c]
    if max(mags) > 0:
        if all(v.imag == 0.0 for v in c):
            # real anti-diagonal: the real-theory interior optimum applies as is
            try:
                candidates.append(
                    tuple(complex(x) for x in critical_point([v.real for v in c]))
                )
            except ValueError:
                pass
        real_candidates: list[Sequence[float]] = []
        i = max(range(4), key=lambda k: mags[k])
        e = [0.0] * 4
        e[i] = 1.0
        real_candidates.append(tuple(e))
        try:
            real_candidates.append(critical_point(mags))
        except ValueError:
            pass
        for w in real_candidates:
            z = []
            for k in range(4):
                if abs(c[k]) == 0.0:
                    z.append(complex(w[k]))
                    continue
                phase = c[k] / abs(c[k])
                z.append(w[k] * (phase if k == 3 else np.conjugate(phase)))
            candidates.append(tuple(z))

    rng = np.random.default_rng(seed)
    best_z = None
    best = -math.inf
    for z in candidates:
        v = _violation(x, z, delta)
        if v > best:
            best, best_z = v, z
    for _ in range(int(samples)):
        z = tuple(rng.standard_normal(4) + 1j * rng.standard_normal(4))
        v = _violation(x, z, delta)
        if v > best:
            best, best_z = v, z

    if best_z is not None:
        scale = 0.3
        zb = np.array(best_z, dtype=complex)
        for _ in range(200):
            zp = zb + scale * (rng.standard_normal(4) + 1j * rng.standard_normal(4)) * (
                np.abs(zb).max() + 1e-3
            )
            v = _violation(x, tuple(zp), delta)
            if v > best:
                best, zb = v, zp
            else:
                scale *= 0.97
        # the violation is homogeneous in z: normalize for a readable margin
        zb = zb / np.sum(np.abs(zb))
        best_z = tuple(zb)
        best = _violation(x, best_z, delta)

    if best > 1e-10:
        return NecessaryCheckResult(Detection.ENTANGLED_CERTIFIED, best_z, best)
    return NecessaryCheckResult(Detection.INCONCLUSIVE, None, best)


def pq_state(p: float, q: float) -> GhzDiagonalState:
    """The one-parameter-diagonal family (1/8) X(1, 1, (p, p, q, p)):
    uniform diagonal with anti-diagonal (p, p, q, p)/8."""
    p = float(p)
    q = float(q)
    if not (math.isfinite(p) and math.isfinite(q)):
        raise ValueError("p and q must be finite")
    a = (0.125, 0.125, 0.125, 0.125)
    c = (p / 8.0, p / 8.0, q / 8.0, p / 8.0)
    return GhzDiagonalState(a, c)
