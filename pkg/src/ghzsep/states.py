"""Compact X-shaped operators on three qubits and GHZ-diagonal states.

An X-shaped Hermitian operator on (C^2)^{x3} has support on the main
diagonal and the main anti-diagonal only.  It is stored as two real
diagonal 4-vectors a, b and one complex anti-diagonal 4-vector c:

    diag         = (a1, a2, a3, a4, b4, b3, b2, b1)
    antidiag     = (c1, c2, c3, c4)  on rows 1..4 (1-based), conjugated below.

GHZ-diagonal states are the X-shaped states with b = a and real c; they are
exactly the mixtures of the eight GHZ basis vectors
(|ijk> + (-1)^i |~i ~j ~k>)/sqrt(2) in lexicographic order of ijk.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

__all__ = [
    "XState",
    "GhzDiagonalState",
    "GhzWeights",
    "PauliCoefficients",
    "from_ghz_weights",
    "to_dense",
    "x_part",
    "pauli_coefficients",
    "from_pauli_coefficients",
    "is_positive",
    "partial_transpose",
    "is_ppt",
    "symmetrize",
    "ghz_basis",
]

Vec4 = tuple[float, float, float, float]
CVec4 = tuple[complex, complex, complex, complex]


def _real4(v: Sequence[float], name: str) -> Vec4:
    t = tuple(float(x) for x in v)
    if len(t) != 4:
        raise ValueError(f"{name} must have exactly 4 entries, got {len(t)}")
    if not all(np.isfinite(t)):
        raise ValueError(f"{name} must be finite")
    return t  # type: ignore[return-value]


def _complex4(v: Sequence[complex], name: str) -> CVec4:
    t = tuple(complex(x) for x in v)
    if len(t) != 4:
        raise ValueError(f"{name} must have exactly 4 entries, got {len(t)}")
    if not all(np.isfinite(x.real) and np.isfinite(x.imag) for x in t):
        raise ValueError(f"{name} must be finite")
    return t  # type: ignore[return-value]


@dataclass(frozen=True)
class XState:
    """X-shaped Hermitian operator X(a, b, c).  Not necessarily positive."""

    a: Vec4
    b: Vec4
    c: CVec4

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", _real4(self.a, "a"))
        object.__setattr__(self, "b", _real4(self.b, "b"))
        object.__setattr__(self, "c", _complex4(self.c, "c"))

    @property
    def trace(self) -> float:
        return sum(self.a) + sum(self.b)


@dataclass(frozen=True)
class GhzDiagonalState:
    """X(a, a, c) with real c: a mixture of the eight GHZ basis projectors.

    Positivity (|c_i| <= a_i) is not enforced here; is_positive reports it.
    """

    a: Vec4
    c: Vec4

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", _real4(self.a, "a"))
        object.__setattr__(self, "c", _real4(self.c, "c"))

    def as_x(self) -> XState:
        return XState(self.a, self.a, tuple(complex(x) for x in self.c))

    @property
    def trace(self) -> float:
        return 2.0 * sum(self.a)


@dataclass(frozen=True)
class GhzWeights:
    """Nonnegative weights p1..p8 over the GHZ basis projectors."""

    p: tuple[float, float, float, float, float, float, float, float]

    def __post_init__(self) -> None:
        t = tuple(float(x) for x in self.p)
        if len(t) != 8:
            raise ValueError(f"weights must have exactly 8 entries, got {len(t)}")
        if not all(np.isfinite(t)):
            raise ValueError("weights must be finite")
        if any(x < 0 for x in t):
            raise ValueError("weights must be nonnegative")
        object.__setattr__(self, "p", t)


@dataclass(frozen=True)
class PauliCoefficients:
    """Coefficients of the seven non-identity Pauli words carried by a
    GHZ-diagonal state rho = (1/8)(III + sum_k lambda_k P_k).

    Fields are named by their Pauli word: zzi is the coefficient of
    Z(x)Z(x)I, xxx of X(x)X(x)X, and so on.
    """

    zzi: float
    ziz: float
    izz: float
    xxx: float
    yyx: float
    yxy: float
    xyy: float

    def as_tuple(self) -> tuple[float, ...]:
        return (self.zzi, self.ziz, self.izz, self.xxx, self.yyx, self.yxy, self.xyy)


StateLike = Union[XState, GhzDiagonalState]


def _as_x(state: StateLike) -> XState:
    return state.as_x() if isinstance(state, GhzDiagonalState) else state


def from_ghz_weights(p: GhzWeights | Sequence[float]) -> GhzDiagonalState:
    """State sum_i p_i |ghz_i><ghz_i| as a GhzDiagonalState.

    a_i = (p_i + p_{9-i})/2 and c_i = (p_i - p_{9-i})/2: each GHZ pair
    (i, 9-i) shares a 2x2 block with +-1/2 anti-diagonal entries.
    """
    w = p if isinstance(p, GhzWeights) else GhzWeights(tuple(p))
    q = w.p
    a = tuple((q[i] + q[7 - i]) / 2.0 for i in range(4))
    c = tuple((q[i] - q[7 - i]) / 2.0 for i in range(4))
    return GhzDiagonalState(a, c)


def to_dense(state: StateLike) -> np.ndarray:
    """Dense 8x8 complex Hermitian matrix for an X-shaped operator."""
    x = _as_x(state)
    m = np.zeros((8, 8), dtype=complex)
    for i in range(4):
        m[i, i] = x.a[i]
        m[7 - i, 7 - i] = x.b[i]
        m[i, 7 - i] = x.c[i]
        m[7 - i, i] = np.conjugate(x.c[i])
    return m


def x_part(m: np.ndarray, tol: float = 1e-10) -> XState:
    """Project a Hermitian 8x8 matrix onto its X-shaped part.

    Rejects inputs that are not Hermitian within tol.
    """
    m = np.asarray(m, dtype=complex)
    if m.shape != (8, 8):
        raise ValueError(f"expected an 8x8 matrix, got shape {m.shape}")
    if np.max(np.abs(m - m.conj().T)) > tol:
        raise ValueError("matrix is not Hermitian")
    a = tuple(m[i, i].real for i in range(4))
    b = tuple(m[7 - i, 7 - i].real for i in range(4))
    # average the two anti-diagonal triangles so the result is exactly Hermitian
    c = tuple((m[i, 7 - i] + np.conjugate(m[7 - i, i])) / 2.0 for i in range(4))
    return XState(a, b, c)


def pauli_coefficients(state: GhzDiagonalState) -> PauliCoefficients:
    """Pauli-word coefficients of a GHZ-diagonal state (trace not required
    to be 1; coefficients scale with the state)."""
    a1, a2, a3, a4 = state.a
    c1, c2, c3, c4 = state.c
    return PauliCoefficients(
        zzi=2.0 * (a1 + a2 - a3 - a4),
        ziz=2.0 * (a1 - a2 + a3 - a4),
        izz=2.0 * (a1 - a2 - a3 + a4),
        xxx=2.0 * (c1 + c2 + c3 + c4),
        yyx=2.0 * (-c1 - c2 + c3 + c4),
        yxy=2.0 * (-c1 + c2 - c3 + c4),
        xyy=2.0 * (-c1 + c2 + c3 - c4),
    )


def from_pauli_coefficients(lam: PauliCoefficients, trace: float = 1.0) -> GhzDiagonalState:
    """Invert pauli_coefficients given the trace of the state."""
    h = trace / 2.0
    a = (
        (h + (lam.zzi + lam.ziz + lam.izz) / 2.0) / 4.0,
        (h + (lam.zzi - lam.ziz - lam.izz) / 2.0) / 4.0,
        (h + (-lam.zzi + lam.ziz - lam.izz) / 2.0) / 4.0,
        (h + (-lam.zzi - lam.ziz + lam.izz) / 2.0) / 4.0,
    )
    c = (
        (lam.xxx - lam.yyx - lam.yxy - lam.xyy) / 8.0,
        (lam.xxx - lam.yyx + lam.yxy + lam.xyy) / 8.0,
        (lam.xxx + lam.yyx - lam.yxy + lam.xyy) / 8.0,
        (lam.xxx + lam.yyx + lam.yxy - lam.xyy) / 8.0,
    )
    return GhzDiagonalState(a, c)


def is_positive(state: StateLike) -> bool:
    """Positive semidefiniteness: a_i >= 0, b_i >= 0 and a_i b_i >= |c_i|^2.

    Each anti-diagonal pair (i, 9-i) forms an independent 2x2 block.
    """
    x = _as_x(state)
    for i in range(4):
        ai, bi, ci = x.a[i], x.b[i], x.c[i]
        if ai < 0 or bi < 0:
            return False
        if ai * bi < ci.real * ci.real + ci.imag * ci.imag:
            return False
    return True


_PT_PERMUTATION = {"C": (1, 0, 3, 2), "B": (2, 3, 0, 1)}


def partial_transpose(state: StateLike, subsystem: str) -> XState:
    """Partial transpose over one qubit; subsystem is "A", "B" or "C"
    (first, second, third tensor factor).

    Transposing a qubit permutes the anti-diagonal within the X shape and
    leaves the diagonal fixed: "C" swaps c1<->c2 and c3<->c4, "B" swaps
    c1<->c3 and c2<->c4, "A" reverses c and conjugates.
    """
    x = _as_x(state)
    if subsystem == "A":
        c = tuple(np.conjugate(x.c[3 - i]) for i in range(4))
    elif subsystem in _PT_PERMUTATION:
        perm = _PT_PERMUTATION[subsystem]
        c = tuple(x.c[perm[i]] for i in range(4))
    else:
        raise ValueError(f'subsystem must be "A", "B" or "C", got {subsystem!r}')
    return XState(x.a, x.b, c)


def is_ppt(state: StateLike) -> bool:
    """True iff the state and all three partial transposes are positive.

    The three anti-diagonal permutations cover all pairings of diagonal
    blocks with anti-diagonal entries, so the conjunction collapses to
    min_i a_i b_i >= max_j |c_j|^2 together with positivity itself.
    """
    x = _as_x(state)
    if not is_positive(x):
        return False
    min_ab = min(x.a[i] * x.b[i] for i in range(4))
    max_c2 = max(ci.real * ci.real + ci.imag * ci.imag for ci in x.c)
    return min_ab >= max_c2


def symmetrize(state: StateLike) -> XState:
    """Average with the global bit-flip conjugate: X((a+b)/2, (a+b)/2, Re c).

    Idempotent, and self-adjoint for the pairing: pairing a symmetrized
    state against W equals pairing the state against symmetrize(W).
    """
    x = _as_x(state)
    d = tuple((x.a[i] + x.b[i]) / 2.0 for i in range(4))
    return XState(d, d, tuple(complex(ci.real) for ci in x.c))


def ghz_basis() -> np.ndarray:
    """The eight GHZ basis vectors as rows, lexicographic in ijk:
    (|ijk> + (-1)^i |~i~j~k>)/sqrt(2)."""
    v = np.zeros((8, 8), dtype=complex)
    s = 1.0 / np.sqrt(2.0)
    for n in range(8):
        v[n, n] = s
        v[n, 7 - n] = -s if n >= 4 else s
    return v
