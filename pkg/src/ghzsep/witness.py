"""Witness functionals for X-shaped operators.

An X-shaped W = X(s, t, u) with nonnegative diagonal is an entanglement
witness iff it is not positive semidefinite and

    min_diag_form(s, t) >= max_antidiag_form(u),

where min_diag_form is the infimum over a product-state scale r of the
diagonal pairing and max_antidiag_form is the largest anti-diagonal
pairing over a relative phase.  The separability threshold function
max_angle_form(z) is the supremum of the three-angle cosine form

    F(z) = Re(z1 e^{i(al+be+ga)} + z2 e^{i al} + z3 e^{i be} + z4 e^{i ga})

and coincides with max_antidiag_form(z1, z2, z3, conj(z4)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .states import CVec4, StateLike, Vec4, XState, _as_x, is_positive

__all__ = [
    "Region",
    "classify_region",
    "min_diag_form",
    "max_antidiag_form",
    "max_angle_form",
    "angle_form_crosscheck",
    "pair",
    "antidiag_overlap",
    "diag_floor",
    "is_witness",
    "make_witness",
    "make_x_witness",
    "WitnessCertificate",
]

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0
_B_GRID = 4096


def _golden_min(f, lo: float, hi: float, tol: float = 1e-12) -> float:
    """Minimum value of a unimodal f on [lo, hi] by golden-section search.

    Tracks the best value seen, so monotone functions resolve to the
    cheaper endpoint.
    """
    best = min(f(lo), f(hi))
    x1 = hi - _INVPHI * (hi - lo)
    x2 = lo + _INVPHI * (hi - lo)
    f1, f2 = f(x1), f(x2)
    best = min(best, f1, f2)
    while hi - lo > tol:
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _INVPHI * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _INVPHI * (hi - lo)
            f2 = f(x2)
        best = min(best, f1, f2)
    return best


def _real_vec4(v: Sequence[float], name: str, nonnegative: bool = False) -> Vec4:
    t = tuple(float(x) for x in v)
    if len(t) != 4:
        raise ValueError(f"{name} must have exactly 4 entries")
    if not all(math.isfinite(x) for x in t):
        raise ValueError(f"{name} must be finite")
    if nonnegative and any(x < 0 for x in t):
        raise ValueError(f"{name} must be nonnegative")
    return t  # type: ignore[return-value]


def _complex_vec4(v: Sequence[complex], name: str) -> CVec4:
    t = tuple(complex(x) for x in v)
    if len(t) != 4:
        raise ValueError(f"{name} must have exactly 4 entries")
    if not all(math.isfinite(x.real) and math.isfinite(x.imag) for x in t):
        raise ValueError(f"{name} must be finite")
    return t  # type: ignore[return-value]


class Region(Enum):
    """Pieces of the closed form for max_angle_form on real vectors.

    POSITIVE: product z1 z2 z3 z4 >= 0 (value is sum |z_i|).
    DOMINANT_i: product < 0 and 1/|z_i| >= sum of the other reciprocals
    (value is sum |z_j| - 2 |z_i|).
    QUADRANGLE: product < 0 and the reciprocals close a quadrangle
    (value is the interior square root formula).
    """

    POSITIVE = "positive"
    DOMINANT_1 = "dominant_1"
    DOMINANT_2 = "dominant_2"
    DOMINANT_3 = "dominant_3"
    DOMINANT_4 = "dominant_4"
    QUADRANGLE = "quadrangle"

    @property
    def dominant_index(self) -> int | None:
        if self.value.startswith("dominant_"):
            return int(self.value[-1])
        return None


def classify_region(z: Sequence[float]) -> Region:
    """Region of a nonzero real 4-vector; ties go to DOMINANT_i.

    The reciprocal comparison 1/|z_i| >= sum_{j != i} 1/|z_j| is evaluated
    with cleared denominators (triple products), so no division occurs.
    """
    t = _real_vec4(z, "z")
    if all(x == 0 for x in t):
        raise ValueError("z must be nonzero")
    if t[0] * t[1] * t[2] * t[3] >= 0:
        return Region.POSITIVE
    m = [abs(x) for x in t]
    triples = [m[1] * m[2] * m[3], m[0] * m[2] * m[3], m[0] * m[1] * m[3], m[0] * m[1] * m[2]]
    total = sum(triples)
    for i in range(4):
        # 1/|z_i| >= sum_{j != i} 1/|z_j|  <=>  triples[i] >= total - triples[i]
        if triples[i] >= total - triples[i]:
            return Region(f"dominant_{i + 1}")
    return Region.QUADRANGLE


def min_diag_form(s: Sequence[float], t: Sequence[float]) -> float:
    """inf over r > 0 of sqrt((s1/r + t4 r)(s4/r + t1 r))
                       + sqrt((s2/r + t3 r)(s3/r + t2 r)).

    With r = e^theta each radicand is a positive mix of e^{-2 theta}, 1 and
    e^{2 theta}, so the objective is convex in theta; a golden-section
    search on theta in [-40, 40] covers the interior minimum and both
    r -> 0, r -> inf limits to well below 1e-10.
    """
    ss = _real_vec4(s, "s", nonnegative=True)
    tt = _real_vec4(t, "t", nonnegative=True)
    p1, q1, r1 = ss[0] * ss[3], ss[0] * tt[0] + ss[3] * tt[3], tt[0] * tt[3]
    p2, q2, r2 = ss[1] * ss[2], ss[1] * tt[1] + ss[2] * tt[2], tt[1] * tt[2]

    def g(theta: float) -> float:
        u = math.exp(-2.0 * theta)
        v = math.exp(2.0 * theta)
        return math.sqrt(p1 * u + q1 + r1 * v) + math.sqrt(p2 * u + q2 + r2 * v)

    return _golden_min(g, -40.0, 40.0)


def _cos_form_max(a1: float, b1: float, s1: float, a2: float, b2: float, s2: float) -> float:
    """max over x in [-1, 1] of sqrt(a1 + s1 b1 x) + sqrt(a2 + s2 b2 x).

    Both terms are concave in x, so the maximum is interior or at an
    endpoint; a golden-section search plus the endpoints is exact to
    machine precision.
    """

    def q(x: float) -> float:
        return math.sqrt(max(a1 + s1 * b1 * x, 0.0)) + math.sqrt(max(a2 + s2 * b2 * x, 0.0))

    return -_golden_min(lambda x: -q(x), -1.0, 1.0)


def max_antidiag_form(u: Sequence[complex]) -> float:
    """max over theta of |u1 e^{i theta} + conj(u4)| + |u2 e^{i theta} + conj(u3)|.

    Each modulus is sqrt(A_k + 2 Re(w_k e^{i theta})) with w1 = u1 u4 and
    w2 = u2 u3.  Real w reduces to a concave problem in cos(theta); the
    general case is a dense theta grid with golden-section refinement of
    every local maximum.
    """
    uu = _complex_vec4(u, "u")
    w1 = uu[0] * uu[3]
    w2 = uu[1] * uu[2]
    a1 = abs(uu[0]) ** 2 + abs(uu[3]) ** 2
    a2 = abs(uu[1]) ** 2 + abs(uu[2]) ** 2
    if w1.imag == 0.0 and w2.imag == 0.0:
        b1, s1 = 2.0 * abs(w1.real), 1.0 if w1.real >= 0 else -1.0
        b2, s2 = 2.0 * abs(w2.real), 1.0 if w2.real >= 0 else -1.0
        return _cos_form_max(a1, b1, s1, a2, b2, s2)

    theta = np.linspace(0.0, 2.0 * math.pi, _B_GRID, endpoint=False)
    e = np.exp(1j * theta)
    vals = np.sqrt(np.clip(a1 + 2.0 * (w1 * e).real, 0.0, None)) + np.sqrt(
        np.clip(a2 + 2.0 * (w2 * e).real, 0.0, None)
    )
    left = np.roll(vals, 1)
    right = np.roll(vals, -1)
    peaks = np.flatnonzero((vals >= left) & (vals >= right))
    if peaks.size > 8:
        peaks = peaks[np.argsort(vals[peaks])[-8:]]

    def q(th: float) -> float:
        m1 = max(a1 + 2.0 * (w1 * complex(math.cos(th), math.sin(th))).real, 0.0)
        m2 = max(a2 + 2.0 * (w2 * complex(math.cos(th), math.sin(th))).real, 0.0)
        return math.sqrt(m1) + math.sqrt(m2)

    step = 2.0 * math.pi / _B_GRID
    best = float(vals.max())
    for k in peaks:
        th0 = theta[int(k)]
        best = max(best, -_golden_min(lambda th: -q(th), th0 - step, th0 + step))
    return best


def max_angle_form(z: Sequence[float]) -> float:
    """Supremum over three angles of the cosine form F for real z,
    in closed form by region.

    On QUADRANGLE the value is
    sqrt((z1 z2 - z3 z4)(z2 z4 - z1 z3)(z1 z4 - z2 z3) / (-z1 z2 z3 z4));
    with an odd number of negative entries every factor is a sum of two
    same-sign products, so the radicand is strictly positive there.
    """
    t = _real_vec4(z, "z")
    reg = classify_region(t)
    m = [abs(x) for x in t]
    if reg is Region.POSITIVE:
        return sum(m)
    if reg is not Region.QUADRANGLE:
        return sum(m) - 2.0 * m[reg.dominant_index - 1]
    z1, z2, z3, z4 = t
    radicand = (z1 * z2 - z3 * z4) * (z2 * z4 - z1 * z3) * (z1 * z4 - z2 * z3) / (
        -z1 * z2 * z3 * z4
    )
    if radicand <= 0.0:
        raise ArithmeticError("quadrangle radicand is not positive; input is degenerate")
    return math.sqrt(radicand)


def angle_form_crosscheck(z: Sequence[complex], grid: int = 128) -> tuple[float, float]:
    """(grid supremum of |F|, max_antidiag_form(z1, z2, z3, conj(z4))).

    Diagnostic pair: the two entries agree for any complex z because the
    three-angle supremum reduces to the single-phase form.
    """
    zz = _complex_vec4(z, "z")
    from .oracles import angle_form_grid_max

    oracle = angle_form_grid_max(zz, grid=grid)
    reduced = max_antidiag_form((zz[0], zz[1], zz[2], np.conjugate(zz[3])))
    return oracle, reduced


def pair(rho: StateLike, w: StateLike) -> float:
    """Bilinear pairing Tr(rho W^T) of two X-shaped operators:
    sum a_i s_i + sum b_i t_i + 2 Re sum c_i u_i."""
    r = _as_x(rho)
    x = _as_x(w)
    d = sum(r.a[i] * x.a[i] + r.b[i] * x.b[i] for i in range(4))
    o = sum((r.c[i] * x.c[i]).real for i in range(4))
    return d + 2.0 * o


def antidiag_overlap(rho: StateLike, z: Sequence[complex]) -> float:
    """Re(z1 c1 + z2 c2 + z3 c3 + z4 conj(c4)) for the state's anti-diagonal c."""
    zz = _complex_vec4(z, "z")
    c = _as_x(rho).c
    return (zz[0] * c[0] + zz[1] * c[1] + zz[2] * c[2] + zz[3] * np.conjugate(c[3])).real


def diag_floor(rho: StateLike) -> float:
    """min of sqrt(a_i b_i) (i = 1..4), (a1 b2 b3 a4)^{1/4} and
    (b1 a2 a3 b4)^{1/4}: the diagonal scale against which anti-diagonal
    overlaps are tested."""
    x = _as_x(rho)
    if any(v < 0 for v in x.a) or any(v < 0 for v in x.b):
        raise ValueError("diagonal entries must be nonnegative")
    a, b = x.a, x.b
    vals = [math.sqrt(a[i] * b[i]) for i in range(4)]
    vals.append((a[0] * b[1] * b[2] * a[3]) ** 0.25)
    vals.append((b[0] * a[1] * a[2] * b[3]) ** 0.25)
    return min(vals)


def is_witness(w: StateLike, tol: float = 1e-12) -> bool:
    """True iff W is X-shaped block-positive but not positive: nonnegative
    diagonal, not PSD, and min_diag_form >= max_antidiag_form - tol."""
    x = _as_x(w)
    if any(v < 0 for v in x.a) or any(v < 0 for v in x.b):
        return False
    if is_positive(x):
        return False
    return min_diag_form(x.a, x.b) >= max_antidiag_form(x.c) - tol


@dataclass(frozen=True)
class WitnessCertificate:
    """A normalized witness together with the quantities that certify it:
    diag_value >= antidiag_value makes it a witness, pairing < 0 makes it
    detect the state it was built for."""

    witness: XState
    pairing: float
    diag_value: float
    antidiag_value: float


def make_witness(x: Sequence[float], y: Sequence[float], z: Sequence[complex]) -> XState:
    """Witness candidate X(x/A, y/A, -(z1, z2, z3, conj(z4))/C) with
    A = min_diag_form(x, y) and C the angle-form supremum of z.

    The normalization makes diag and anti-diag values both exactly 1, so
    the result sits on the witness boundary.
    """
    xs = _real_vec4(x, "x", nonnegative=True)
    ys = _real_vec4(y, "y", nonnegative=True)
    zz = _complex_vec4(z, "z")
    if all(v == 0 for v in zz):
        raise ValueError("z must be nonzero")
    a = min_diag_form(xs, ys)
    if a <= 1e-300:
        raise ValueError("diagonal form vanishes; cannot normalize witness")
    u0 = (zz[0], zz[1], zz[2], complex(np.conjugate(zz[3])))
    if all(v.imag == 0.0 for v in zz):
        cval = max_angle_form([v.real for v in zz])
    else:
        cval = max_antidiag_form(u0)
    s = tuple(v / a for v in xs)
    t = tuple(v / a for v in ys)
    u = tuple(-v / cval for v in u0)
    return XState(s, t, u)


def _diag_patterns(a: Vec4, b: Vec4, eps: float) -> list[tuple[Vec4, Vec4]]:
    """Candidate (x, y) pairs whose pairing against the diagonal equals
    2 sqrt(a_i b_i), 4 (a1 b2 b3 a4)^{1/4} or 4 (b1 a2 a3 b4)^{1/4} after
    A-normalization: one pair per entry of diag_floor.

    Entries on a vanishing block get the scale eps instead, pushing the
    diagonal pairing toward 0.
    """
    out: list[tuple[Vec4, Vec4]] = []
    for i in range(4):
        xv, yv = [0.0] * 4, [0.0] * 4
        if a[i] > 0 and b[i] > 0:
            xv[i] = math.sqrt(b[i] / a[i])
            yv[i] = 1.0 / xv[i]
        elif a[i] == 0 and b[i] == 0:
            xv[i] = yv[i] = 1.0
        elif a[i] == 0:
            yv[i] = eps / b[i]
            xv[i] = 1.0 / yv[i]
        else:
            xv[i] = eps / a[i]
            yv[i] = 1.0 / xv[i]
        out.append((tuple(xv), tuple(yv)))
    if min(a[0], b[1], b[2], a[3]) > 0:
        out.append(
            (
                ((a[0] ** -3 * b[1] * b[2] * a[3]) ** 0.25, 0.0, 0.0,
                 (a[0] * b[1] * b[2] * a[3] ** -3) ** 0.25),
                (0.0, (a[0] * b[1] ** -3 * b[2] * a[3]) ** 0.25,
                 (a[0] * b[1] * b[2] ** -3 * a[3]) ** 0.25, 0.0),
            )
        )
    if min(b[0], a[1], a[2], b[3]) > 0:
        out.append(
            (
                (0.0, (b[0] * a[1] ** -3 * a[2] * b[3]) ** 0.25,
                 (b[0] * a[1] * a[2] ** -3 * b[3]) ** 0.25, 0.0),
                ((b[0] ** -3 * a[1] * a[2] * b[3]) ** 0.25, 0.0, 0.0,
                 (b[0] * a[1] * a[2] * b[3] ** -3) ** 0.25),
            )
        )
    return out


def make_x_witness(rho: StateLike, z: Sequence[complex]) -> WitnessCertificate:
    """Witness detecting a general X-shaped state from a direction z that
    violates antidiag_overlap <= max_angle_form * diag_floor.

    Tries every diag_floor pattern for (x, y) and keeps the candidate with
    the most negative pairing; for the pattern attaining diag_floor the
    pairing is exactly 2 (diag_floor - overlap / angle form) < 0.
    """
    x = _as_x(rho)
    zz = _complex_vec4(z, "z")
    u0 = (zz[0], zz[1], zz[2], complex(np.conjugate(zz[3])))
    cval = max_antidiag_form(u0)
    if cval <= 0.0:
        raise ValueError("z has a vanishing angle form")
    overlap = antidiag_overlap(x, zz)
    best: WitnessCertificate | None = None
    for xv, yv in _diag_patterns(x.a, x.b, eps=max(overlap / cval, 1e-12)):
        w = make_witness(xv, yv, zz)
        cert = WitnessCertificate(
            witness=w,
            pairing=pair(x, w),
            diag_value=min_diag_form(w.a, w.b),
            antidiag_value=max_antidiag_form(w.c),
        )
        if best is None or cert.pairing < best.pairing:
            best = cert
    if best is None or best.pairing >= 0.0:
        raise ValueError("z does not detect this state")
    return best
