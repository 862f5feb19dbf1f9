"""Brute-force oracles that cross-check the closed forms.

Everything in this module is deliberately independent of the closed-form
routes: the angle-form oracle maximizes over a dense three-angle lattice,
the PPT oracle builds dense partial transposes and diagonalizes them, the
witness probe samples pure product states, and decompose searches for an
explicit separable decomposition.  None of them consult the region
classification, the Pauli-sign case analysis or the closed-form bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np
from scipy.optimize import minimize, nnls

from .decide import critical_point, overlap_ratio
from .states import GhzDiagonalState, StateLike, XState, _as_x, is_positive, to_dense
from .witness import _golden_min

__all__ = [
    "angle_form_grid_max",
    "overlap_ratio_search",
    "dense_partial_transpose",
    "eigen_min",
    "eigen_ppt",
    "product_probe",
    "random_x_state",
    "random_ghz_state",
    "ProductAtom",
    "Decomposition",
    "decompose",
]


@lru_cache(maxsize=2)
def _phase_cache(grid: int) -> tuple[np.ndarray, np.ndarray]:
    theta = np.linspace(0.0, 2.0 * math.pi, grid, endpoint=False)
    e = np.exp(1j * theta)
    triple = e[:, None, None] * e[None, :, None] * e[None, None, :]
    return e, triple


def _angle_form(z: Sequence[complex], al: float, be: float, ga: float) -> float:
    z1, z2, z3, z4 = z
    return (
        z1 * complex(math.cos(al + be + ga), math.sin(al + be + ga))
        + z2 * complex(math.cos(al), math.sin(al))
        + z3 * complex(math.cos(be), math.sin(be))
        + z4 * complex(math.cos(ga), math.sin(ga))
    ).real


def angle_form_grid_max(z: Sequence[complex], grid: int = 128, polish: int = 4) -> float:
    """Supremum of |F(z)| over the three angles: exhaustive search on a
    grid^3 lattice, then a simplex polish from the best few lattice basins.

    Coordinatewise line search stalls on diagonal ridges of F, so the
    polish is an unconstrained Nelder-Mead on the signed form.
    """
    zz = tuple(complex(v) for v in z)
    e, triple = _phase_cache(int(grid))
    f = (
        zz[0] * triple
        + zz[1] * e[:, None, None]
        + zz[2] * e[None, :, None]
        + zz[3] * e[None, None, :]
    ).real
    absf = np.abs(f)
    step = 2.0 * math.pi / grid

    def _tdist(a: int, b: int) -> int:
        d = abs(a - b)
        return min(d, grid - d)

    # top lattice points, deduplicated to distinct basins (toroidal distance)
    order = np.argsort(absf, axis=None)[::-1]
    seeds: list[tuple[int, int, int]] = []
    for flat in order[: 4 * grid]:
        i, j, k = (int(v) for v in np.unravel_index(flat, f.shape))
        if all(max(_tdist(i, si), _tdist(j, sj), _tdist(k, sk)) > 2 for si, sj, sk in seeds):
            seeds.append((i, j, k))
        if len(seeds) >= int(polish):
            break

    best = float(absf.max())
    for i, j, k in seeds:
        sign = 1.0 if f[i, j, k] >= 0 else -1.0

        def neg(t: np.ndarray) -> float:
            return -sign * _angle_form(zz, float(t[0]), float(t[1]), float(t[2]))

        res = minimize(
            neg,
            np.array([i, j, k], dtype=float) * step,
            method="Nelder-Mead",
            options={"xatol": 1e-12, "fatol": 1e-14, "maxiter": 2000},
        )
        best = max(best, -float(res.fun))
    return best


def overlap_ratio_search(c: Sequence[float], starts: int = 32, seed: int = 0) -> float:
    """Best value of overlap_ratio(c, .) found by multi-start Nelder-Mead:
    the 8 signed coordinate vectors, the interior critical point when it
    exists, and random starts cycling through all 16 orthants."""
    cc = [float(v) for v in c]
    rng = np.random.default_rng(seed)

    def neg(zv: np.ndarray) -> float:
        if not np.any(zv):
            return math.inf
        return -overlap_ratio(cc, zv)

    inits: list[np.ndarray] = []
    for i in range(4):
        for s in (1.0, -1.0):
            e = np.zeros(4)
            e[i] = s
            inits.append(e)
    try:
        inits.append(np.array(critical_point(cc)))
    except ValueError:
        pass
    orthants = [np.array([1 if (n >> b) & 1 else -1 for b in range(4)], dtype=float) for n in range(16)]
    for n in range(int(starts)):
        inits.append(orthants[n % 16] * rng.uniform(0.1, 1.0, 4))

    best = -math.inf
    for z0 in inits:
        res = minimize(
            neg,
            z0,
            method="Nelder-Mead",
            options={"xatol": 1e-10, "fatol": 1e-12, "maxiter": 600},
        )
        best = max(best, -float(res.fun))
    return best


def dense_partial_transpose(m: np.ndarray, qubit: int) -> np.ndarray:
    """Partial transpose of a dense 8x8 matrix over qubit 0, 1 or 2 by
    index permutation on the (2,2,2,2,2,2) tensor."""
    t = np.asarray(m, dtype=complex).reshape(2, 2, 2, 2, 2, 2)
    axes = list(range(6))
    axes[qubit], axes[3 + qubit] = axes[3 + qubit], axes[qubit]
    return t.transpose(axes).reshape(8, 8)


def eigen_min(m: np.ndarray) -> float:
    return float(np.linalg.eigvalsh(m)[0])


def eigen_ppt(state: StateLike, cutoff: float = -1e-10) -> bool:
    """PPT by brute force: dense state and all three dense partial
    transposes must have no eigenvalue below cutoff."""
    m = to_dense(state)
    if eigen_min(m) < cutoff:
        return False
    for qubit in range(3):
        if eigen_min(dense_partial_transpose(m, qubit)) < cutoff:
            return False
    return True


def _unit_rows(rng: np.random.Generator, n: int) -> np.ndarray:
    v = rng.standard_normal((n, 2)) + 1j * rng.standard_normal((n, 2))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


_KET0 = np.array([1.0, 0.0], dtype=complex)
_KET1 = np.array([0.0, 1.0], dtype=complex)
_PLUS = np.array([1.0, 1.0], dtype=complex) / math.sqrt(2.0)
_MINUS = np.array([1.0, -1.0], dtype=complex) / math.sqrt(2.0)
_PLUS_I = np.array([1.0, 1.0j], dtype=complex) / math.sqrt(2.0)
_MINUS_I = np.array([1.0, -1.0j], dtype=complex) / math.sqrt(2.0)


def _structured_products() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    xs, ys, zs = [], [], []
    for basis in ((_KET0, _KET1), (_PLUS, _MINUS), (_PLUS_I, _MINUS_I)):
        for n in range(8):
            xs.append(basis[(n >> 2) & 1])
            ys.append(basis[(n >> 1) & 1])
            zs.append(basis[n & 1])
    return np.array(xs), np.array(ys), np.array(zs)


def product_probe(w: StateLike, samples: int = 100_000, seed: int = 0) -> float:
    """Minimum pairing of w against pure product states: random samples,
    their sign-flipped variants |x+->|y+->|z+-> with an even number of
    flips, and a fixed set of structured basis products.

    A true witness never goes below zero here (up to numerical noise); a
    clearly negative minimum disproves block positivity.
    """
    x = _as_x(w)
    rng = np.random.default_rng(seed)
    n_base = max(1, int(samples) // 4)
    xs = _unit_rows(rng, n_base)
    ys = _unit_rows(rng, n_base)
    zs = _unit_rows(rng, n_base)

    flip = np.array([1.0, -1.0])
    # even-flip family: (+,+,+), (+,-,-), (-,+,-), (-,-,+)
    xs = np.vstack([xs, xs, xs * flip, xs * flip])
    ys = np.vstack([ys, ys * flip, ys, ys * flip])
    zs = np.vstack([zs, zs * flip, zs * flip, zs])

    sx, sy, sz = _structured_products()
    xs = np.vstack([xs, sx])
    ys = np.vstack([ys, sy])
    zs = np.vstack([zs, sz])

    psi = np.einsum("ni,nj,nk->nijk", xs, ys, zs).reshape(-1, 8)
    diag = np.array([*x.a, *x.b[::-1]], dtype=float)
    u = np.array(x.c)
    vals = np.abs(psi) ** 2 @ diag
    cross = psi[:, :4] * np.conj(psi[:, [7, 6, 5, 4]])
    vals = vals + 2.0 * (cross @ u).real
    return float(vals.min())


def random_x_state(
    rng: np.random.Generator,
    positive: bool = False,
    complex_c: bool = True,
    scale: float = 1.0,
) -> XState:
    """Random X-shaped Hermitian operator; with positive=True the
    anti-diagonal is shrunk into the positivity region."""
    a = rng.uniform(0.0, scale, 4)
    b = rng.uniform(0.0, scale, 4)
    c = rng.normal(0.0, scale / 2.0, 4).astype(complex)
    if complex_c:
        c = c + 1j * rng.normal(0.0, scale / 2.0, 4)
    if positive:
        for i in range(4):
            cap = math.sqrt(a[i] * b[i])
            if abs(c[i]) > cap:
                c[i] *= cap * rng.uniform(0.0, 1.0) / abs(c[i])
    return XState(tuple(a), tuple(b), tuple(c))


def random_ghz_state(rng: np.random.Generator, positive: bool = True) -> GhzDiagonalState:
    """Random GHZ-diagonal state (not normalized to unit trace)."""
    a = rng.uniform(0.0, 1.0, 4)
    c = rng.normal(0.0, 0.5, 4)
    if positive:
        for i in range(4):
            if abs(c[i]) > a[i]:
                c[i] *= a[i] * rng.uniform(0.0, 1.0) / abs(c[i])
    return GhzDiagonalState(tuple(a), tuple(c))


@dataclass(frozen=True)
class ProductAtom:
    """One weighted pure product projector weight * |x y z><x y z|."""

    weight: float
    x: tuple[complex, complex]
    y: tuple[complex, complex]
    z: tuple[complex, complex]

    def vector(self) -> np.ndarray:
        return np.kron(np.kron(np.array(self.x), np.array(self.y)), np.array(self.z))


@dataclass(frozen=True)
class Decomposition:
    """Best-effort separable decomposition: sum of atoms approximates the
    target within residual (Frobenius).  success means residual <= tol;
    failure is only failure to find a decomposition, never evidence of
    entanglement."""

    atoms: tuple[ProductAtom, ...]
    residual: float
    tol: float
    success: bool

    def synthesize(self) -> np.ndarray:
        m = np.zeros((8, 8), dtype=complex)
        for atom in self.atoms:
            v = atom.vector()
            m += atom.weight * np.outer(v, v.conj())
        return m


def _atom_column(x: np.ndarray, y: np.ndarray, z: np.ndarray) -> np.ndarray:
    v = np.kron(np.kron(x, y), z)
    p = np.outer(v, v.conj())
    return np.concatenate([p.real.ravel(), p.imag.ravel()])


def _best_alignment(
    r6: np.ndarray, rng: np.random.Generator, restarts: int = 6, rounds: int = 60
) -> tuple[np.ndarray, np.ndarray, np.ndarray, float]:
    """Product vector maximizing <xyz|R|xyz> by alternating single-qubit
    eigenvector updates from several random starts."""
    best_val = -math.inf
    best = None
    for _ in range(restarts):
        vs = list(_unit_rows(rng, 3))
        val = -math.inf
        for _ in range(rounds):
            prev = val
            for q in range(3):
                if q == 0:
                    m = np.einsum(
                        "j,k,ijkabc,b,c->ia", vs[1].conj(), vs[2].conj(), r6, vs[1], vs[2]
                    )
                elif q == 1:
                    m = np.einsum(
                        "i,k,ijkabc,a,c->jb", vs[0].conj(), vs[2].conj(), r6, vs[0], vs[2]
                    )
                else:
                    m = np.einsum(
                        "i,j,ijkabc,a,b->kc", vs[0].conj(), vs[1].conj(), r6, vs[0], vs[1]
                    )
                evals, evecs = np.linalg.eigh(m)
                vs[q] = evecs[:, -1]
                val = float(evals[-1])
            if val - prev < 1e-13:
                break
        if val > best_val:
            best_val = val
            best = [v.copy() for v in vs]
    return best[0], best[1], best[2], best_val


def decompose(
    state: StateLike,
    max_atoms: int = 5000,
    tol: float = 1e-8,
    seed: int = 0,
) -> Decomposition:
    """Search for an explicit separable decomposition of a positive
    X-shaped state by a fully corrective conditional-gradient loop:
    repeatedly add the product projector best aligned with the residual
    (and its global bit-flip partner), then re-fit all weights by
    nonnegative least squares.

    Rejects non-positive inputs.  Gives up when the atom budget is
    exhausted or the residual stalls; a failed search says nothing about
    entanglement.
    """
    x = _as_x(state)
    if not is_positive(x):
        raise ValueError("decompose requires a positive state")
    target = to_dense(x)
    b_vec = np.concatenate([target.real.ravel(), target.imag.ravel()])
    rng = np.random.default_rng(seed)

    pool: list[tuple[np.ndarray, np.ndarray, np.ndarray]] = []
    columns: list[np.ndarray] = []

    def add(xv: np.ndarray, yv: np.ndarray, zv: np.ndarray) -> None:
        pool.append((xv, yv, zv))
        columns.append(_atom_column(xv, yv, zv))

    def refit() -> tuple[np.ndarray, float]:
        a = np.array(columns).T
        w, rnorm = nnls(a, b_vec)
        return w, float(rnorm)

    for i in (_KET0, _KET1):
        for j in (_KET0, _KET1):
            for k in (_KET0, _KET1):
                add(i, j, k)
    weights, residual = refit()
    if residual > tol:
        for basis in ((_PLUS, _MINUS), (_PLUS_I, _MINUS_I)):
            for n in range(8):
                add(basis[(n >> 2) & 1], basis[(n >> 1) & 1], basis[n & 1])
        weights, residual = refit()

    stall_best = residual
    stall_count = 0
    while residual > tol and len(pool) < max_atoms:
        r = target - _synthesize(pool, weights)
        xv, yv, zv, align = _best_alignment(r.reshape(2, 2, 2, 2, 2, 2), rng)
        if align <= 1e-15:
            break
        add(xv, yv, zv)
        add(xv[::-1], yv[::-1], zv[::-1])
        weights, residual = refit()
        if residual < stall_best - max(tol * 1e-2, 1e-14):
            stall_best = residual
            stall_count = 0
        else:
            stall_count += 1
            if stall_count >= 30:
                break

    atoms = tuple(
        ProductAtom(float(w), tuple(p[0]), tuple(p[1]), tuple(p[2]))
        for w, p in zip(weights, pool)
        if w > 0.0
    )
    return Decomposition(atoms=atoms, residual=residual, tol=tol, success=residual <= tol)


def _synthesize(
    pool: list[tuple[np.ndarray, np.ndarray, np.ndarray]], weights: np.ndarray
) -> np.ndarray:
    m = np.zeros((8, 8), dtype=complex)
    for w, (xv, yv, zv) in zip(weights, pool):
        if w == 0.0:
            continue
        v = np.kron(np.kron(xv, yv), zv)
        m += w * np.outer(v, v.conj())
    return m
