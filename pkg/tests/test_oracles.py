"""The brute-force side: oracles must be independently trustworthy."""

import numpy as np
import pytest

from ghzsep.decide import decide, pq_state
from ghzsep.oracles import (
    Decomposition,
    angle_form_grid_max,
    decompose,
    dense_partial_transpose,
    eigen_min,
    eigen_ppt,
    overlap_ratio_search,
    product_probe,
    random_ghz_state,
    random_x_state,
)
from ghzsep.states import GhzDiagonalState, XState, to_dense, x_part
from ghzsep.witness import make_witness, max_angle_form

from conftest import random_x


def test_angle_form_grid_anchor():
    assert angle_form_grid_max((1, 1, 1, 1), grid=32) == pytest.approx(4.0, abs=1e-9)
    assert angle_form_grid_max((-1, 3, 3, 3), grid=32) == pytest.approx(8.0, abs=1e-8)


def test_angle_form_grid_vs_closed(rng):
    for _ in range(15):
        z = rng.uniform(-1, 1, size=4)
        got = angle_form_grid_max(z, grid=48, polish=2)
        assert got == pytest.approx(max_angle_form(z), abs=1e-6)


def test_eigen_min_is_smallest_eigenvalue(rng):
    m = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
    m = m + m.conj().T
    assert eigen_min(m) == pytest.approx(np.linalg.eigvalsh(m)[0], abs=1e-12)


def test_dense_partial_transpose_blocks():
    m = np.arange(64, dtype=float).reshape(8, 8)
    for q in range(3):
        pt = dense_partial_transpose(m, q)
        assert np.allclose(dense_partial_transpose(pt, q), m)
        assert pt.trace() == m.trace()


def test_eigen_ppt_flags_pure_ghz():
    ghz = GhzDiagonalState(a=(0.5, 0, 0, 0), c=(0.5, 0, 0, 0))
    assert not eigen_ppt(ghz)
    assert eigen_ppt(GhzDiagonalState(a=(0.125,) * 4, c=(0,) * 4))


def test_overlap_ratio_search_near_f_max(rng):
    for _ in range(8):
        st = GhzDiagonalState(a=(1, 1, 1, 1), c=tuple(rng.uniform(-1, 1, size=4)))
        f = decide(st, include_witness=False).f_max
        got = overlap_ratio_search(st.c, starts=16, seed=3)
        assert got <= f + 1e-6
        assert got >= f - 1e-4


def test_product_probe_accepts_witness():
    w = make_witness((1, 1, 1, 1), (1, 1, 1, 1), (1, 1, 1, -1))
    assert product_probe(w, samples=20000, seed=1) >= -1e-10


def test_product_probe_rejects_negative_diagonal():
    bad = XState(a=(-1, 1, 1, 1), b=(1, 1, 1, 1), c=(0, 0, 0, 0))
    assert product_probe(bad, samples=20000, seed=1) < -0.5


def test_random_state_shapes(rng):
    st = random_ghz_state(rng)
    assert isinstance(st, GhzDiagonalState)
    assert decide(st, include_witness=False).positive
    x = random_x_state(rng, positive=True)
    assert eigen_min(to_dense(x)) >= -1e-12


def test_decompose_maximally_mixed():
    d = decompose(GhzDiagonalState(a=(0.125,) * 4, c=(0,) * 4), max_atoms=64)
    assert d.success
    assert d.residual <= 1e-10
    assert len(d.atoms) <= 8
    assert np.allclose(d.synthesize(), np.eye(8) / 8, atol=1e-9)


def test_decompose_separable_point():
    st = pq_state(0.3, -0.15)
    assert decide(st, include_witness=False).separable
    d = decompose(st, max_atoms=2000, tol=1e-8)
    assert d.success
    assert d.residual <= 1e-8
    assert np.allclose(d.synthesize(), to_dense(st), atol=1e-7)
    assert all(atom.weight >= 0 for atom in d.atoms)


def test_decompose_fails_honestly_on_entangled(aniso_state):
    # bound entangled: no decomposition exists, the search must give up
    # without claiming success
    d = decompose(aniso_state, max_atoms=120, tol=1e-8, seed=2)
    assert isinstance(d, Decomposition)
    assert not d.success
    assert d.residual > 1e-8


def test_decompose_rejects_nonpositive():
    with pytest.raises(ValueError):
        decompose(GhzDiagonalState(a=(1, 1, 1, 1), c=(2, 0, 0, 0)))


def test_x_part_of_random_product_states(rng):
    # X-projection of separable stays separable: spot check via decide
    for _ in range(10):
        v = [rng.normal(size=2) + 1j * rng.normal(size=2) for _ in range(3)]
        v = [u / np.linalg.norm(u) for u in v]
        vec = np.kron(np.kron(v[0], v[1]), v[2])
        proj = np.outer(vec, vec.conj())
        x = x_part(proj)
        assert eigen_ppt(x)
