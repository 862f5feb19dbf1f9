"""State containers against dense linear algebra done from scratch."""

import numpy as np
import pytest

from ghzsep.states import (
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

from conftest import random_positive_ghz, random_x

I2 = np.eye(2)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]])
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = {"i": I2, "x": SX, "y": SY, "z": SZ}


def word(w):
    return np.kron(np.kron(PAULI[w[0]], PAULI[w[1]]), PAULI[w[2]])


def test_dense_layout():
    x = XState(a=(1, 2, 3, 4), b=(8, 7, 6, 5), c=(1j, 2, -3, 4 - 1j))
    m = to_dense(x)
    assert m.shape == (8, 8)
    assert list(np.diag(m).real) == [1, 2, 3, 4, 5, 6, 7, 8]
    for i, ci in enumerate(x.c):
        assert m[i, 7 - i] == ci
        assert m[7 - i, i] == np.conjugate(ci)
    # everything off the two diagonals is zero
    mask = np.ones((8, 8), dtype=bool)
    np.fill_diagonal(mask, False)
    np.fill_diagonal(np.fliplr(mask), False)
    assert np.all(m[mask] == 0)
    assert np.allclose(m, m.conj().T)


def test_x_part_roundtrip(rng):
    for _ in range(50):
        x = random_x(rng)
        back = x_part(to_dense(x))
        assert np.allclose(to_dense(back), to_dense(x), atol=1e-14)


def test_x_part_projects_noise(rng):
    x = random_x(rng)
    m = to_dense(x)
    noise = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
    noise = (noise + noise.conj().T) / 2
    mask = np.ones((8, 8), dtype=bool)
    np.fill_diagonal(mask, False)
    np.fill_diagonal(np.fliplr(mask), False)
    noisy = m + np.where(mask, noise, 0.0)
    assert np.allclose(to_dense(x_part(noisy)), m, atol=1e-12)


def test_ghz_basis_orthonormal():
    basis = ghz_basis()
    g = np.array(basis)
    assert np.allclose(g @ g.conj().T, np.eye(8), atol=1e-15)


def test_weights_to_state_and_back(rng):
    for _ in range(50):
        p = rng.uniform(0.0, 1.0, size=8)
        st = from_ghz_weights(GhzWeights(tuple(p)))
        # mixing the GHZ projectors with those weights gives the same matrix
        basis = ghz_basis()
        dense = sum(p[k] * np.outer(basis[k], np.conjugate(basis[k])) for k in range(8))
        assert np.allclose(to_dense(st), dense, atol=1e-14)
        # and the weights are recoverable from the diagonal/anti-diagonal
        a = np.array(st.a)
        c = np.array(st.c)
        back = np.concatenate([a + c, (a - c)[::-1]])
        assert np.allclose(back, p, atol=1e-14)


def test_weights_reject_negative():
    with pytest.raises(ValueError):
        GhzWeights((1, 1, 1, 1, 1, 1, 1, -0.1))


def test_pauli_coefficients_are_traces(rng):
    words = ("zzi", "ziz", "izz", "xxx", "yyx", "yxy", "xyy")
    for _ in range(40):
        st = random_positive_ghz(rng)
        lam = pauli_coefficients(st)
        dense = to_dense(st)
        for w in words:
            assert abs(getattr(lam, w) - np.trace(dense @ word(w)).real) < 1e-12


def test_pauli_inversion(rng):
    for _ in range(40):
        st = random_positive_ghz(rng)
        lam = pauli_coefficients(st)
        back = from_pauli_coefficients(lam, trace=st.trace)
        assert np.allclose(back.a, st.a, atol=1e-13)
        assert np.allclose(back.c, st.c, atol=1e-13)


def test_pauli_tuple_order():
    lam = PauliCoefficients(zzi=1, ziz=2, izz=3, xxx=4, yyx=5, yxy=6, xyy=7)
    assert lam.as_tuple() == (1, 2, 3, 4, 5, 6, 7)


def test_positivity_matches_eigenvalues(rng):
    agree = 0
    for _ in range(300):
        x = random_x(rng, positive=bool(rng.integers(2)))
        closed = is_positive(x)
        ev = np.linalg.eigvalsh(to_dense(x)).min()
        # skip razor-thin boundary cases where float eigensolvers wobble
        if abs(ev) < 1e-12:
            continue
        assert closed == (ev > 0), (x, ev)
        agree += 1
    assert agree > 250


def test_partial_transpose_matches_dense(rng):
    axes = {"A": 0, "B": 1, "C": 2}
    for _ in range(30):
        x = random_x(rng)
        dense = to_dense(x).reshape(2, 2, 2, 2, 2, 2)
        for name, q in axes.items():
            pt = to_dense(partial_transpose(x, name))
            swapped = np.swapaxes(dense, q, q + 3).reshape(8, 8)
            assert np.allclose(pt, swapped, atol=1e-14), name


def test_partial_transpose_involution(rng):
    x = random_x(rng)
    for s in "ABC":
        twice = partial_transpose(partial_transpose(x, s), s)
        assert np.allclose(to_dense(twice), to_dense(x), atol=1e-15)


def test_is_ppt_matches_eigen(rng):
    from ghzsep.oracles import eigen_ppt

    for _ in range(200):
        x = random_x(rng, positive=True)
        assert is_ppt(x) == eigen_ppt(x)


def test_symmetrize_fixes_ghz_diagonal(rng):
    st = random_positive_ghz(rng)
    x = XState(a=st.a, b=st.a, c=st.c)
    s = symmetrize(x)
    assert np.allclose(to_dense(s), to_dense(x), atol=1e-15)


def test_symmetrize_idempotent_and_flip_average(rng):
    flip = np.fliplr(np.eye(8))
    for _ in range(20):
        x = random_x(rng)
        s = symmetrize(x)
        m = to_dense(x)
        avg = (m + flip @ m @ flip) / 2
        assert np.allclose(to_dense(s), avg, atol=1e-14)
        assert np.allclose(to_dense(symmetrize(s)), to_dense(s), atol=1e-14)


def test_bad_lengths_rejected():
    with pytest.raises(ValueError):
        XState(a=(1, 2, 3), b=(1, 2, 3, 4), c=(0, 0, 0, 0))
    with pytest.raises(ValueError):
        GhzDiagonalState(a=(1, 2, 3, 4, 5), c=(0, 0, 0, 0))
