import json

import numpy as np
import pytest

from ghzsep.states import GhzDiagonalState, XState


@pytest.fixture
def rng():
    return np.random.default_rng(20250814)


def random_c(rng, scale=1.0):
    return tuple(scale * rng.uniform(-1.0, 1.0, size=4))


def random_positive_ghz(rng):
    """Positive GHZ-diagonal state with uniformly random weights."""
    a = rng.uniform(0.05, 1.0, size=4)
    c = np.array([rng.uniform(-1.0, 1.0) * a[i] for i in range(4)])
    return GhzDiagonalState(a=tuple(a), c=tuple(c))


def random_x(rng, complex_c=True, positive=False):
    a = rng.uniform(0.0, 1.0, size=4)
    b = rng.uniform(0.0, 1.0, size=4)
    if positive:
        r = np.sqrt(a * b) * rng.uniform(0.0, 1.0, size=4)
    else:
        r = rng.uniform(0.0, 1.0, size=4)
    phase = np.exp(2j * np.pi * rng.uniform(size=4)) if complex_c else np.sign(rng.uniform(-1, 1, size=4))
    c = r * phase
    return XState(a=tuple(a), b=tuple(b), c=tuple(c))


def write_state_file(path, payload):
    path.write_text(json.dumps(payload))
    return str(path)


@pytest.fixture
def aniso_state():
    """PPT-entangled benchmark point alpha=2.5."""
    al = 2.5
    return GhzDiagonalState(a=(4 + al, al, al, al), c=(2.0, 2.0, -2.0, 2.0))


@pytest.fixture
def uniform_file(tmp_path):
    return write_state_file(tmp_path / "uniform.json", {"ghz_weights": [0.125] * 8})


@pytest.fixture
def aniso_file(tmp_path):
    return write_state_file(
        tmp_path / "aniso.json",
        {"ghz_diagonal": {"a": [6.5, 2.5, 2.5, 2.5], "c": [2.0, 2.0, -2.0, 2.0]}},
    )
