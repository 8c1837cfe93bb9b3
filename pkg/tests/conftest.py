"""Shared fixtures: seeded RNG and factories for random geometric objects."""

import numpy as np
import pytest
from scipy.linalg import expm

from chtriangle.core import J, Isometry, herm_form, sign_of, VectorSign


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)


def random_su21(rng, scale: float = 0.6) -> Isometry:
    """exp of a random element of the isometry Lie algebra."""
    b = rng.normal(scale=scale, size=(3, 3)) + 1j * rng.normal(scale=scale, size=(3, 3))
    b = b - b.conj().T  # anti-Hermitian
    a = J @ b
    a = a - (np.trace(a) / 3.0) * np.eye(3)
    return Isometry(expm(a))


def random_negative(rng) -> np.ndarray:
    """Lift of a random interior point, radius <= 0.9."""
    v = rng.normal(size=4)
    v *= 0.9 * rng.uniform() ** 0.5 / np.linalg.norm(v)
    return np.array([complex(v[0], v[1]), complex(v[2], v[3]), 1.0])


def random_null(rng) -> np.ndarray:
    v = rng.normal(size=4)
    v /= np.linalg.norm(v)
    return np.array([complex(v[0], v[1]), complex(v[2], v[3]), 1.0])


def random_positive(rng) -> np.ndarray:
    while True:
        v = rng.normal(size=(3, 2))
        c = v[:, 0] + 1j * v[:, 1]
        if herm_form(c, c).real > 0.1:
            return c


def random_cvector(rng) -> np.ndarray:
    v = rng.normal(size=(3, 2))
    return v[:, 0] + 1j * v[:, 1]


def boost(a: float) -> Isometry:
    m = np.array(
        [
            [np.cosh(a), 0.0, np.sinh(a)],
            [0.0, 1.0, 0.0],
            [np.sinh(a), 0.0, np.cosh(a)],
        ],
        dtype=complex,
    )
    return Isometry(m)


def block_rotation(theta: float) -> Isometry:
    return Isometry(np.diag([np.exp(1j * theta), np.exp(-1j * theta), 1.0]))


# change of basis to the null frame where the form is antidiagonal
K_NULL = np.array(
    [
        [1 / np.sqrt(2), 0.0, 1 / np.sqrt(2)],
        [0.0, 1.0, 0.0],
        [1 / np.sqrt(2), 0.0, -1 / np.sqrt(2)],
    ],
    dtype=complex,
)


def heisenberg_parabolic(zeta: complex, v: float) -> Isometry:
    """Unipotent translation fixing one boundary point; defective unit eigenvalue."""
    h = np.array(
        [
            [1.0, -np.conj(zeta), (-abs(zeta) ** 2 + 1j * v) / 2.0],
            [0.0, 1.0, zeta],
            [0.0, 0.0, 1.0],
        ],
        dtype=complex,
    )
    return Isometry(K_NULL @ h @ K_NULL)  # K_NULL is an involution


def assert_form_preserving(m: Isometry, tol: float = 1e-10):
    scale = max(1.0, float(np.max(np.abs(m.m))) ** 2)
    res = np.max(np.abs(m.m.conj().T @ J @ m.m - J))
    assert res < tol * scale, f"form residual {res}"


def assert_sign(v, expect: VectorSign):
    assert sign_of(v) is expect
