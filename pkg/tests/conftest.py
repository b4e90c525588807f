import numpy as np
import pytest

from ghz_ising.model import even_parity_uniform_state, first_excited_state_4, odd_parity_uniform_state
from ghz_ising.pauli import PauliString


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def even3():
    return even_parity_uniform_state(3)


@pytest.fixture
def odd3():
    return odd_parity_uniform_state(3)


@pytest.fixture
def excited4():
    return first_excited_state_4()


def random_pauli(rng, n, hermitian=False):
    """String aleatória; com hermitian=True o coeficiente é ±1."""
    x = int(rng.integers(0, 1 << n))
    z = int(rng.integers(0, 1 << n))
    phase = int(rng.integers(0, 4))
    if hermitian:
        y = (x & z).bit_count()
        phase = y + 2 * int(rng.integers(0, 2))
    return PauliString(n, x, z, phase)


def random_vector(rng, n):
    v = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return v / np.linalg.norm(v)
