import numpy as np
import pytest

from entbound.states import DensityMatrix, PureState


def random_pure(rng: np.random.Generator, n: int) -> PureState:
    z = rng.standard_normal(2**n) + 1j * rng.standard_normal(2**n)
    return PureState(n, z / np.linalg.norm(z))


def random_density(rng: np.random.Generator, n: int, rank: int | None = None) -> DensityMatrix:
    d = 2**n
    rank = rank or d
    g = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
    m = g @ g.conj().T
    return DensityMatrix(n, m / np.trace(m).real)


@pytest.fixture
def rng():
    return np.random.default_rng(20240901)
