import numpy as np
import pytest

from conjcrypt.scheme import make_rng


@pytest.fixture
def rng():
    return make_rng(1234, "tests")


def random_density(gen: np.random.Generator, dim: int, rank: int | None = None) -> np.ndarray:
    rank = dim if rank is None else rank
    g = gen.normal(size=(dim, rank)) + 1j * gen.normal(size=(dim, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real
