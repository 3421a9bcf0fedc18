import numpy as np
import pytest

import sraar as S


@pytest.fixture(scope="session")
def phantom64():
    return S.shepp_logan(64)


@pytest.fixture(scope="session")
def phantom128():
    return S.shepp_logan(128)


@pytest.fixture()
def rng():
    return np.random.default_rng(1234)


def random_complex(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
