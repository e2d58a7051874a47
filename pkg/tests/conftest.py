import numpy as np
import pytest

from magcone.geometry import ConeConfig

REFERENCE = (
    ConeConfig(sigma=1.0, b0=1.0, alpha=0.25),
    ConeConfig(sigma=1.5, b0=1.0, alpha=0.4),
    ConeConfig(sigma=2.0, b0=0.5, alpha=0.3),
)


@pytest.fixture(params=REFERENCE, ids=lambda c: f"sigma{c.sigma}")
def cfg(request) -> ConeConfig:
    return request.param


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240901)
