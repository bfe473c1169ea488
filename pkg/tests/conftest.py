"""
Pytest configuration and fixtures for matcol tests
"""
from pathlib import Path

import numpy as np
import pytest

from matcol.core.config import Settings
from matcol.models.synthetic import SyntheticSpec
from matcol.services.synthetic.generators import gen_lowrank


@pytest.fixture
def test_settings(tmp_path: Path) -> Settings:
    """
    Provide test settings with safe defaults

    Results go to a temporary directory and trials run in-process
    """
    return Settings(
        logging={"level": "DEBUG"},
        harness={"jobs": 1, "trials": 3},
        storage={"results_dir": str(tmp_path / "results")},
    )


@pytest.fixture
def override_get_settings(test_settings: Settings):
    """
    Override the get_settings singleton for testing

    This allows tests to use test-specific settings without affecting
    the global settings singleton
    """
    from matcol.core import config
    original_settings = config._settings
    config._settings = test_settings
    yield test_settings
    config._settings = original_settings


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator for test inputs"""
    return np.random.default_rng(12345)


@pytest.fixture
def lowrank_matrix() -> np.ndarray:
    """60 x 40 exact rank-3 Gaussian-factor matrix"""
    return gen_lowrank(SyntheticSpec(m=60, n=40, r=3, seed=7))


@pytest.fixture
def orthonormal_basis(rng: np.random.Generator) -> np.ndarray:
    """50 x 4 matrix with orthonormal columns"""
    Q, _ = np.linalg.qr(rng.standard_normal((50, 4)))
    return Q
