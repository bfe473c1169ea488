"""
Tests for synthetic instances and observation models
"""
import numpy as np
import pytest
from pydantic import ValidationError

from matcol.core.exceptions import DimensionMismatchError, InvalidParameterError
from matcol.models.completion import CompletionConfig
from matcol.models.observation import ObservationMode, ObservationSet
from matcol.models.synthetic import SyntheticSpec
from matcol.services.completion.column_space import numerical_rank
from matcol.services.completion.low_rank import rank_r_residual
from matcol.services.synthetic.generators import gen_lowrank, gen_noisy, generate
from matcol.services.synthetic.observations import gen_observation

pytestmark = pytest.mark.unit


# ============================================================================
# GENERATORS
# ============================================================================

def test_spec_validation():
    """r <= min(m, n), sigma >= 0"""
    with pytest.raises(ValidationError):
        SyntheticSpec(m=3, n=5, r=4)
    with pytest.raises(ValidationError):
        SyntheticSpec(m=3, n=3, r=1, sigma=-1.0)


def test_full_rank_product():
    """r = min(m, n) is full rank"""
    M = gen_lowrank(SyntheticSpec(m=12, n=8, r=8, seed=1))
    assert numerical_rank(np.linalg.svd(M, compute_uv=False)) == 8


def test_rank_one_minors_vanish():
    """Every 2x2 minor of a rank-1 3x3 matrix is zero"""
    M = gen_lowrank(SyntheticSpec(m=3, n=3, r=1, seed=2))
    for i in range(2):
        for j in range(2):
            minor = M[i, j] * M[i + 1, j + 1] - M[i, j + 1] * M[i + 1, j]
            assert abs(minor) <= 1e-10


def test_exact_rank():
    """m = n = 200, r = 10: singular values beyond the 10th are below 1e-9 sigma_1"""
    for seed in range(5):
        sigma = np.linalg.svd(gen_lowrank(SyntheticSpec(m=200, n=200, r=10, seed=seed)), compute_uv=False)
        assert np.all(sigma[10:] <= 1e-9 * sigma[0])


def test_reproducible():
    """Same spec, bit-identical matrix"""
    spec = SyntheticSpec(m=20, n=15, r=3, sigma=0.5, seed=9)
    first, second = gen_noisy(spec), gen_noisy(spec)
    assert np.array_equal(first[0], second[0])
    assert np.array_equal(first[1], second[1])


def test_noisy_shares_clean_part_with_exact_instance():
    """The clean part of a noisy instance is the exact instance for the same seed"""
    clean = gen_lowrank(SyntheticSpec(m=10, n=10, r=2, seed=4))
    _, C = gen_noisy(SyntheticSpec(m=10, n=10, r=2, sigma=0.3, seed=4))
    assert np.array_equal(clean, C)


def test_sigma_dispatch():
    """gen_lowrank refuses noise, gen_noisy requires it, generate dispatches"""
    with pytest.raises(InvalidParameterError):
        gen_lowrank(SyntheticSpec(m=4, n=4, r=1, sigma=0.1))
    with pytest.raises(InvalidParameterError):
        gen_noisy(SyntheticSpec(m=4, n=4, r=1))
    M, C = generate(SyntheticSpec(m=4, n=4, r=1))
    assert M is C


def test_vanishing_noise():
    """sigma = 1e-12 barely perturbs C"""
    M, C = gen_noisy(SyntheticSpec(m=30, n=20, r=2, sigma=1e-12, seed=0))
    assert np.linalg.norm(M - C) <= 1e-9 * np.sqrt(30 * 20)


def test_noise_energy():
    """||R||^2 / (mn sigma^2) within [0.97, 1.03]"""
    for seed in range(10):
        M, C = gen_noisy(SyntheticSpec(m=500, n=500, r=5, sigma=1.0, seed=seed))
        ratio = np.sum((M - C) ** 2) / (500 * 500)
        assert 0.97 <= ratio <= 1.03


@pytest.mark.slow
def test_residual_energy_matches_noise():
    """||M - M_r||^2 / (sigma^2 (m - r) n) within [0.9, 1.1]"""
    M, _ = gen_noisy(SyntheticSpec(m=1000, n=1000, r=20, sigma=0.1, seed=0))
    ratio = rank_r_residual(M, 20) / (0.01 * (1000 - 20) * 1000)
    assert 0.9 <= ratio <= 1.1


# ============================================================================
# OBSERVATION MODELS
# ============================================================================

def test_aligned_mode_shares_rows(lowrank_matrix):
    """Every partial column reports the same row multiset"""
    config = CompletionConfig.uniform(40, target_rank=3, d=5, s=7, rng_seed=3)
    obs = gen_observation(lowrank_matrix, config, ObservationMode.ALIGNED)
    assert obs.shared_rows is not None and obs.shared_rows.shape == (7,)
    for column in obs.partial_columns:
        assert column.rows is None
        assert np.array_equal(obs.rows_for(column), obs.shared_rows)
        assert np.array_equal(column.values, lowrank_matrix[obs.shared_rows, column.index])


def test_independent_mode_values_match_source(lowrank_matrix):
    """Observed values agree with the matrix at the indexed positions"""
    config = CompletionConfig.uniform(40, target_rank=3, d=5, s=7, rng_seed=3)
    obs = gen_observation(lowrank_matrix, config, "independent")
    assert obs.shared_rows is None
    for column in obs.partial_columns:
        assert np.array_equal(column.values, lowrank_matrix[column.rows, column.index])
    for column in obs.full_columns:
        assert np.array_equal(column.values, lowrank_matrix[:, column.index])


def test_drawn_columns_never_partial(lowrank_matrix):
    """Full and partial columns partition range(n)"""
    config = CompletionConfig.uniform(40, target_rank=3, d=30, s=4, rng_seed=12)
    obs = gen_observation(lowrank_matrix, config)
    assert not set(obs.full_indices) & set(obs.partial_indices)
    assert sorted(obs.full_indices + obs.partial_indices) == list(range(40))
    assert obs.draws.shape == (30,)
    assert set(obs.draws.tolist()) == set(obs.full_indices)


def test_observation_reproducible(lowrank_matrix):
    """Same config and seed, identical observation set"""
    config = CompletionConfig.uniform(40, target_rank=3, d=6, s=9, rng_seed=21)
    first = gen_observation(lowrank_matrix, config)
    second = gen_observation(lowrank_matrix, config)
    assert first.model_dump_json() == second.model_dump_json()


def test_row_frequencies_uniform():
    """Pooled rows over ~5000 columns with s = 10, m = 100 are uniform within 20%"""
    M = np.ones((100, 5000))
    config = CompletionConfig.uniform(5000, target_rank=1, d=1, s=10, rng_seed=77)
    obs = gen_observation(M, config)
    pooled = np.concatenate([c.rows for c in obs.partial_columns])
    counts = np.bincount(pooled, minlength=100)
    expected = pooled.size / 100
    assert np.all(np.abs(counts - expected) <= 0.2 * expected)


def test_oversampling_warns(lowrank_matrix, caplog):
    """s > m is allowed with a warning"""
    config = CompletionConfig.uniform(40, target_rank=3, d=4, s=70, rng_seed=0)
    obs = gen_observation(lowrank_matrix, config)
    assert obs.s == 70
    assert "exceeds m=60" in caplog.text


def test_distribution_length_must_match(lowrank_matrix):
    config = CompletionConfig.uniform(41, target_rank=3, d=4, s=5)
    with pytest.raises(DimensionMismatchError):
        gen_observation(lowrank_matrix, config)


def test_observation_set_rejects_overlap(lowrank_matrix):
    """A column cannot be both full and partial"""
    config = CompletionConfig.uniform(40, target_rank=3, d=4, s=5, rng_seed=1)
    data = gen_observation(lowrank_matrix, config).model_dump()
    data["partial_columns"][0]["index"] = data["full_columns"][0]["index"]
    with pytest.raises(ValidationError):
        ObservationSet.model_validate(data)
