"""
Tests for the Nystrom baseline and budget matching
"""
import numpy as np
import pytest
from pydantic import ValidationError

from matcol.core.exceptions import InvalidParameterError
from matcol.models.baseline import NystromConfig
from matcol.models.synthetic import SyntheticSpec
from matcol.services.baseline.nystrom import budget_audit, match_budget, nystrom_approx, truncated_pinv
from matcol.services.synthetic.generators import gen_lowrank

pytestmark = pytest.mark.unit


def test_config_rank_bound():
    """r <= min(c, rho)"""
    with pytest.raises(ValidationError):
        NystromConfig(num_columns=2, num_rows=5, target_rank=3)


def test_exact_rank_identity(lowrank_matrix):
    """A rank-3 matrix is reproduced from 6 columns and 9 rows"""
    config = NystromConfig(num_columns=6, num_rows=9, target_rank=3, seed=4)
    approx = nystrom_approx(lowrank_matrix, config)
    assert np.linalg.norm(approx - lowrank_matrix) <= 1e-8 * np.linalg.norm(lowrank_matrix)


def test_exact_rank_many_instances():
    """100 instances, m = n = 100, r <= 10"""
    rng = np.random.default_rng(5)
    for trial in range(100):
        r = int(rng.integers(1, 11))
        M = gen_lowrank(SyntheticSpec(m=100, n=100, r=r, seed=trial))
        config = NystromConfig(num_columns=2 * r, num_rows=2 * r, target_rank=r, seed=trial)
        approx = nystrom_approx(M, config)
        assert np.linalg.norm(approx - M) <= 1e-8 * np.linalg.norm(M)


def test_output_rank_bounded():
    """Rank of the approximation never exceeds r"""
    M = np.random.default_rng(1).standard_normal((30, 30))
    approx = nystrom_approx(M, NystromConfig(num_columns=10, num_rows=10, target_rank=4, seed=0))
    assert np.linalg.matrix_rank(approx, tol=1e-8 * np.linalg.norm(approx, 2)) <= 4


def test_zero_intersection_gives_zero(caplog):
    """W = 0 warns and returns a rank-0 approximation"""
    approx = nystrom_approx(np.zeros((6, 6)), NystromConfig(num_columns=2, num_rows=2, target_rank=1))
    assert np.array_equal(approx, np.zeros((6, 6)))
    assert "W is zero" in caplog.text


def test_truncated_pinv_warns_on_low_rank(caplog):
    """r above the numerical rank of W is truncated"""
    W = np.outer([1.0, 2.0], [3.0, 4.0, 5.0])
    pinv = truncated_pinv(W, 2)
    assert pinv.shape == (3, 2)
    assert np.allclose(W @ pinv @ W, W)
    assert "truncating to 1" in caplog.text


def test_sample_larger_than_matrix_rejected():
    with pytest.raises(InvalidParameterError):
        nystrom_approx(np.ones((4, 4)), NystromConfig(num_columns=5, num_rows=2, target_rank=1))


def test_match_budget_arithmetic():
    """d = s = r + r^2 gives alpha = 2, c = 2r, rho = 2r^2"""
    r = 3
    config = match_budget(r + r * r, r + r * r, n=100, m=100, r=r, seed=7)
    assert (config.num_columns, config.num_rows, config.target_rank, config.seed) == (6, 18, 3, 7)


def test_match_budget_clamps_rows(caplog):
    """rho above m is clamped with a warning"""
    config = match_budget(40, 40, n=100, m=50, r=3)
    assert config.num_rows == 50
    assert "clamped to m=50" in caplog.text


def test_budget_audit_counts_entries():
    """True entry counts of both methods"""
    config = match_budget(12, 12, n=100, m=100, r=3)
    audit = budget_audit(12, 12, n=100, m=100, r=3, config=config)
    assert audit.alpha == pytest.approx(2.0)
    assert audit.completion_entries == 12 * 100 + 88 * 12
    assert audit.nystrom_entries == 6 * 100 + 18 * 100 - 6 * 18
    assert not audit.clamped
