"""
Column Space - top left singular vectors of the scaled column sample

r_hat = min(r, numerical rank of A), where the numerical rank counts
singular values sigma_k > rank_tolerance * sigma_1.
"""
import logging

import numpy as np
import scipy.linalg

from matcol.core.exceptions import DegenerateInputError, InvalidParameterError
from matcol.models.arrays import DenseMatrix, as_dense_matrix
from matcol.models.completion import ColumnSpaceBasis

logger = logging.getLogger(__name__)

DEFAULT_RANK_TOLERANCE = 1e-9


def numerical_rank(singular_values: np.ndarray, rank_tolerance: float = DEFAULT_RANK_TOLERANCE) -> int:
    """Count singular values above rank_tolerance * sigma_1"""
    if singular_values.size == 0 or singular_values[0] <= 0.0:
        return 0
    return int(np.count_nonzero(singular_values > rank_tolerance * singular_values[0]))


def column_space(
    A: DenseMatrix,
    r: int,
    rank_tolerance: float = DEFAULT_RANK_TOLERANCE,
) -> ColumnSpaceBasis:
    """
    Orthonormal basis for the dominant column space of A

    Args:
        A: m x d scaled column sample
        r: target rank
        rank_tolerance: relative singular value cutoff

    Returns:
        ColumnSpaceBasis with r_hat = min(r, rk(A)) columns

    Raises:
        DegenerateInputError: A is identically zero
    """
    A = as_dense_matrix(A, "A")
    if r < 1:
        raise InvalidParameterError("r", r, "target rank must be positive")

    U, sigma, _ = scipy.linalg.svd(A, full_matrices=False, lapack_driver="gesdd")
    rank = numerical_rank(sigma, rank_tolerance)
    if rank == 0:
        raise DegenerateInputError("column sample", "A is identically zero, there is no column space")

    r_hat = min(r, rank)
    if r_hat < r:
        logger.info(f"Effective rank capped at {r_hat} (target {r}, numerical rank of A {rank})")
    return ColumnSpaceBasis(
        basis=np.ascontiguousarray(U[:, :r_hat]),
        effective_rank=r_hat,
        singular_values=sigma,
    )
