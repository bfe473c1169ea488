"""
Low-Rank Utilities - truncated SVD and error measures

best_rank_r is the Eckart-Young comparator M_r of the additive error bound.
"""
import numpy as np
import scipy.linalg

from matcol.core.exceptions import DegenerateInputError, DimensionMismatchError, InvalidParameterError
from matcol.models.arrays import DenseMatrix, as_dense_matrix


def _check_rank(M: np.ndarray, r: int) -> None:
    if not 1 <= r <= min(M.shape):
        raise InvalidParameterError("r", r, f"rank must lie in [1, {min(M.shape)}]")


def best_rank_r(M: DenseMatrix, r: int) -> DenseMatrix:
    """Best rank-r approximation of M in Frobenius norm"""
    M = as_dense_matrix(M, "M")
    _check_rank(M, r)
    U, sigma, Vt = scipy.linalg.svd(M, full_matrices=False)
    return (U[:, :r] * sigma[:r]) @ Vt[:r]


def rank_r_residual(M: DenseMatrix, r: int) -> float:
    """||M - M_r||_F^2 = sum of sigma_k^2 for k > r"""
    M = as_dense_matrix(M, "M")
    _check_rank(M, r)
    sigma = scipy.linalg.svdvals(M)
    return float(np.sum(sigma[r:] ** 2))


def relative_frobenius_error(M: DenseMatrix, M_hat: DenseMatrix) -> float:
    """||M - M_hat||_F / ||M||_F"""
    if M.shape != M_hat.shape:
        raise DimensionMismatchError("recovered matrix entries", M.size, M_hat.size)
    norm = np.linalg.norm(M)
    if norm == 0.0:
        raise DegenerateInputError("ground truth", "relative error of a zero matrix is undefined")
    return float(np.linalg.norm(M - M_hat) / norm)
