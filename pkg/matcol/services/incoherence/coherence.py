"""
Coherence Measures

- mu(r):     max of (m/r) max_i ||U_(i)||^2 and (n/r) max_j ||V_(j)||^2 over the
             top-r singular vectors of M
- mu_hat:    (m/r_hat) max_i ||U_hat_(i)||^2 for the estimated basis
- mu(M):     n max_j ||m_j||^2 / ||M||_F^2
- mu(x):     m ||x||_inf^2 / ||x||_2^2

Under tied singular values the singular-vector basis is not unique and mu(r)
is computed from whichever basis the SVD returns.
"""
import logging
from typing import Optional

import numpy as np
import scipy.linalg

from matcol.core.exceptions import DegenerateInputError, InvalidParameterError
from matcol.models.arrays import DenseMatrix, as_dense_matrix, as_vector
from matcol.models.coherence import CoherenceProfile
from matcol.models.completion import ColumnSpaceBasis
from matcol.services.completion.column_space import DEFAULT_RANK_TOLERANCE, numerical_rank

logger = logging.getLogger(__name__)


def row_coherence(basis: np.ndarray) -> float:
    """(rows / cols) * max squared row norm of an orthonormal basis"""
    rows, cols = basis.shape
    return float(rows / cols * np.max(np.sum(basis * basis, axis=1)))


def _components(U: np.ndarray, sigma: np.ndarray, Vt: np.ndarray, r: int) -> tuple[float, float]:
    rank = numerical_rank(sigma, DEFAULT_RANK_TOLERANCE)
    if r > rank:
        logger.warning(f"⚠️ r={r} exceeds the numerical rank {rank}; using the returned singular vectors anyway")
    return row_coherence(U[:, :r]), row_coherence(Vt[:r].T)


def singular_vector_coherence(M: DenseMatrix, r: int) -> tuple[float, float]:
    """
    Left and right components of mu(r)

    Returns:
        (left, right) = ((m/r) max ||U_(i)||^2, (n/r) max ||V_(j)||^2)
    """
    M = as_dense_matrix(M, "M")
    if not 1 <= r <= min(M.shape):
        raise InvalidParameterError("r", r, f"rank must lie in [1, {min(M.shape)}]")

    U, sigma, Vt = scipy.linalg.svd(M, full_matrices=False)
    return _components(U, sigma, Vt, r)


def mu_r(M: DenseMatrix, r: int) -> float:
    """Incoherence mu(r) of the top-r singular vectors"""
    left, right = singular_vector_coherence(M, r)
    return max(left, right)


def mu_hat(basis: ColumnSpaceBasis) -> float:
    """Incoherence of the estimated column-space basis"""
    return row_coherence(basis.basis)


def mu_matrix(M: DenseMatrix) -> float:
    """Column-norm incoherence mu(M)"""
    M = as_dense_matrix(M, "M")
    column_norms = np.sum(M * M, axis=0)
    total = float(np.sum(column_norms))
    if total == 0.0:
        raise DegenerateInputError("matrix", "mu(M) is undefined for the zero matrix")
    return float(M.shape[1] * np.max(column_norms) / total)


def mu_vector(x: np.ndarray) -> float:
    """Vector coherence mu(x)"""
    x = as_vector(x, "x")
    energy = float(np.dot(x, x))
    if energy == 0.0:
        raise DegenerateInputError("vector", "mu(x) is undefined for the zero vector")
    peak = float(np.max(np.abs(x)))
    return float(x.size * peak * peak / energy)


def coherence_profile(
    M: DenseMatrix,
    r: int,
    basis: Optional[ColumnSpaceBasis] = None,
    per_vector: bool = False,
) -> CoherenceProfile:
    """
    All coherence quantities of a matrix

    Args:
        M: the matrix
        r: target rank for mu(r)
        basis: estimated basis for mu_hat; the top-r left singular vectors of M when omitted
        per_vector: also compute mu(x) for every nonzero column
    """
    M = as_dense_matrix(M, "M")
    if not 1 <= r <= min(M.shape):
        raise InvalidParameterError("r", r, f"rank must lie in [1, {min(M.shape)}]")
    U, sigma, Vt = scipy.linalg.svd(M, full_matrices=False)
    left, right = _components(U, sigma, Vt, r)
    if basis is None:
        r_hat = max(1, min(r, numerical_rank(sigma)))
        hat = row_coherence(U[:, :r_hat])
    else:
        hat = mu_hat(basis)

    vectors = None
    if per_vector:
        vectors = {
            j: mu_vector(M[:, j])
            for j in range(M.shape[1])
            if np.any(M[:, j] != 0.0)
        }

    return CoherenceProfile(
        mu_r=max(left, right),
        mu_r_left=left,
        mu_r_right=right,
        mu_hat=hat,
        mu_M=mu_matrix(M),
        per_vector=vectors,
    )
