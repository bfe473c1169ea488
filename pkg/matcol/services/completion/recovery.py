"""
Column Recovery - closed-form least squares against the column-space basis

For a partial column with observed row multiset O and values m_O:

    z* = (U_O^T U_O + lambda I)^{-1} U_O^T m_O,    m_hat = U z*

U_O stacks the basis rows indexed by O with multiplicity. The Gram matrix
and right-hand side are accumulated from row counts, which is the same
sum over the multiset without materializing U_O.
"""
import logging
from typing import Optional

import numpy as np
import scipy.linalg

from matcol.core.exceptions import DimensionMismatchError, InvalidParameterError, SingularSystemError
from matcol.models.completion import ColumnRecovery, ColumnSpaceBasis

logger = logging.getLogger(__name__)

DEFAULT_SINGULAR_TOLERANCE = 1e-12


def observed_normal_equations(
    basis: np.ndarray,
    obs_rows: np.ndarray,
    obs_values: np.ndarray,
) -> tuple[np.ndarray, np.ndarray]:
    """
    Gram matrix U_O^T U_O and right-hand side U_O^T m_O

    Args:
        basis: m x r_hat orthonormal basis
        obs_rows: observed row indices (multiset)
        obs_values: observed values aligned with obs_rows
    """
    m = basis.shape[0]
    counts = np.bincount(obs_rows, minlength=m).astype(np.float64)
    weighted = np.bincount(obs_rows, weights=obs_values, minlength=m)
    gram = (basis.T * counts) @ basis
    rhs = basis.T @ weighted
    return gram, rhs


def recover_column(
    basis: ColumnSpaceBasis,
    obs_rows: np.ndarray,
    obs_values: np.ndarray,
    regularization: float = 0.0,
    column_index: Optional[int] = None,
    singular_tolerance: float = DEFAULT_SINGULAR_TOLERANCE,
) -> ColumnRecovery:
    """
    Recover one column from its observed entries

    Args:
        basis: column-space basis (read-only, shared across columns)
        obs_rows: observed row multiset O_i
        obs_values: m_{i,O_i}
        regularization: Tikhonov term lambda >= 0
        column_index: used in error messages only
        singular_tolerance: lambda_min <= tol * lambda_max counts as singular

    Returns:
        ColumnRecovery with the recovered column and lambda_min(U_O^T U_O)

    Raises:
        SingularSystemError: Gram matrix singular and regularization == 0
    """
    obs_rows = np.asarray(obs_rows, dtype=np.int64)
    obs_values = np.asarray(obs_values, dtype=np.float64)
    if obs_rows.size < 1:
        raise InvalidParameterError("obs_rows", obs_rows.size, "at least one observed entry is required")
    if obs_rows.shape != obs_values.shape:
        raise DimensionMismatchError("observed rows vs observed values", obs_rows.size, obs_values.size)
    if obs_rows.min() < 0 or obs_rows.max() >= basis.m:
        raise InvalidParameterError("obs_rows", f"[{obs_rows.min()}, {obs_rows.max()}]", f"row indices must lie in range({basis.m})")
    if regularization < 0.0:
        raise InvalidParameterError("regularization", regularization, "must be non-negative")

    U = basis.basis
    gram, rhs = observed_normal_equations(U, obs_rows, obs_values)
    eigenvalues = scipy.linalg.eigh(gram, eigvals_only=True)
    min_eig = float(eigenvalues[0])
    max_eig = float(eigenvalues[-1])
    singular = min_eig <= singular_tolerance * max(max_eig, 0.0)

    if singular and regularization == 0.0:
        raise SingularSystemError(column_index, min_eig)

    system = gram + regularization * np.eye(gram.shape[0]) if regularization > 0.0 else gram
    try:
        factor = scipy.linalg.cho_factor(system, lower=True, check_finite=False)
    except np.linalg.LinAlgError as e:
        raise SingularSystemError(column_index, min_eig) from e
    z = scipy.linalg.cho_solve(factor, rhs, check_finite=False)

    return ColumnRecovery(recovered=U @ z, min_eigenvalue=min_eig, regularization=regularization)
