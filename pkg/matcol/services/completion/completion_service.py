"""
Completion Service - matrix completion from non-uniformly sampled entries

Pipeline:
    full columns → scaled sample A → basis U_hat (top r_hat left singular vectors)
    partial columns → closed-form least squares against U_hat → M_hat

All randomness lives in observation generation; complete() is a pure
function of the observation set and the configuration. Per-column solves
share the read-only basis and may run on a thread pool; the report is
assembled by column index regardless of completion order.
"""
import logging
from typing import Optional

import numpy as np
from joblib import Parallel, delayed

from matcol.core.exceptions import ConfigurationError, DimensionMismatchError, SingularSystemError
from matcol.models.arrays import DenseMatrix, as_dense_matrix
from matcol.models.completion import ColumnRecovery, ColumnSpaceBasis, CompletionConfig, CompletionReport
from matcol.models.observation import ObservationSet, PartialColumn
from matcol.services.completion.column_space import column_space
from matcol.services.completion.low_rank import relative_frobenius_error
from matcol.services.completion.recovery import recover_column
from matcol.services.completion.sampling import scale_draws
from matcol.services.incoherence.coherence import mu_hat

logger = logging.getLogger(__name__)


def _check_consistency(obs: ObservationSet, config: CompletionConfig) -> None:
    if obs.n != config.n:
        raise DimensionMismatchError("observation columns vs column distribution", config.n, obs.n)
    if obs.d != config.num_full_columns:
        raise DimensionMismatchError("full-column draws (d)", config.num_full_columns, obs.d)
    if obs.s != config.entries_per_column:
        raise DimensionMismatchError("entries per partial column (s)", config.entries_per_column, obs.s)
    if obs.probs is not None and not np.allclose(obs.probs, config.distribution.probs, rtol=0.0, atol=1e-15):
        raise ConfigurationError(
            "Observation set was drawn from a different column distribution",
            details="pass the distribution stored in the observation file",
        )


def _recover_partial(
    obs: ObservationSet,
    column: PartialColumn,
    basis: ColumnSpaceBasis,
    config: CompletionConfig,
) -> ColumnRecovery:
    rows = obs.rows_for(column)
    try:
        return recover_column(
            basis,
            rows,
            column.values,
            regularization=config.regularization,
            column_index=column.index,
            singular_tolerance=config.singular_tolerance,
        )
    except SingularSystemError as e:
        if config.fallback_regularization is None:
            raise
        logger.warning(
            f"⚠️ Column {column.index} singular (lambda_min={e.min_eigenvalue:.2e}), "
            f"re-solving with regularization {config.fallback_regularization:.2e}"
        )
        return recover_column(
            basis,
            rows,
            column.values,
            regularization=config.fallback_regularization,
            column_index=column.index,
            singular_tolerance=config.singular_tolerance,
        )


def complete(
    obs: ObservationSet,
    config: CompletionConfig,
    truth: Optional[DenseMatrix] = None,
    jobs: Optional[int] = None,
) -> CompletionReport:
    """
    Recover the full matrix from an observation set

    Args:
        obs: full columns and partial observations
        config: r, d, s, distribution and numerical tolerances
        truth: ground truth, only used to fill relative_frobenius_error
        jobs: thread pool size for per-column solves (None or 1 = sequential)

    Returns:
        CompletionReport

    Raises:
        DimensionMismatchError: observation set inconsistent with config
        DegenerateInputError: every drawn column is zero
        SingularSystemError: a per-column system is singular and no fallback is configured
    """
    _check_consistency(obs, config)

    full_values = {c.index: c.values for c in obs.full_columns}
    A = scale_draws(full_values, obs.draws, config.distribution)
    basis = column_space(A, config.target_rank, config.rank_tolerance)
    logger.debug(f"Column space: r_hat={basis.effective_rank}, sigma_1={basis.singular_values[0]:.4e}")

    recovered = np.zeros((obs.m, obs.n), dtype=np.float64)
    for index, values in full_values.items():
        recovered[:, index] = values

    if jobs is not None and jobs != 1 and len(obs.partial_columns) > 1:
        recoveries = Parallel(n_jobs=jobs, prefer="threads")(
            delayed(_recover_partial)(obs, column, basis, config) for column in obs.partial_columns
        )
    else:
        recoveries = [_recover_partial(obs, column, basis, config) for column in obs.partial_columns]

    min_eigs = np.empty(len(obs.partial_columns), dtype=np.float64)
    regularized = []
    for k, (column, result) in enumerate(zip(obs.partial_columns, recoveries)):
        recovered[:, column.index] = result.recovered
        min_eigs[k] = result.min_eigenvalue
        if result.regularization != config.regularization:
            regularized.append(column.index)

    error = None
    if truth is not None:
        truth = as_dense_matrix(truth, "truth")
        if truth.shape != recovered.shape:
            raise DimensionMismatchError("ground truth entries", recovered.size, truth.size)
        error = relative_frobenius_error(truth, recovered)

    return CompletionReport(
        recovered=recovered,
        effective_rank=basis.effective_rank,
        draws=obs.draws,
        full_column_indices=sorted(full_values),
        partial_column_indices=obs.partial_indices,
        per_column_min_eigenvalue=min_eigs,
        regularized_columns=regularized,
        basis_coherence=mu_hat(basis),
        relative_frobenius_error=error,
    )
