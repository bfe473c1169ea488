"""
Full-Column Sampling - draw d columns and build the scaled sample A

Column j of A is M^(i_j) / sqrt(d * p_{i_j}) where p_{i_j} is the probability
of the drawn column. Draws are with replacement and duplicates stay in A.
"""
import logging

import numpy as np

from matcol.core.exceptions import DimensionMismatchError, InvalidParameterError
from matcol.core.seeding import as_rng
from matcol.models.arrays import DenseMatrix, as_dense_matrix
from matcol.models.sampling import ColumnSamplingDistribution

logger = logging.getLogger(__name__)


def draw_column_indices(
    dist: ColumnSamplingDistribution,
    d: int,
    seed: int | np.random.Generator,
) -> np.ndarray:
    """d independent draws with Pr[i_j = i] = p_i"""
    if d < 1:
        raise InvalidParameterError("d", d, "at least one full column must be drawn")
    rng = as_rng(seed)
    return rng.choice(dist.n, size=d, replace=True, p=dist.probs).astype(np.int64)


def scale_draws(
    columns: dict[int, np.ndarray],
    draws: np.ndarray,
    dist: ColumnSamplingDistribution,
) -> DenseMatrix:
    """
    Assemble A from already observed full columns

    Args:
        columns: column index -> full column vector
        draws: drawn indices in draw order (duplicates allowed)
        dist: distribution the draws came from

    Returns:
        m x d scaled sample matrix
    """
    d = len(draws)
    scale = 1.0 / np.sqrt(d * dist.probs[draws])
    return np.column_stack([columns[int(i)] for i in draws]) * scale


def sample_full_columns(
    source: np.ndarray,
    dist: ColumnSamplingDistribution,
    d: int,
    seed: int | np.random.Generator,
) -> tuple[np.ndarray, DenseMatrix]:
    """
    Draw d full columns from the source matrix and scale them

    Args:
        source: m x n matrix (the column oracle)
        dist: column distribution of length n
        d: number of draws
        seed: seed or generator

    Returns:
        (drawn indices, scaled sample A of size m x d)

    Raises:
        DimensionMismatchError: distribution length differs from source columns
    """
    source = as_dense_matrix(source, "source")
    if dist.n != source.shape[1]:
        raise DimensionMismatchError("column distribution length vs source columns", source.shape[1], dist.n)

    indices = draw_column_indices(dist, d, seed)
    scale = 1.0 / np.sqrt(d * dist.probs[indices])
    scaled = source[:, indices] * scale
    distinct = np.unique(indices).size
    if distinct < d:
        logger.debug(f"Drew {d} columns, {distinct} distinct")
    return indices, scaled
