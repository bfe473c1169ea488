"""
Observation Models - reveal entries of a known matrix

- independent: a fresh row multiset O_i per partial column
- aligned: one row multiset shared by every partial column

Both modes sample rows uniformly with replacement and feed the same solver.
A column drawn as a full column at least once is never partially observed.
"""
import logging

import numpy as np

from matcol.core.exceptions import DimensionMismatchError
from matcol.core.seeding import split_rng
from matcol.models.arrays import DenseMatrix, as_dense_matrix
from matcol.models.completion import CompletionConfig
from matcol.models.observation import FullColumn, ObservationMode, ObservationSet, PartialColumn
from matcol.services.completion.sampling import draw_column_indices

logger = logging.getLogger(__name__)


def gen_observation(
    M: DenseMatrix,
    config: CompletionConfig,
    mode: ObservationMode | str = ObservationMode.INDEPENDENT,
    warn_oversampling: bool = True,
) -> ObservationSet:
    """
    Draw full columns and partial entries of M

    Args:
        M: source matrix
        config: d, s, distribution and rng_seed
        mode: aligned or independent
        warn_oversampling: log a warning when s > m

    Returns:
        ObservationSet reproducible from config.rng_seed
    """
    M = as_dense_matrix(M, "M")
    mode = ObservationMode(mode)
    m, n = M.shape
    if config.n != n:
        raise DimensionMismatchError("column distribution length vs matrix columns", n, config.n)
    s = config.entries_per_column
    if s > m and warn_oversampling:
        logger.warning(f"⚠️ s={s} exceeds m={m}; rows will repeat within partial columns")

    column_rng, entry_rng = split_rng(config.rng_seed, 2)
    draws = draw_column_indices(config.distribution, config.num_full_columns, column_rng)
    drawn = np.unique(draws)
    remaining = np.setdiff1d(np.arange(n), drawn, assume_unique=True)

    full_columns = [FullColumn(index=int(j), values=M[:, j].copy()) for j in drawn]

    shared_rows = None
    if mode == ObservationMode.ALIGNED:
        shared_rows = entry_rng.integers(0, m, size=s, dtype=np.int64)
        partial_values = M[np.ix_(shared_rows, remaining)]
        partial_columns = [
            PartialColumn(index=int(j), rows=None, values=partial_values[:, k])
            for k, j in enumerate(remaining)
        ]
    else:
        rows = entry_rng.integers(0, m, size=(remaining.size, s), dtype=np.int64)
        partial_columns = [
            PartialColumn(index=int(j), rows=rows[k], values=M[rows[k], j])
            for k, j in enumerate(remaining)
        ]

    logger.debug(
        f"Observed {drawn.size} full columns ({config.num_full_columns} draws) "
        f"and {remaining.size} partial columns ({mode.value}, s={s})"
    )
    return ObservationSet(
        m=m,
        n=n,
        d=config.num_full_columns,
        s=s,
        mode=mode,
        probs=None if config.distribution.is_uniform else config.distribution.probs,
        draws=draws,
        shared_rows=shared_rows,
        full_columns=full_columns,
        partial_columns=partial_columns,
    )
