"""
Nystrom Baseline - generalized Nystrom / CUR approximation

Samples c columns and rho rows uniformly without replacement and returns

    M_hat = C W_r^+ R

where W is the rho x c intersection and W_r^+ its rank-r truncated
pseudo-inverse (singular values below pinv_tolerance * sigma_1(W) dropped).
Only entries in the sampled rows and columns are read.
"""
import logging
import math

import numpy as np
import scipy.linalg

from matcol.core.exceptions import InvalidParameterError
from matcol.core.seeding import split_rng
from matcol.models.arrays import DenseMatrix, as_dense_matrix
from matcol.models.baseline import BudgetAudit, NystromConfig

logger = logging.getLogger(__name__)

DEFAULT_PINV_TOLERANCE = 1e-10


def truncated_pinv(W: np.ndarray, r: int, pinv_tolerance: float = DEFAULT_PINV_TOLERANCE) -> np.ndarray:
    """
    Rank-r truncated pseudo-inverse

    Returns the c x rho matrix V_k diag(1/sigma) U_k^T with k = min(r, numerical rank);
    a zero matrix when W has no singular value above the tolerance.
    """
    U, sigma, Vt = scipy.linalg.svd(W, full_matrices=False)
    if sigma.size == 0 or sigma[0] == 0.0:
        logger.warning("⚠️ Nystrom intersection W is zero; returning a rank-0 approximation")
        return np.zeros((W.shape[1], W.shape[0]))
    available = int(np.count_nonzero(sigma > pinv_tolerance * sigma[0]))
    k = min(r, available)
    if k < r:
        logger.warning(f"⚠️ Nystrom intersection has numerical rank {available} < r={r}; truncating to {k}")
    return (Vt[:k].T / sigma[:k]) @ U[:, :k].T


def nystrom_approx(
    source: DenseMatrix,
    config: NystromConfig,
    pinv_tolerance: float = DEFAULT_PINV_TOLERANCE,
) -> DenseMatrix:
    """
    Approximate M from uniformly sampled rows and columns

    Args:
        source: m x n matrix (only sampled rows/columns are read)
        config: c, rho, target rank, seed
        pinv_tolerance: relative cutoff for the pseudo-inverse

    Returns:
        m x n approximation of rank at most r
    """
    source = as_dense_matrix(source, "source")
    m, n = source.shape
    if config.num_columns > n or config.num_rows > m:
        raise InvalidParameterError(
            "config",
            f"c={config.num_columns}, rho={config.num_rows}",
            f"cannot sample more than n={n} columns or m={m} rows without replacement",
        )

    column_rng, row_rng = split_rng(config.seed, 2)
    columns = np.sort(column_rng.choice(n, size=config.num_columns, replace=False))
    rows = np.sort(row_rng.choice(m, size=config.num_rows, replace=False))

    C = source[:, columns]
    R = source[rows, :]
    W = C[rows, :]
    return C @ (truncated_pinv(W, config.target_rank, pinv_tolerance) @ R)


def _ceil(x: float) -> int:
    # alpha r can land a hair above an integer through rounding
    return math.ceil(x - 1e-9)


def match_budget(d: int, s: int, n: int, m: int, r: int, seed: int = 0) -> NystromConfig:
    """
    Budget-matched Nystrom configuration: alpha = (d + s) / (r + r^2)

    Returns:
        NystromConfig with c = ceil(alpha r) <= n, rho = ceil(alpha r^2) <= m and
        target rank min(r, c, rho)
    """
    for name, value in (("d", d), ("s", s), ("n", n), ("m", m), ("r", r)):
        if value < 1:
            raise InvalidParameterError(name, value, "must be positive")

    alpha = (d + s) / (r + r * r)
    c = max(1, _ceil(alpha * r))
    rho = max(1, _ceil(alpha * r * r))
    if c > n:
        logger.warning(f"⚠️ Budget mismatch: Nystrom columns {c} clamped to n={n}")
        c = n
    if rho > m:
        logger.warning(f"⚠️ Budget mismatch: Nystrom rows {rho} clamped to m={m}")
        rho = m
    rank = min(r, c, rho)
    if rank < r:
        logger.warning(f"⚠️ Budget too small for rank {r}: Nystrom samples {c} columns, {rho} rows; target rank {rank}")
    return NystromConfig(num_columns=c, num_rows=rho, target_rank=rank, seed=seed)


def budget_audit(d: int, s: int, n: int, m: int, r: int, config: NystromConfig) -> BudgetAudit:
    """True observed-entry counts behind the column-plus-row budget convention"""
    alpha = (d + s) / (r + r * r)
    raw_c, raw_rho = max(1, _ceil(alpha * r)), max(1, _ceil(alpha * r * r))
    c, rho = config.num_columns, config.num_rows
    audit = BudgetAudit(
        alpha=alpha,
        completion_entries=d * m + (n - d) * s,
        nystrom_entries=c * m + rho * n - c * rho,
        clamped=(c != raw_c or rho != raw_rho),
    )
    logger.info(
        f"📊 Entry budget: completion {audit.completion_entries}, Nystrom {audit.nystrom_entries} (alpha={alpha:.3f})"
    )
    return audit
