"""
Trial Functions - one seeded instance each, safe to ship to worker processes
"""
import logging
import math
from typing import Optional

import numpy as np

from matcol.core.exceptions import NumericalError
from matcol.core.seeding import derive_seed
from matcol.models.baseline import NystromConfig
from matcol.models.completion import CompletionConfig
from matcol.models.experiment import ComparisonTrial
from matcol.models.observation import ObservationMode
from matcol.models.synthetic import SyntheticSpec
from matcol.services.baseline.nystrom import nystrom_approx
from matcol.services.completion.completion_service import complete
from matcol.services.completion.low_rank import rank_r_residual
from matcol.services.incoherence.coherence import mu_matrix
from matcol.services.incoherence.thresholds import additive_epsilon
from matcol.services.synthetic.generators import gen_lowrank, generate
from matcol.services.synthetic.observations import gen_observation

logger = logging.getLogger(__name__)


def exact_recovery_trial(
    n: int,
    r: int,
    d: int,
    s: int,
    seed: int,
    mode: str = ObservationMode.INDEPENDENT.value,
) -> Optional[float]:
    """
    Relative Frobenius error of one exact-rank instance

    Returns None when the completion fails numerically (singular column
    system or degenerate sample); the caller counts that as a failed trial.
    """
    M = gen_lowrank(SyntheticSpec(m=n, n=n, r=r, seed=derive_seed(seed, "matrix")))
    config = CompletionConfig.uniform(n, target_rank=r, d=d, s=s, rng_seed=derive_seed(seed, "observe"))
    obs = gen_observation(M, config, mode, warn_oversampling=False)
    try:
        report = complete(obs, config, truth=M)
    except NumericalError as e:
        logger.debug(f"Trial seed={seed} d={d} s={s} failed: {e.message}")
        return None
    return report.relative_frobenius_error


def comparison_trial(
    trial: int,
    n: int,
    r: int,
    sigma: float,
    d: int,
    s: int,
    seed: int,
    nystrom: NystromConfig,
    delta: float,
    fallback_scale: float,
    pinv_tolerance: float,
    additive_constant: float,
) -> ComparisonTrial:
    """Completion vs budget-matched Nystrom on one noisy instance"""
    spec = SyntheticSpec(m=n, n=n, r=r, sigma=sigma, seed=derive_seed(seed, "matrix"))
    M, _ = generate(spec)

    config = CompletionConfig.uniform(
        n,
        target_rank=r,
        d=d,
        s=s,
        rng_seed=derive_seed(seed, "observe"),
        fallback_regularization=fallback_scale * s / n,
    )
    obs = gen_observation(M, config, ObservationMode.INDEPENDENT, warn_oversampling=False)
    report = complete(obs, config)
    nystrom_hat = nystrom_approx(
        M,
        nystrom.model_copy(update={"seed": derive_seed(seed, "nystrom")}),
        pinv_tolerance=pinv_tolerance,
    )

    total = float(np.sum(M * M))
    completion_sq = float(np.sum((M - report.recovered) ** 2))
    mu_M = mu_matrix(M)
    epsilon = additive_epsilon(d, mu_M, r, delta, constant=additive_constant)
    rhs = rank_r_residual(M, r) + epsilon * total

    return ComparisonTrial(
        trial=trial,
        seed=seed,
        completion_error=math.sqrt(completion_sq),
        completion_relative_error=math.sqrt(completion_sq / total),
        nystrom_error=float(np.linalg.norm(M - nystrom_hat)),
        mu_M=mu_M,
        epsilon=epsilon,
        bound_lhs=completion_sq,
        bound_rhs=rhs,
        bound_holds=completion_sq <= rhs,
        regularized_columns=len(report.regularized_columns),
    )
