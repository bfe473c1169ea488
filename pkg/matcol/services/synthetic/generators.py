"""
Synthetic Matrix Generators

Entries of the factors M_L (m x r) and M_R (r x n) and of the noise matrix
are drawn with numpy's Generator.standard_normal (ziggurat method on PCG64).
Reimplementations can match moments, not bits.

The seed is split into two streams: factors and noise. A noisy instance and
an exact instance built from the same seed therefore share the same clean
low-rank part.
"""
import logging

import numpy as np

from matcol.core.exceptions import InvalidParameterError
from matcol.core.seeding import split_rng
from matcol.models.arrays import DenseMatrix
from matcol.models.synthetic import SyntheticSpec

logger = logging.getLogger(__name__)


def _low_rank_part(spec: SyntheticSpec, rng: np.random.Generator) -> DenseMatrix:
    left = rng.standard_normal((spec.m, spec.r))
    right = rng.standard_normal((spec.r, spec.n))
    return left @ right


def gen_lowrank(spec: SyntheticSpec) -> DenseMatrix:
    """Exact rank-r Gaussian-factor matrix M_L M_R"""
    if spec.sigma != 0.0:
        raise InvalidParameterError("sigma", spec.sigma, "gen_lowrank builds noiseless matrices; use gen_noisy")
    factor_rng, _ = split_rng(spec.seed, 2)
    return _low_rank_part(spec, factor_rng)


def gen_noisy(spec: SyntheticSpec) -> tuple[DenseMatrix, DenseMatrix]:
    """
    Noisy low-rank matrix M = C + R

    Returns:
        (M, C) where C is the clean rank-r part and R has i.i.d. N(0, sigma^2) entries
    """
    if spec.sigma <= 0.0:
        raise InvalidParameterError("sigma", spec.sigma, "gen_noisy needs sigma > 0; use gen_lowrank")
    factor_rng, noise_rng = split_rng(spec.seed, 2)
    clean = _low_rank_part(spec, factor_rng)
    noise = spec.sigma * noise_rng.standard_normal((spec.m, spec.n))
    return clean + noise, clean


def generate(spec: SyntheticSpec) -> tuple[DenseMatrix, DenseMatrix]:
    """Dispatch on sigma; returns (M, C) with C = M for exact instances"""
    logger.debug(f"Generating {spec.m}x{spec.n} rank-{spec.r} instance (sigma={spec.sigma}, seed={spec.seed})")
    if spec.sigma == 0.0:
        matrix = gen_lowrank(spec)
        return matrix, matrix
    return gen_noisy(spec)
