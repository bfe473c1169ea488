"""
Scaling Regressions - minimal d and s against r ln r and r^2 ln r
"""
import logging
import math
from collections import defaultdict
from typing import Literal

import numpy as np
from scipy import stats

from matcol.models.experiment import RegressionFit, SizeSpread, SweepCell

logger = logging.getLogger(__name__)

FEATURES = {
    "r ln r": lambda r: r * math.log(r),
    "r^2 ln r": lambda r: r * r * math.log(r),
}
TARGETS: tuple[Literal["minimal_d", "minimal_s"], ...] = ("minimal_d", "minimal_s")


def fit_line(x: np.ndarray, y: np.ndarray) -> tuple[float, float, float, float]:
    """Least squares y ~ slope x + intercept; returns (slope, intercept, R^2, residual sum)"""
    result = stats.linregress(x, y)
    residuals = y - (result.slope * x + result.intercept)
    return float(result.slope), float(result.intercept), float(result.rvalue ** 2), float(np.sum(residuals ** 2))


def scaling_regressions(cells: list[SweepCell]) -> list[RegressionFit]:
    """Fit every target against every feature over cells where the search succeeded"""
    fits = []
    for target in TARGETS:
        points = [(c.r, getattr(c, target)) for c in cells if getattr(c, target) is not None]
        if len({r for r, _ in points}) < 2:
            logger.info(f"Skipping {target} regression: fewer than two distinct ranks")
            continue
        y = np.array([v for _, v in points], dtype=np.float64)
        for feature, transform in FEATURES.items():
            x = np.array([transform(r) for r, _ in points], dtype=np.float64)
            slope, intercept, r_squared, residual_sum = fit_line(x, y)
            fits.append(RegressionFit(
                target=target,
                feature=feature,
                slope=slope,
                intercept=intercept,
                r_squared=r_squared,
                residual_sum=residual_sum,
                points=len(points),
            ))
            logger.info(f"📈 {target} ~ {feature}: slope={slope:.3f} R^2={r_squared:.4f}")
    return fits


def size_spread(cells: list[SweepCell]) -> list[SizeSpread]:
    """Relative spread (max - min) / mean of each minimal value across n at fixed r"""
    spreads = []
    for target in TARGETS:
        by_rank: dict[int, dict[int, int]] = defaultdict(dict)
        for cell in cells:
            value = getattr(cell, target)
            if value is not None:
                by_rank[cell.r][cell.n] = value
        for r in sorted(by_rank):
            values = by_rank[r]
            if len(values) < 2:
                continue
            arr = np.array(list(values.values()), dtype=np.float64)
            spreads.append(SizeSpread(
                target=target,
                r=r,
                values=dict(sorted(values.items())),
                relative_spread=float((arr.max() - arr.min()) / arr.mean()),
            ))
    return spreads
