"""
Column Sampling Models - the distribution {p_i} used to draw full columns
"""
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator

from matcol.models.arrays import FloatArray

PROBABILITY_SUM_TOLERANCE = 1e-12


class ColumnSamplingDistribution(BaseModel):
    """Probabilities p_0..p_{n-1}, all positive, summing to one"""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    probs: FloatArray

    @field_validator("probs")
    @classmethod
    def validate_probs(cls, v: np.ndarray) -> np.ndarray:
        if v.ndim != 1 or v.size == 0:
            raise ValueError("probs must be a non-empty vector")
        if not np.all(np.isfinite(v)):
            raise ValueError("probs must be finite")
        if np.any(v <= 0.0):
            raise ValueError(f"every p_i must be > 0 (min is {v.min()!r})")
        total = float(np.sum(v))
        if abs(total - 1.0) > PROBABILITY_SUM_TOLERANCE:
            raise ValueError(f"probs must sum to 1 within {PROBABILITY_SUM_TOLERANCE}, got {total!r}")
        v.setflags(write=False)
        return v

    @classmethod
    def uniform(cls, n: int) -> "ColumnSamplingDistribution":
        """p_i = 1/n"""
        if n < 1:
            raise ValueError("n must be positive")
        return cls(probs=np.full(n, 1.0 / n))

    @classmethod
    def from_weights(cls, weights: Any) -> "ColumnSamplingDistribution":
        """Normalize positive weights into a distribution"""
        w = np.asarray(weights, dtype=np.float64)
        if w.ndim != 1 or np.any(w <= 0.0) or not np.all(np.isfinite(w)):
            raise ValueError("weights must be a vector of positive finite numbers")
        probs = w / w.sum()
        return cls(probs=probs)

    @property
    def n(self) -> int:
        return int(self.probs.size)

    @property
    def p_min(self) -> float:
        return float(self.probs.min())

    @property
    def is_uniform(self) -> bool:
        return bool(np.all(self.probs == self.probs[0]))
