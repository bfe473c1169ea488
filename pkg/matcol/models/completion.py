"""
Completion Models - configuration, column-space basis and report
"""
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from matcol.models.arrays import FloatArray, IndexArray
from matcol.models.sampling import ColumnSamplingDistribution

ORTHONORMALITY_TOLERANCE = 1e-10


class CompletionConfig(BaseModel):
    """Inputs of the completion algorithm: r, d, s and the column distribution"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    target_rank: int = Field(..., ge=1, description="Target rank r")
    num_full_columns: int = Field(..., ge=1, description="Full-column draws d")
    entries_per_column: int = Field(..., ge=1, description="Entries s observed per partial column")
    distribution: ColumnSamplingDistribution
    rng_seed: int = Field(default=0, ge=0, lt=2**64, description="Seed for observation generation")
    rank_tolerance: float = Field(default=1e-9, gt=0.0, lt=1.0)
    regularization: float = Field(default=0.0, ge=0.0)
    fallback_regularization: Optional[float] = Field(
        default=None,
        gt=0.0,
        description="Re-solve singular columns with this Tikhonov term instead of failing",
    )
    singular_tolerance: float = Field(default=1e-12, gt=0.0, lt=1.0)

    @model_validator(mode="after")
    def validate_sizes(self) -> "CompletionConfig":
        n = self.distribution.n
        if self.num_full_columns > n:
            raise ValueError(f"num_full_columns (d={self.num_full_columns}) must not exceed n={n}")
        if self.target_rank > n:
            raise ValueError(f"target_rank (r={self.target_rank}) must not exceed n={n}")
        return self

    @property
    def n(self) -> int:
        return self.distribution.n

    @classmethod
    def uniform(cls, n: int, target_rank: int, d: int, s: int, **kwargs) -> "CompletionConfig":
        """Config with uniform column sampling"""
        return cls(
            target_rank=target_rank,
            num_full_columns=d,
            entries_per_column=s,
            distribution=ColumnSamplingDistribution.uniform(n),
            **kwargs,
        )


class ColumnSpaceBasis(BaseModel):
    """Top left singular vectors of the scaled column sample"""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    basis: FloatArray
    effective_rank: int = Field(..., ge=1)
    singular_values: FloatArray = Field(..., description="All singular values of the scaled sample, descending")

    @field_validator("basis")
    @classmethod
    def validate_basis(cls, v: np.ndarray) -> np.ndarray:
        if v.ndim != 2:
            raise ValueError("basis must be a 2-D matrix")
        gram = v.T @ v
        deviation = np.max(np.abs(gram - np.eye(v.shape[1]))) if v.size else 0.0
        if deviation > ORTHONORMALITY_TOLERANCE:
            raise ValueError(f"basis columns are not orthonormal (max deviation {deviation:.2e})")
        v.setflags(write=False)
        return v

    @model_validator(mode="after")
    def validate_rank(self) -> "ColumnSpaceBasis":
        if self.basis.shape[1] != self.effective_rank:
            raise ValueError("effective_rank must equal the number of basis columns")
        return self

    @property
    def m(self) -> int:
        return int(self.basis.shape[0])


class ColumnRecovery(BaseModel):
    """Result of recovering one partially observed column"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    recovered: FloatArray
    min_eigenvalue: float
    regularization: float = 0.0


class CompletionReport(BaseModel):
    """Recovered matrix and diagnostics"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    recovered: FloatArray
    effective_rank: int
    draws: IndexArray = Field(..., description="Drawn column indices in draw order")
    full_column_indices: list[int]
    partial_column_indices: list[int]
    per_column_min_eigenvalue: FloatArray = Field(..., description="Aligned with partial_column_indices")
    regularized_columns: list[int] = Field(default_factory=list)
    basis_coherence: float = Field(..., description="mu_hat of the column-space basis")
    relative_frobenius_error: Optional[float] = None

    @property
    def shape(self) -> tuple[int, int]:
        return tuple(self.recovered.shape)
