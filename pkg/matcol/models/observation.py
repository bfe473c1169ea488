"""
Observation Models - which entries of the unknown matrix were seen

Two kinds of columns:
- full columns: drawn i.i.d. from the column distribution and observed
  entirely. `draws` keeps every draw in order (duplicates included) because
  the scaled sample matrix needs one column per draw; `full_columns` keeps
  each drawn column once.
- partial columns: every column never drawn, observed on a multiset of s
  rows sampled uniformly with replacement.

Observation modes:
- independent: every partial column has its own row multiset
- aligned: all partial columns share one row multiset (stored once)
"""
from enum import Enum
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from matcol.models.arrays import FloatArray, IndexArray


class ObservationMode(str, Enum):
    """How partial columns pick their observed rows"""
    ALIGNED = "aligned"
    INDEPENDENT = "independent"


class FullColumn(BaseModel):
    """A fully observed column"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    index: int = Field(..., ge=0)
    values: FloatArray


class PartialColumn(BaseModel):
    """A partially observed column; `rows` is None in aligned mode"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    index: int = Field(..., ge=0)
    rows: Optional[IndexArray] = None
    values: FloatArray


class ObservationSet(BaseModel):
    """Everything the completion algorithm is allowed to see"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    m: int = Field(..., ge=1, description="Rows of the source matrix")
    n: int = Field(..., ge=1, description="Columns of the source matrix")
    d: int = Field(..., ge=1, description="Number of full-column draws")
    s: int = Field(..., ge=1, description="Entries observed per partial column")
    mode: ObservationMode = ObservationMode.INDEPENDENT
    probs: Optional[FloatArray] = Field(default=None, description="Column distribution; None means uniform")
    draws: IndexArray
    shared_rows: Optional[IndexArray] = None
    full_columns: list[FullColumn]
    partial_columns: list[PartialColumn]

    @model_validator(mode="after")
    def validate_consistency(self) -> "ObservationSet":
        if self.draws.shape != (self.d,):
            raise ValueError(f"draws must hold d={self.d} indices, got shape {self.draws.shape}")
        if self.probs is not None and self.probs.shape != (self.n,):
            raise ValueError(f"probs must have length n={self.n}")

        full_index = [c.index for c in self.full_columns]
        partial_index = [c.index for c in self.partial_columns]
        if len(set(full_index)) != len(full_index):
            raise ValueError("full_columns lists a column more than once")
        if len(set(partial_index)) != len(partial_index):
            raise ValueError("partial_columns lists a column more than once")
        if set(full_index) & set(partial_index):
            raise ValueError("a column is both fully and partially observed")
        if sorted(full_index + partial_index) != list(range(self.n)):
            raise ValueError("every column index in range(n) must be observed exactly once")
        if set(self.draws.tolist()) != set(full_index):
            raise ValueError("full_columns must list exactly the drawn columns")

        for column in self.full_columns:
            if column.values.shape != (self.m,):
                raise ValueError(f"full column {column.index} must have {self.m} values")

        if self.mode == ObservationMode.ALIGNED:
            if self.shared_rows is None:
                raise ValueError("aligned mode requires shared_rows")
            self._check_rows(self.shared_rows, "shared_rows")
            if any(c.rows is not None for c in self.partial_columns):
                raise ValueError("aligned mode stores rows once in shared_rows")
        else:
            if self.shared_rows is not None:
                raise ValueError("independent mode has no shared_rows")
            for column in self.partial_columns:
                if column.rows is None:
                    raise ValueError(f"partial column {column.index} has no rows")
                self._check_rows(column.rows, f"rows of column {column.index}")

        for column in self.partial_columns:
            if column.values.shape != (self.s,):
                raise ValueError(f"partial column {column.index} must have s={self.s} values")
        return self

    def _check_rows(self, rows: np.ndarray, label: str) -> None:
        if rows.shape != (self.s,):
            raise ValueError(f"{label} must hold s={self.s} row indices")
        if rows.size and (rows.min() < 0 or rows.max() >= self.m):
            raise ValueError(f"{label} has row indices outside range(m={self.m})")

    def rows_for(self, column: PartialColumn) -> np.ndarray:
        """Observed row multiset of a partial column"""
        if column.rows is not None:
            return column.rows
        return self.shared_rows

    @property
    def full_indices(self) -> list[int]:
        return [c.index for c in self.full_columns]

    @property
    def partial_indices(self) -> list[int]:
        return [c.index for c in self.partial_columns]

    def observed_entry_count(self) -> int:
        """Entries revealed, counting each full column once and repeated rows once per draw"""
        return len(self.full_columns) * self.m + len(self.partial_columns) * self.s
