"""
Baseline Models - Nystrom/CUR configuration
"""
from pydantic import BaseModel, Field, model_validator


class NystromConfig(BaseModel):
    """c sampled columns, rho sampled rows, rank-r truncated pseudo-inverse of the intersection"""
    num_columns: int = Field(..., ge=1, description="c")
    num_rows: int = Field(..., ge=1, description="rho")
    target_rank: int = Field(..., ge=1, description="r")
    seed: int = Field(default=0, ge=0, lt=2**64)

    @model_validator(mode="after")
    def validate_rank(self) -> "NystromConfig":
        if self.target_rank > min(self.num_columns, self.num_rows):
            raise ValueError(
                f"target_rank={self.target_rank} exceeds min(c, rho)={min(self.num_columns, self.num_rows)}"
            )
        return self


class BudgetAudit(BaseModel):
    """Observed-entry counts of both methods under the alpha r + alpha r^2 = d + s convention"""
    alpha: float
    completion_entries: int = Field(..., description="d m + (n - d) s")
    nystrom_entries: int = Field(..., description="c m + rho n - c rho")
    clamped: bool = False
