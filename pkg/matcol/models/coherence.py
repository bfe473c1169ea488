"""
Coherence Models
"""
from typing import Optional

from pydantic import BaseModel, Field


class CoherenceProfile(BaseModel):
    """Incoherence diagnostics of a matrix"""
    mu_r: float = Field(..., ge=1.0 - 1e-9, description="max(left, right) singular-vector coherence")
    mu_r_left: float = Field(..., description="(m/r) max_i ||U_(i)||^2")
    mu_r_right: float = Field(..., description="(n/r) max_j ||V_(j)||^2")
    mu_hat: float = Field(..., ge=1.0 - 1e-9, description="Coherence of the column-space basis")
    mu_M: float = Field(..., ge=1.0 - 1e-9, description="Column-norm coherence")
    per_vector: Optional[dict[int, float]] = Field(default=None, description="column index -> mu(x)")


class AdditiveBoundConditions(BaseModel):
    """Side conditions of the additive error bound"""
    log_condition: bool = Field(..., description="ln(2n/delta) <= m/64")
    rank_condition: bool = Field(..., description="r <= m/4")

    @property
    def satisfied(self) -> bool:
        return self.log_condition and self.rank_condition
