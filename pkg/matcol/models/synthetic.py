"""
Synthetic Instance Models
"""
from pydantic import BaseModel, Field, model_validator


class SyntheticSpec(BaseModel):
    """Gaussian-factor instance: M = M_L M_R (+ N(0, sigma^2) noise)"""
    m: int = Field(..., ge=1, description="Rows")
    n: int = Field(..., ge=1, description="Columns")
    r: int = Field(..., ge=1, description="True rank of the low-rank part")
    sigma: float = Field(default=0.0, ge=0.0, description="Noise standard deviation")
    seed: int = Field(default=0, ge=0, lt=2**64)

    @model_validator(mode="after")
    def validate_rank(self) -> "SyntheticSpec":
        if self.r > min(self.m, self.n):
            raise ValueError(f"r={self.r} exceeds min(m, n)={min(self.m, self.n)}")
        return self
