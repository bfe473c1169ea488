"""
Experiment Models - sample-complexity sweeps and the equal-budget comparison
"""
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from matcol.models.baseline import BudgetAudit, NystromConfig
from matcol.models.coherence import AdditiveBoundConditions
from matcol.models.observation import ObservationMode


# ============================================================================
# EXACT-RECOVERY SWEEP
# ============================================================================

class SearchStrategy(BaseModel):
    """Doubling from `initial` until all trials succeed, then bisection"""
    initial: int = Field(default=1, ge=1)
    growth: float = Field(default=2.0, gt=1.0)


class SweepSpec(BaseModel):
    """Grid of square instances searched for the minimal d and s"""
    model_config = ConfigDict(extra="forbid")

    sizes: list[int] = Field(..., min_length=1, description="n values (m = n)")
    ranks: list[int] = Field(..., min_length=1, description="r values")
    trials: int = Field(default=10, ge=1)
    success_threshold: float = Field(default=1e-8, gt=0.0)
    search: SearchStrategy = Field(default_factory=SearchStrategy)
    base_seed: int = Field(default=0, ge=0)
    delta: float = Field(default=0.1, gt=0.0, lt=1.0)
    fixed_multiplier: float = Field(default=2.0, gt=0.0)
    theorem_constant: float = Field(default=7.0, gt=0.0)
    mode: ObservationMode = ObservationMode.INDEPENDENT

    @field_validator("sizes", "ranks")
    @classmethod
    def validate_positive(cls, v: list[int]) -> list[int]:
        if any(x < 1 for x in v):
            raise ValueError("values must be positive")
        return v

    @model_validator(mode="after")
    def validate_grid(self) -> "SweepSpec":
        if max(self.ranks) > min(self.sizes):
            raise ValueError(f"rank {max(self.ranks)} exceeds the smallest size {min(self.sizes)}")
        return self


class ProbeRecord(BaseModel):
    """All trials run at one value of the searched parameter"""
    value: int
    fixed_value: int
    seeds: list[int]
    errors: list[Optional[float]] = Field(..., description="Relative errors; None where the solve failed")
    successes: int
    trials: int

    @property
    def all_succeeded(self) -> bool:
        return self.successes == self.trials


class SearchOutcome(BaseModel):
    """Minimal value of one parameter with its bisection certificate"""
    parameter: Literal["d", "s"]
    fixed_value: int
    upper_bound: int
    found: bool
    minimal: Optional[int] = None
    certificate_success: Optional[int] = Field(default=None, description="Value at which every trial succeeded")
    certificate_failure: Optional[int] = Field(default=None, description="minimal - 1, where some trial failed")
    probes: list[ProbeRecord] = Field(default_factory=list)


class SweepCell(BaseModel):
    """Results for one (n, r)"""
    n: int
    r: int
    mu_r: float
    theorem_d: int
    theorem_s: int
    d_search: SearchOutcome
    s_search: SearchOutcome
    theorem_probe: ProbeRecord

    @property
    def minimal_d(self) -> Optional[int]:
        return self.d_search.minimal

    @property
    def minimal_s(self) -> Optional[int]:
        return self.s_search.minimal


class RegressionFit(BaseModel):
    """Least-squares fit target ~ slope * feature + intercept"""
    target: Literal["minimal_d", "minimal_s"]
    feature: Literal["r ln r", "r^2 ln r"]
    slope: float
    intercept: float
    r_squared: float
    residual_sum: float = Field(..., description="Sum of squared residuals")
    points: int


class SizeSpread(BaseModel):
    """Variation of a minimal value across n at fixed r"""
    target: Literal["minimal_d", "minimal_s"]
    r: int
    values: dict[int, int] = Field(..., description="n -> minimal value")
    relative_spread: float = Field(..., description="(max - min) / mean")


class SweepResult(BaseModel):
    """Full output of an exact-recovery sweep"""
    spec: SweepSpec
    spec_hash: str
    cells: list[SweepCell]
    regressions: list[RegressionFit] = Field(default_factory=list)
    size_spread: list[SizeSpread] = Field(default_factory=list)

    def cell(self, n: int, r: int) -> SweepCell:
        for cell in self.cells:
            if cell.n == n and cell.r == r:
                return cell
        raise KeyError((n, r))

    def fit(self, target: str, feature: str) -> RegressionFit:
        for fit in self.regressions:
            if fit.target == target and fit.feature == feature:
                return fit
        raise KeyError((target, feature))


# ============================================================================
# EQUAL-BUDGET COMPARISON
# ============================================================================

class ComparisonSpec(BaseModel):
    """Noisy square instances compared against budget-matched Nystrom"""
    model_config = ConfigDict(extra="forbid")

    n: int = Field(..., ge=2)
    ranks: list[int] = Field(..., min_length=1)
    sigmas: list[float] = Field(..., min_length=1)
    budgets: Optional[list[int]] = Field(default=None, description="d values (s = d); default 2r, 4r, ..., 10r")
    trials: int = Field(default=10, ge=2)
    base_seed: int = Field(default=0, ge=0)
    delta: float = Field(default=0.1, gt=0.0, lt=1.0)

    @field_validator("sigmas")
    @classmethod
    def validate_sigmas(cls, v: list[float]) -> list[float]:
        if any(x < 0.0 for x in v):
            raise ValueError("sigma must be non-negative")
        return v

    @model_validator(mode="after")
    def validate_grid(self) -> "ComparisonSpec":
        if any(r < 1 or r > self.n for r in self.ranks):
            raise ValueError(f"ranks must lie in [1, {self.n}]")
        if self.budgets is not None:
            if not self.budgets:
                raise ValueError("budgets must not be empty")
            if any(b < 1 or b > self.n for b in self.budgets):
                raise ValueError(f"budgets (d values) must lie in [1, {self.n}]")
        return self

    def budgets_for(self, r: int) -> list[int]:
        if self.budgets is not None:
            return list(self.budgets)
        return sorted({min(self.n, k * r) for k in (2, 4, 6, 8, 10)})


class ComparisonTrial(BaseModel):
    """One seeded instance"""
    trial: int
    seed: int
    completion_error: float = Field(..., description="||M - M_hat||_F")
    completion_relative_error: float
    nystrom_error: float
    mu_M: float
    epsilon: float
    bound_lhs: float = Field(..., description="||M - M_hat||_F^2")
    bound_rhs: float = Field(..., description="||M - M_r||_F^2 + eps ||M||_F^2")
    bound_holds: bool
    regularized_columns: int


class ComparisonCell(BaseModel):
    """Statistics for one (r, sigma, budget)"""
    r: int
    sigma: float
    d: int
    s: int
    nystrom: NystromConfig
    audit: BudgetAudit
    bound_conditions: AdditiveBoundConditions
    completion_mean: float
    completion_std: float
    nystrom_mean: float
    nystrom_std: float
    bound_holds: int
    regularized_columns: int
    trials: list[ComparisonTrial]


class ComparisonResult(BaseModel):
    """Full output of the equal-budget comparison"""
    n: int
    trials: int
    base_seed: int
    spec_hash: str = ""
    cells: list[ComparisonCell]

    def cells_for(self, r: int, sigma: float) -> list[ComparisonCell]:
        return [c for c in self.cells if c.r == r and c.sigma == sigma]
