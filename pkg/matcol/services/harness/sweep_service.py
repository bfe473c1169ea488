"""
Sweep Service - minimal (d, s) over a grid of sizes and ranks

For each square (n, r) cell:
1. mu(r) of a reference instance sets the exact-recovery thresholds
2. minimal d is searched with s fixed at multiplier x the s threshold
3. minimal s is searched with d fixed at multiplier x the d threshold (capped at n)
4. the thresholds themselves are evaluated (d capped at n)
Cells run in order; trials at one searched value use the worker pool.
"""
import logging
import math
from typing import Optional

from matcol.core.seeding import derive_seed
from matcol.models.experiment import SweepCell, SweepResult, SweepSpec
from matcol.models.synthetic import SyntheticSpec
from matcol.services.harness.export import spec_hash
from matcol.services.harness.regression import scaling_regressions, size_spread
from matcol.services.harness.search import find_minimal_d, find_minimal_s, probe_recovery
from matcol.services.incoherence.coherence import mu_r
from matcol.services.incoherence.thresholds import theorem_thresholds
from matcol.services.synthetic.generators import gen_lowrank

logger = logging.getLogger(__name__)


def run_cell(n: int, r: int, spec: SweepSpec, jobs: Optional[int] = None) -> SweepCell:
    """Search both parameters for one (n, r)"""
    reference = gen_lowrank(SyntheticSpec(m=n, n=n, r=r, seed=derive_seed(spec.base_seed, "reference", n, r)))
    mu = mu_r(reference, r)
    theorem_d, theorem_s = theorem_thresholds(n, n, r, mu, spec.delta, constant=spec.theorem_constant)
    s_fixed = max(1, math.ceil(spec.fixed_multiplier * theorem_s))
    d_fixed = min(n, max(1, math.ceil(spec.fixed_multiplier * theorem_d)))
    logger.info(
        f"🧪 Cell n={n} r={r}: mu(r)={mu:.3f}, thresholds d={theorem_d} s={theorem_s}; "
        f"fixed s={s_fixed}, fixed d={d_fixed}"
    )
    if s_fixed > n:
        logger.warning(f"⚠️ Fixed s={s_fixed} exceeds m={n}; rows repeat within partial columns")

    d_search = find_minimal_d(n, r, s_fixed, spec, jobs)
    s_search = find_minimal_s(n, r, d_fixed, spec, jobs)
    theorem_probe = probe_recovery(n, r, "d", min(theorem_d, n), theorem_s, spec, jobs)
    if not theorem_probe.all_succeeded:
        logger.warning(
            f"⚠️ Theorem thresholds recovered {theorem_probe.successes}/{theorem_probe.trials} trials at n={n} r={r}"
        )

    return SweepCell(
        n=n,
        r=r,
        mu_r=mu,
        theorem_d=theorem_d,
        theorem_s=theorem_s,
        d_search=d_search,
        s_search=s_search,
        theorem_probe=theorem_probe,
    )


def run_sweep(spec: SweepSpec, jobs: Optional[int] = None) -> SweepResult:
    """
    Run the exact-recovery sweep

    Args:
        spec: grid, trials, thresholds and seed
        jobs: worker pool size for trials

    Returns:
        SweepResult, identical for identical spec
    """
    logger.info(f"🚀 Exact-recovery sweep: sizes={spec.sizes} ranks={spec.ranks} trials={spec.trials}")
    cells = [run_cell(n, r, spec, jobs) for n in spec.sizes for r in spec.ranks]
    return SweepResult(
        spec=spec,
        spec_hash=spec_hash(spec),
        cells=cells,
        regressions=scaling_regressions(cells),
        size_spread=size_spread(cells),
    )
