"""
Minimal-Parameter Search

For one (n, r) cell, find the smallest d (or s) at which every trial
recovers the matrix: double from the initial value until all trials
succeed, then bisect between the last failure and the first success.
Each searched value gets its own seed schedule derived from
(base_seed, parameter, n, r, value, trial), so re-runs and re-probes are
identical. At return the search stores a certificate: the minimal value
succeeded in all trials and minimal - 1 failed in at least one.
"""
import logging
import math
from typing import Callable, Literal, Optional

from matcol.core.seeding import derive_seed
from matcol.models.experiment import ProbeRecord, SearchOutcome, SearchStrategy, SweepSpec
from matcol.services.harness.trial_runner import run_trials
from matcol.services.harness.trials import exact_recovery_trial

logger = logging.getLogger(__name__)


def find_minimal(
    evaluate: Callable[[int], ProbeRecord],
    upper: int,
    strategy: SearchStrategy,
) -> tuple[Optional[int], Optional[int], list[ProbeRecord]]:
    """
    Doubling-then-bisection search over 1..upper

    Returns:
        (minimal, certificate_failure, probes ordered by value);
        minimal is None when even `upper` fails
    """
    records: dict[int, ProbeRecord] = {}

    def run(value: int) -> ProbeRecord:
        if value not in records:
            records[value] = evaluate(value)
        return records[value]

    lo, hi = 0, None
    value = min(strategy.initial, upper)
    while True:
        if run(value).all_succeeded:
            hi = value
            break
        lo = value
        if value >= upper:
            break
        value = min(upper, max(value + 1, math.ceil(value * strategy.growth)))

    def ordered() -> list[ProbeRecord]:
        return [records[v] for v in sorted(records)]

    if hi is None:
        return None, None, ordered()

    while hi - lo > 1:
        mid = (lo + hi) // 2
        if run(mid).all_succeeded:
            hi = mid
        else:
            lo = mid

    return hi, (lo if lo >= 1 else None), ordered()


def probe_recovery(
    n: int,
    r: int,
    parameter: Literal["d", "s"],
    value: int,
    fixed_value: int,
    spec: SweepSpec,
    jobs: Optional[int] = None,
) -> ProbeRecord:
    """Run spec.trials exact-recovery trials with d (or s) = value"""
    d, s = (value, fixed_value) if parameter == "d" else (fixed_value, value)
    seeds = [derive_seed(spec.base_seed, parameter, n, r, value, t) for t in range(spec.trials)]
    errors = run_trials(
        exact_recovery_trial,
        ({"n": n, "r": r, "d": d, "s": s, "seed": seed, "mode": spec.mode.value} for seed in seeds),
        jobs,
    )
    successes = sum(1 for e in errors if e is not None and e <= spec.success_threshold)
    logger.debug(f"Evaluated n={n} r={r} {parameter}={value}: {successes}/{spec.trials} succeeded")
    return ProbeRecord(
        value=value,
        fixed_value=fixed_value,
        seeds=seeds,
        errors=errors,
        successes=successes,
        trials=spec.trials,
    )


def _search(
    n: int,
    r: int,
    parameter: Literal["d", "s"],
    fixed_value: int,
    spec: SweepSpec,
    jobs: Optional[int],
) -> SearchOutcome:
    upper = n
    minimal, failure, probes = find_minimal(
        lambda value: probe_recovery(n, r, parameter, value, fixed_value, spec, jobs),
        upper,
        spec.search,
    )
    if minimal is None:
        logger.warning(f"⚠️ No {parameter} <= {upper} recovers n={n}, r={r} in all {spec.trials} trials")
    else:
        logger.info(f"🔎 n={n} r={r}: minimal {parameter} = {minimal} ({len(probes)} probes)")
    return SearchOutcome(
        parameter=parameter,
        fixed_value=fixed_value,
        upper_bound=upper,
        found=minimal is not None,
        minimal=minimal,
        certificate_success=minimal,
        certificate_failure=failure,
        probes=probes,
    )


def find_minimal_d(n: int, r: int, s_fixed: int, spec: SweepSpec, jobs: Optional[int] = None) -> SearchOutcome:
    """Smallest number of full-column draws d <= n with all trials exact"""
    return _search(n, r, "d", s_fixed, spec, jobs)


def find_minimal_s(n: int, r: int, d_fixed: int, spec: SweepSpec, jobs: Optional[int] = None) -> SearchOutcome:
    """Smallest per-column sample size s <= m with all trials exact"""
    return _search(n, r, "s", d_fixed, spec, jobs)
