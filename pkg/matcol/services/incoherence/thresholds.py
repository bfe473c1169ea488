"""
Sampling Thresholds

Exact recovery (rank-r M, any positive distribution):
    d >= C mu(r) r ln(2r/delta) / (n p_min),   s >= C mu(r) r ln(2rn/delta)
with C = 7; uniform sampling gives n p_min = 1.

Additive error (noisy M = C + R, uniform sampling):
    d >= 64 ln(2/delta) mu(M) r / eps^2
which is inverted here to obtain the eps implied by a given d.
"""
import math
from typing import Optional

from matcol.core.exceptions import InvalidParameterError
from matcol.models.coherence import AdditiveBoundConditions

EXACT_RECOVERY_CONSTANT = 7.0
ADDITIVE_ERROR_CONSTANT = 64.0


def _check_delta(delta: float) -> None:
    if not 0.0 < delta < 1.0:
        raise InvalidParameterError("delta", delta, "must lie in (0, 1)")


def theorem_thresholds(
    m: int,
    n: int,
    r: int,
    mu_r_value: float,
    delta: float,
    p_min: Optional[float] = None,
    constant: float = EXACT_RECOVERY_CONSTANT,
) -> tuple[int, int]:
    """
    Minimal (d, s) guaranteeing exact recovery with probability 1 - delta

    Args:
        m: rows (kept for signature symmetry; the bounds do not depend on m)
        n: columns
        r: rank
        mu_r_value: mu(r) of the matrix
        delta: failure probability in (0, 1)
        p_min: smallest column probability; None means uniform (n p_min = 1)
        constant: leading constant, 7 in the exact-recovery bound

    Returns:
        (d_min, s_min), each at least 1
    """
    _check_delta(delta)
    if r < 1 or n < 1 or m < 1:
        raise InvalidParameterError("r", r, "dimensions and rank must be positive")

    base = constant * mu_r_value * r
    d_bound = base * math.log(2 * r / delta)
    if p_min is not None:
        if not 0.0 < p_min <= 1.0:
            raise InvalidParameterError("p_min", p_min, "must lie in (0, 1]")
        d_bound = d_bound / (n * p_min)
    s_bound = base * math.log(2 * r * n / delta)
    return max(1, math.ceil(d_bound)), max(1, math.ceil(s_bound))


def additive_epsilon(
    d: int,
    mu_M: float,
    r: int,
    delta: float,
    constant: float = ADDITIVE_ERROR_CONSTANT,
) -> float:
    """eps implied by d = constant * ln(2/delta) * mu(M) * r / eps^2"""
    _check_delta(delta)
    if d < 1:
        raise InvalidParameterError("d", d, "must be positive")
    return math.sqrt(constant * math.log(2.0 / delta) * mu_M * r / d)


def additive_bound_conditions(m: int, n: int, r: int, delta: float) -> AdditiveBoundConditions:
    """Check ln(2n/delta) <= m/64 and r <= m/4"""
    _check_delta(delta)
    return AdditiveBoundConditions(
        log_condition=math.log(2 * n / delta) <= m / 64,
        rank_condition=r <= m / 4,
    )
