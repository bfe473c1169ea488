"""
Shared CLI Plumbing - argument types, run context, budget resolution
"""
import argparse
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional

import numpy as np

from matcol.core.config import Settings
from matcol.core.exceptions import InvalidParameterError
from matcol.models.sampling import ColumnSamplingDistribution
from matcol.services.incoherence.coherence import mu_r
from matcol.services.incoherence.thresholds import theorem_thresholds
from matcol.services.storage.manifest import ManifestRecorder
from matcol.services.storage.matrix_io import read_vector

logger = logging.getLogger(__name__)


@dataclass
class RunContext:
    """What every command handler receives besides its arguments"""
    settings: Settings
    jobs: Optional[int]


# ============================================================================
# ARGUMENT TYPES
# ============================================================================

def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive, got {value}")
    return value


def non_negative_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative, got {value}")
    return value


def non_negative_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}")
    if not math.isfinite(value) or value < 0.0:
        raise argparse.ArgumentTypeError(f"must be a finite non-negative number, got {text}")
    return value


def positive_float(text: str) -> float:
    value = non_negative_float(text)
    if value == 0.0:
        raise argparse.ArgumentTypeError("must be positive, got 0")
    return value


def probability(text: str) -> float:
    value = non_negative_float(text)
    if not 0.0 < value < 1.0:
        raise argparse.ArgumentTypeError(f"must lie strictly between 0 and 1, got {text}")
    return value


def add_seed_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=non_negative_int, default=0, help="RNG seed (default: 0)")


def add_budget_arguments(parser: argparse.ArgumentParser) -> None:
    """--d/--s or --auto-thresholds (with --delta), plus --column-weights"""
    parser.add_argument("--d", type=positive_int, help="Number of full-column draws")
    parser.add_argument("--s", type=positive_int, help="Entries observed per partial column")
    parser.add_argument(
        "--auto-thresholds",
        action="store_true",
        help="Use the exact-recovery thresholds computed from mu(r) of the input",
    )
    parser.add_argument("--delta", type=probability, help="Failure probability for --auto-thresholds")
    parser.add_argument("--column-weights", type=Path, help="Positive column weights (CSV vector), normalized")


# ============================================================================
# HELPERS
# ============================================================================

def args_config(args: argparse.Namespace, settings: Settings) -> dict[str, Any]:
    """Resolved configuration for the manifest: flags plus settings"""
    flags = {
        key: (str(value) if isinstance(value, Path) else value)
        for key, value in vars(args).items()
        if key != "handler"
    }
    return {"flags": flags, "settings": settings.model_dump(mode="json")}


def start_manifest(command: str, args: argparse.Namespace, context: RunContext) -> ManifestRecorder:
    return ManifestRecorder(command, args_config(args, context.settings), args.seed)


def column_distribution(weights_path: Optional[Path], n: int) -> ColumnSamplingDistribution:
    """Uniform unless a weights file is given"""
    if weights_path is None:
        return ColumnSamplingDistribution.uniform(n)
    weights = read_vector(weights_path)
    if weights.size != n:
        raise InvalidParameterError("--column-weights", str(weights_path), f"holds {weights.size} weights for n={n} columns")
    try:
        return ColumnSamplingDistribution.from_weights(weights)
    except ValueError as e:
        raise InvalidParameterError("--column-weights", str(weights_path), str(e)) from e


def resolve_budget(
    args: argparse.Namespace,
    M: Optional[np.ndarray],
    rank: Optional[int],
    distribution: ColumnSamplingDistribution,
    settings: Settings,
) -> tuple[int, int]:
    """
    (d, s) from explicit flags or from the exact-recovery thresholds

    Explicit --d/--s win over the computed values. A computed d above n is
    clamped to n; draws are with replacement so d = n is always feasible.
    """
    if not args.auto_thresholds:
        missing = [flag for flag, value in (("--d", args.d), ("--s", args.s)) if value is None]
        if missing:
            raise InvalidParameterError(" and ".join(missing), None, "required unless --auto-thresholds is given")
        return args.d, args.s

    if M is None:
        raise InvalidParameterError("--auto-thresholds", True, "needs a matrix to compute mu(r) from")
    if rank is None:
        raise InvalidParameterError("--rank", None, "required with --auto-thresholds")
    delta = args.delta if args.delta is not None else settings.completion.delta
    m, n = M.shape
    mu = mu_r(M, rank)
    p_min = None if distribution.is_uniform else distribution.p_min
    d, s = theorem_thresholds(m, n, rank, mu, delta, p_min=p_min, constant=settings.harness.theorem_constant)
    logger.info(f"📐 Thresholds for r={rank}, delta={delta}: mu(r)={mu:.4f}, d={d}, s={s}")
    if d > n:
        logger.warning(f"⚠️ Threshold d={d} exceeds n={n}; using d={n}")
        d = n
    return (args.d if args.d is not None else d), (args.s if args.s is not None else s)
