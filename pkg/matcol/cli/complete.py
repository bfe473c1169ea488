"""
complete - recover a matrix from full columns and sampled entries

Input is either a full matrix (observations are drawn here with --seed) or
an observation set written by `observe`. Both paths give the same M_hat for
the same matrix, flags and seed.
"""
import argparse
import logging
import time
from pathlib import Path
from typing import Optional

from matcol.cli.common import (
    RunContext,
    add_budget_arguments,
    add_seed_argument,
    column_distribution,
    non_negative_float,
    positive_float,
    positive_int,
    resolve_budget,
    start_manifest,
)
from matcol.core.exceptions import InvalidParameterError
from matcol.models.completion import CompletionConfig
from matcol.models.observation import ObservationMode, ObservationSet
from matcol.models.sampling import ColumnSamplingDistribution
from matcol.services.completion.completion_service import complete
from matcol.services.storage.files import atomic_write_text
from matcol.services.storage.manifest import ManifestRecorder
from matcol.services.storage.matrix_io import read_matrix, write_matrix
from matcol.services.storage.observation_io import read_observations
from matcol.services.synthetic.observations import gen_observation

logger = logging.getLogger(__name__)

AUTO_REGULARIZATION = "auto"


def regularization_value(text: str) -> float | str:
    """`auto` or a positive number"""
    if text == AUTO_REGULARIZATION:
        return text
    return positive_float(text)


def report_path(out: Path) -> Path:
    return out.with_suffix(".report.json")


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("complete", help="Complete a low-rank matrix")
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--matrix", type=Path, help="Full matrix; observations are drawn from it")
    source.add_argument("--observations", type=Path, help="Observation set written by `observe`")
    parser.add_argument("--rank", type=positive_int, required=True, help="Target rank r")
    add_budget_arguments(parser)
    parser.add_argument(
        "--mode",
        choices=[mode.value for mode in ObservationMode],
        default=ObservationMode.INDEPENDENT.value,
        help="Observation model when drawing from --matrix",
    )
    parser.add_argument("--truth", type=Path, help="Ground truth for the relative error (default: --matrix)")
    parser.add_argument("--regularization", type=non_negative_float, help="Tikhonov term for every column solve")
    parser.add_argument(
        "--regularize",
        nargs="?",
        const=AUTO_REGULARIZATION,
        type=regularization_value,
        help="Re-solve singular columns with this term (default: scale * s / m) instead of failing",
    )
    add_seed_argument(parser)
    parser.add_argument("--out", type=Path, required=True, help="Recovered matrix (.csv, or .mcol for binary)")
    parser.add_argument("--report", type=Path, help="Completion report JSON (default: <out>.report.json)")
    parser.set_defaults(handler=run)


def _observations_from_matrix(args: argparse.Namespace, context: RunContext, manifest: ManifestRecorder) -> tuple:
    M = read_matrix(args.matrix)
    manifest.add_inputs([args.matrix])
    distribution = column_distribution(args.column_weights, M.shape[1])
    if args.column_weights is not None:
        manifest.add_inputs([args.column_weights])
    d, s = resolve_budget(args, M, args.rank, distribution, context.settings)
    config = _config(args, context, d, s, M.shape[0], distribution)
    return gen_observation(M, config, args.mode), config, M


def _observations_from_file(args: argparse.Namespace, context: RunContext, manifest: ManifestRecorder) -> tuple:
    if args.auto_thresholds:
        raise InvalidParameterError("--auto-thresholds", True, "an observation set already fixes d and s")
    if args.column_weights is not None:
        raise InvalidParameterError("--column-weights", str(args.column_weights), "an observation set stores its own distribution")
    obs: ObservationSet = read_observations(args.observations)
    manifest.add_inputs([args.observations])
    if obs.probs is None:
        distribution = ColumnSamplingDistribution.uniform(obs.n)
    else:
        distribution = ColumnSamplingDistribution(probs=obs.probs)
    d = args.d if args.d is not None else obs.d
    s = args.s if args.s is not None else obs.s
    return obs, _config(args, context, d, s, obs.m, distribution), None


def _config(
    args: argparse.Namespace,
    context: RunContext,
    d: int,
    s: int,
    m: int,
    distribution: ColumnSamplingDistribution,
) -> CompletionConfig:
    defaults = context.settings.completion
    fallback: Optional[float] = None
    if args.regularize == AUTO_REGULARIZATION:
        fallback = defaults.fallback_regularization_scale * s / m
    elif args.regularize is not None:
        fallback = args.regularize
    return CompletionConfig(
        target_rank=args.rank,
        num_full_columns=d,
        entries_per_column=s,
        distribution=distribution,
        rng_seed=args.seed,
        rank_tolerance=defaults.rank_tolerance,
        regularization=args.regularization if args.regularization is not None else defaults.regularization,
        fallback_regularization=fallback,
        singular_tolerance=defaults.singular_tolerance,
    )


def run(args: argparse.Namespace, context: RunContext) -> int:
    manifest = start_manifest("complete", args, context)
    if args.matrix is not None:
        obs, config, truth = _observations_from_matrix(args, context, manifest)
    else:
        obs, config, truth = _observations_from_file(args, context, manifest)
    if args.truth is not None:
        truth = read_matrix(args.truth)
        manifest.add_inputs([args.truth])

    started = time.perf_counter()
    report = complete(obs, config, truth=truth, jobs=context.jobs)
    manifest.time("complete", started)

    write_matrix(args.out, report.recovered)
    report_out = args.report or report_path(args.out)
    atomic_write_text(report_out, report.model_dump_json(exclude={"recovered"}, indent=2) + "\n")
    manifest.add_outputs([args.out, report_out])
    manifest.write(args.out)

    if report.relative_frobenius_error is not None:
        logger.info(f"✅ Completed with rank {report.effective_rank}; relative error {report.relative_frobenius_error:.3e}")
    else:
        logger.info(f"✅ Completed with rank {report.effective_rank}")
    if report.regularized_columns:
        logger.warning(f"⚠️ {len(report.regularized_columns)} columns needed the regularization fallback")
    return 0
