"""
observe - draw an observation set from a matrix
"""
import argparse
import logging
import time
from pathlib import Path

from matcol.cli.common import (
    RunContext,
    add_budget_arguments,
    add_seed_argument,
    column_distribution,
    positive_int,
    resolve_budget,
    start_manifest,
)
from matcol.models.completion import CompletionConfig
from matcol.models.observation import ObservationMode
from matcol.services.storage.matrix_io import read_matrix
from matcol.services.storage.observation_io import write_observations
from matcol.services.synthetic.observations import gen_observation

logger = logging.getLogger(__name__)


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("observe", help="Sample full columns and partial entries of a matrix")
    parser.add_argument("--matrix", type=Path, required=True, help="Input matrix file")
    parser.add_argument("--rank", type=positive_int, help="Target rank (needed for --auto-thresholds)")
    add_budget_arguments(parser)
    parser.add_argument(
        "--mode",
        choices=[mode.value for mode in ObservationMode],
        default=ObservationMode.INDEPENDENT.value,
        help="aligned: one shared row multiset; independent: fresh rows per column",
    )
    add_seed_argument(parser)
    parser.add_argument("--out", type=Path, required=True, help="Output observation set (JSON)")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace, context: RunContext) -> int:
    manifest = start_manifest("observe", args, context)
    M = read_matrix(args.matrix)
    manifest.add_inputs([args.matrix])
    distribution = column_distribution(args.column_weights, M.shape[1])
    if args.column_weights is not None:
        manifest.add_inputs([args.column_weights])
    d, s = resolve_budget(args, M, args.rank, distribution, context.settings)

    config = CompletionConfig(
        target_rank=args.rank or 1,
        num_full_columns=d,
        entries_per_column=s,
        distribution=distribution,
        rng_seed=args.seed,
    )
    started = time.perf_counter()
    obs = gen_observation(M, config, args.mode)
    manifest.time("observe", started)

    write_observations(args.out, obs)
    manifest.add_outputs([args.out])
    manifest.write(args.out)
    logger.info(f"✅ Observed {obs.observed_entry_count()} of {obs.m * obs.n} entries (d={d}, s={s}, {obs.mode.value})")
    return 0
