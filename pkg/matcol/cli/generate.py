"""
generate - synthetic Gaussian-factor matrices
"""
import argparse
import logging
import time
from pathlib import Path

from matcol.cli.common import RunContext, add_seed_argument, non_negative_float, positive_int, start_manifest
from matcol.models.synthetic import SyntheticSpec
from matcol.services.synthetic.generators import generate
from matcol.services.storage.matrix_io import write_matrix

logger = logging.getLogger(__name__)


def clean_path(out: Path) -> Path:
    """m.csv -> m.clean.csv"""
    return out.with_name(f"{out.stem}.clean{out.suffix}")


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("generate", help="Generate a synthetic low-rank matrix")
    parser.add_argument("--m", type=positive_int, required=True, help="Rows")
    parser.add_argument("--n", type=positive_int, required=True, help="Columns")
    parser.add_argument("--rank", type=positive_int, required=True, help="Rank of the low-rank part")
    parser.add_argument("--sigma", type=non_negative_float, default=0.0, help="Noise standard deviation (default: 0)")
    add_seed_argument(parser)
    parser.add_argument("--out", type=Path, required=True, help="Output matrix (.csv, or .mcol for binary)")
    parser.add_argument("--clean-out", type=Path, help="Clean low-rank part when sigma > 0 (default: <out>.clean)")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace, context: RunContext) -> int:
    manifest = start_manifest("generate", args, context)
    spec = SyntheticSpec(m=args.m, n=args.n, r=args.rank, sigma=args.sigma, seed=args.seed)

    started = time.perf_counter()
    M, C = generate(spec)
    manifest.time("generate", started)

    write_matrix(args.out, M)
    outputs = [args.out]
    if spec.sigma > 0.0:
        clean_out = args.clean_out or clean_path(args.out)
        write_matrix(clean_out, C)
        outputs.append(clean_out)
    manifest.add_outputs(outputs)
    manifest.write(args.out)
    logger.info(f"✅ Generated {spec.m}x{spec.n} rank-{spec.r} matrix (sigma={spec.sigma})")
    return 0
