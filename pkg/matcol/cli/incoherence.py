"""
incoherence - coherence diagnostics of a matrix

Prints one `name = value` line per measure; --out also writes the profile
as JSON. Without --out the manifest goes next to the input as
<matrix>.incoherence.manifest.json.
"""
import argparse
import logging
import time
from pathlib import Path

from matcol.cli.common import RunContext, positive_int, start_manifest
from matcol.services.incoherence.coherence import coherence_profile
from matcol.services.storage.files import atomic_write_text
from matcol.services.storage.matrix_io import read_matrix

logger = logging.getLogger(__name__)


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("incoherence", help="Compute mu(r), mu_hat, mu(M) and optionally mu(x) per column")
    parser.add_argument("--matrix", type=Path, required=True, help="Input matrix file")
    parser.add_argument("--rank", type=positive_int, required=True, help="Rank r for mu(r)")
    parser.add_argument("--per-vector", action="store_true", help="Also report mu(x) for every nonzero column")
    parser.add_argument("--out", type=Path, help="Write the profile as JSON")
    parser.set_defaults(handler=run, seed=0)


def run(args: argparse.Namespace, context: RunContext) -> int:
    manifest = start_manifest("incoherence", args, context)
    M = read_matrix(args.matrix)
    manifest.add_inputs([args.matrix])

    started = time.perf_counter()
    profile = coherence_profile(M, args.rank, per_vector=args.per_vector)
    manifest.time("incoherence", started)

    print(f"mu_r = {profile.mu_r!r}")
    print(f"mu_r_left = {profile.mu_r_left!r}")
    print(f"mu_r_right = {profile.mu_r_right!r}")
    print(f"mu_hat = {profile.mu_hat!r}")
    print(f"mu_M = {profile.mu_M!r}")
    if profile.per_vector is not None:
        for column, value in profile.per_vector.items():
            print(f"mu_x[{column}] = {value!r}")

    if args.out is not None:
        atomic_write_text(args.out, profile.model_dump_json(indent=2) + "\n")
        manifest.add_outputs([args.out])
        manifest.write(args.out)
    else:
        manifest.write(args.matrix.with_name(f"{args.matrix.name}.incoherence"))
    return 0
