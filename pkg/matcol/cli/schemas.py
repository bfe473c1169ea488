"""
schemas - write the JSON Schemas of every JSON file format
"""
import argparse
import time
from pathlib import Path

from matcol.cli.common import RunContext, start_manifest
from matcol.services.storage.schemas import write_schemas


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("schemas", help="Write JSON Schemas for observation, report, manifest and result files")
    parser.add_argument("--out", type=Path, required=True, help="Output directory")
    parser.set_defaults(handler=run, seed=0)


def run(args: argparse.Namespace, context: RunContext) -> int:
    manifest = start_manifest("schemas", args, context)
    started = time.perf_counter()
    paths = write_schemas(args.out)
    manifest.time("schemas", started)
    manifest.add_outputs(paths)
    manifest.write(args.out)
    return 0
