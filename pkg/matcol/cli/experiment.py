"""
experiment - exact-recovery sweep and equal-budget Nystrom comparison

Parameters come from flags, a JSON config file (--config), or both; flags
given on the command line override the file, and harness settings fill
whatever neither sets.
"""
import argparse
import json
import logging
import time
from pathlib import Path
from typing import Any

from matcol.cli.common import RunContext, args_config, non_negative_float, non_negative_int, positive_float, positive_int, probability
from matcol.core.exceptions import ConfigurationError
from matcol.models.experiment import ComparisonSpec, SweepSpec
from matcol.models.observation import ObservationMode
from matcol.services.harness.comparison_service import run_comparisons
from matcol.services.harness.export import write_comparison, write_sweep
from matcol.services.harness.sweep_service import run_sweep
from matcol.services.storage.manifest import ManifestRecorder

logger = logging.getLogger(__name__)

# flag dest -> spec field
SWEEP_FLAGS = {
    "sizes": "sizes",
    "ranks": "ranks",
    "trials": "trials",
    "success_threshold": "success_threshold",
    "delta": "delta",
    "multiplier": "fixed_multiplier",
    "mode": "mode",
    "seed": "base_seed",
}

COMPARISON_FLAGS = {
    "n": "n",
    "ranks": "ranks",
    "sigmas": "sigmas",
    "budgets": "budgets",
    "trials": "trials",
    "delta": "delta",
    "seed": "base_seed",
}


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("experiment", help="Run an experiment protocol")
    kinds = parser.add_subparsers(dest="kind", required=True)

    sweep = kinds.add_parser("exact-recovery", help="Minimal d and s over a grid of sizes and ranks")
    sweep.add_argument("--sizes", type=positive_int, nargs="*", help="Square sizes n (m = n)")
    sweep.add_argument("--ranks", type=positive_int, nargs="*", help="Ranks r")
    sweep.add_argument("--trials", type=positive_int, help="Trials per searched value")
    sweep.add_argument("--success-threshold", type=positive_float, help="Relative error counted as exact")
    sweep.add_argument("--delta", type=probability, help="Failure probability for the thresholds")
    sweep.add_argument("--multiplier", type=positive_float, help="Fixed parameter = multiplier x its threshold")
    sweep.add_argument("--mode", choices=[mode.value for mode in ObservationMode], help="Observation model")
    _add_common(sweep)
    sweep.set_defaults(handler=run_exact_recovery)

    compare = kinds.add_parser("lowrank-compare", help="Completion vs budget-matched Nystrom on noisy matrices")
    compare.add_argument("--n", type=positive_int, help="Square size")
    compare.add_argument("--rank", dest="ranks", type=positive_int, nargs="*", help="Ranks r")
    compare.add_argument("--sigma", dest="sigmas", type=non_negative_float, nargs="*", help="Noise levels")
    compare.add_argument("--budgets", type=positive_int, nargs="*", help="d values with s = d (default 2r..10r)")
    compare.add_argument("--trials", type=positive_int, help="Trials per budget")
    compare.add_argument("--delta", type=probability, help="Failure probability in the additive bound")
    _add_common(compare)
    compare.set_defaults(handler=run_lowrank_compare)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=non_negative_int, help="Base seed (default: 0)")
    parser.add_argument("--config", type=Path, help="JSON file with the experiment parameters")
    parser.add_argument("--results-dir", type=Path, help="Output directory (default: settings.storage.results_dir)")


def load_config_file(path: Path) -> dict[str, Any]:
    """Experiment parameters from JSON; must be an object"""
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as e:
        raise ConfigurationError(f"Cannot read config file {path}", details=e.strerror) from e
    except json.JSONDecodeError as e:
        raise ConfigurationError(
            f"Malformed config file {path}",
            details=f"line {e.lineno}, column {e.colno}: {e.msg}",
        ) from e
    if not isinstance(data, dict):
        raise ConfigurationError(f"Malformed config file {path}", details="expected a JSON object")
    return data


def merge_parameters(args: argparse.Namespace, flags: dict[str, str], defaults: dict[str, Any]) -> dict[str, Any]:
    """defaults < config file < explicit flags"""
    merged = dict(defaults)
    if args.config is not None:
        merged.update(load_config_file(args.config))
    for dest, field in flags.items():
        value = getattr(args, dest, None)
        if value is not None:
            merged[field] = value
    return merged


def _results_dir(args: argparse.Namespace, context: RunContext) -> Path:
    storage = context.settings.storage
    if args.results_dir is not None:
        storage = storage.model_copy(update={"results_dir": args.results_dir})
    storage.ensure_directories()
    return storage.results_dir


def run_exact_recovery(args: argparse.Namespace, context: RunContext) -> int:
    harness = context.settings.harness
    spec = SweepSpec.model_validate(
        merge_parameters(
            args,
            SWEEP_FLAGS,
            {
                "trials": harness.trials,
                "success_threshold": harness.success_threshold,
                "fixed_multiplier": harness.fixed_multiplier,
                "theorem_constant": harness.theorem_constant,
                "delta": context.settings.completion.delta,
            },
        )
    )
    results_dir = _results_dir(args, context)
    manifest = ManifestRecorder("experiment exact-recovery", args_config(args, context.settings), spec.base_seed)
    manifest.config["spec"] = spec.model_dump(mode="json")
    if args.config is not None:
        manifest.add_inputs([args.config])

    started = time.perf_counter()
    result = run_sweep(spec, jobs=context.jobs)
    manifest.time("sweep", started)

    json_path, csv_path = write_sweep(result, results_dir)
    manifest.add_outputs([json_path, csv_path])
    manifest.write(json_path)
    for cell in result.cells:
        logger.info(f"✅ n={cell.n} r={cell.r}: minimal d={cell.minimal_d}, minimal s={cell.minimal_s}")
    return 0


def run_lowrank_compare(args: argparse.Namespace, context: RunContext) -> int:
    spec = ComparisonSpec.model_validate(
        merge_parameters(
            args,
            COMPARISON_FLAGS,
            {"trials": context.settings.harness.trials, "delta": context.settings.completion.delta},
        )
    )
    results_dir = _results_dir(args, context)
    manifest = ManifestRecorder("experiment lowrank-compare", args_config(args, context.settings), spec.base_seed)
    manifest.config["spec"] = spec.model_dump(mode="json")
    if args.config is not None:
        manifest.add_inputs([args.config])

    started = time.perf_counter()
    result = run_comparisons(spec, jobs=context.jobs, settings=context.settings)
    manifest.time("comparison", started)

    json_path, csv_path = write_comparison(result, results_dir)
    manifest.add_outputs([json_path, csv_path])
    manifest.write(json_path)
    for cell in result.cells:
        verdict = "completion" if cell.completion_mean < cell.nystrom_mean else "Nystrom"
        logger.info(
            f"✅ r={cell.r} sigma={cell.sigma} d=s={cell.d}: completion {cell.completion_mean:.4g}, "
            f"Nystrom {cell.nystrom_mean:.4g} ({verdict} lower)"
        )
    return 0
