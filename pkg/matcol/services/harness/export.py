"""
Experiment Export - JSON + CSV results under the results directory

Files are named <kind>_<spec hash>_seed<base seed>.{json,csv}; the hash is
the first 12 hex digits of sha256 over the spec's JSON form, so a rerun
with the same spec overwrites the same files.
"""
import csv
import hashlib
import io
import logging
from pathlib import Path

from pydantic import BaseModel

from matcol.models.experiment import ComparisonResult, SweepResult
from matcol.services.storage.files import atomic_write_text

logger = logging.getLogger(__name__)

SWEEP_COLUMNS = [
    "n", "r", "mu_r", "theorem_d", "theorem_s",
    "d_fixed_s", "minimal_d", "d_found",
    "s_fixed_d", "minimal_s", "s_found",
    "theorem_probe_successes", "trials",
]

COMPARISON_COLUMNS = [
    "r", "sigma", "d", "s", "nystrom_columns", "nystrom_rows", "nystrom_rank",
    "trial", "seed", "completion_error", "completion_relative_error", "nystrom_error",
    "mu_M", "epsilon", "bound_lhs", "bound_rhs", "bound_holds", "regularized_columns",
]


def spec_hash(spec: BaseModel) -> str:
    return hashlib.sha256(spec.model_dump_json().encode("utf-8")).hexdigest()[:12]


def result_paths(results_dir: Path, kind: str, digest: str, seed: int) -> tuple[Path, Path]:
    """(json_path, csv_path)"""
    stem = f"{kind}_{digest}_seed{seed}"
    results_dir = Path(results_dir)
    return results_dir / f"{stem}.json", results_dir / f"{stem}.csv"


def _csv_text(columns: list[str], rows: list[dict]) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buffer.getvalue()


def sweep_rows(result: SweepResult) -> list[dict]:
    """One row per (n, r) cell"""
    return [
        {
            "n": cell.n,
            "r": cell.r,
            "mu_r": repr(cell.mu_r),
            "theorem_d": cell.theorem_d,
            "theorem_s": cell.theorem_s,
            "d_fixed_s": cell.d_search.fixed_value,
            "minimal_d": "" if cell.minimal_d is None else cell.minimal_d,
            "d_found": cell.d_search.found,
            "s_fixed_d": cell.s_search.fixed_value,
            "minimal_s": "" if cell.minimal_s is None else cell.minimal_s,
            "s_found": cell.s_search.found,
            "theorem_probe_successes": cell.theorem_probe.successes,
            "trials": cell.theorem_probe.trials,
        }
        for cell in result.cells
    ]


def comparison_rows(result: ComparisonResult) -> list[dict]:
    """One row per trial"""
    rows = []
    for cell in result.cells:
        for trial in cell.trials:
            rows.append({
                "r": cell.r,
                "sigma": repr(cell.sigma),
                "d": cell.d,
                "s": cell.s,
                "nystrom_columns": cell.nystrom.num_columns,
                "nystrom_rows": cell.nystrom.num_rows,
                "nystrom_rank": cell.nystrom.target_rank,
                "trial": trial.trial,
                "seed": trial.seed,
                "completion_error": repr(trial.completion_error),
                "completion_relative_error": repr(trial.completion_relative_error),
                "nystrom_error": repr(trial.nystrom_error),
                "mu_M": repr(trial.mu_M),
                "epsilon": repr(trial.epsilon),
                "bound_lhs": repr(trial.bound_lhs),
                "bound_rhs": repr(trial.bound_rhs),
                "bound_holds": trial.bound_holds,
                "regularized_columns": trial.regularized_columns,
            })
    return rows


def write_sweep(result: SweepResult, results_dir: Path) -> tuple[Path, Path]:
    """Write the sweep; returns (json_path, csv_path)"""
    json_path, csv_path = result_paths(results_dir, "exact_recovery", result.spec_hash, result.spec.base_seed)
    atomic_write_text(json_path, result.model_dump_json(indent=2) + "\n")
    atomic_write_text(csv_path, _csv_text(SWEEP_COLUMNS, sweep_rows(result)))
    logger.info(f"💾 Sweep results written to {json_path} and {csv_path}")
    return json_path, csv_path


def write_comparison(result: ComparisonResult, results_dir: Path) -> tuple[Path, Path]:
    """Write the comparison; returns (json_path, csv_path)"""
    json_path, csv_path = result_paths(results_dir, "lowrank_compare", result.spec_hash, result.base_seed)
    atomic_write_text(json_path, result.model_dump_json(indent=2) + "\n")
    atomic_write_text(csv_path, _csv_text(COMPARISON_COLUMNS, comparison_rows(result)))
    logger.info(f"💾 Comparison results written to {json_path} and {csv_path}")
    return json_path, csv_path
