"""
Tests for the command-line front door: exit codes, outputs, determinism
"""
import json
from pathlib import Path

import numpy as np
import pytest

from matcol.main import main
from matcol.services.storage.files import file_digest
from matcol.services.storage.matrix_io import read_matrix, write_matrix

pytestmark = pytest.mark.unit


@pytest.fixture(autouse=True)
def cli_settings(override_get_settings):
    """Every CLI test runs against the test settings"""
    return override_get_settings


def _generate(tmp_path: Path, name: str = "m.csv", *extra: str) -> Path:
    out = tmp_path / name
    code = main(["generate", "--m", "40", "--n", "40", "--rank", "2", "--seed", "1", "--out", str(out), *extra])
    assert code == 0
    return out


# ============================================================================
# GENERATE
# ============================================================================

def test_generate_writes_matrix_and_manifest(tmp_path):
    """Rank-2 CSV plus one manifest"""
    out = _generate(tmp_path)
    M = read_matrix(out)
    assert M.shape == (40, 40)
    sigma = np.linalg.svd(M, compute_uv=False)
    assert np.sum(sigma > 1e-9 * sigma[0]) == 2

    manifest = json.loads((tmp_path / "m.csv.manifest.json").read_text())
    assert manifest["command"] == "generate"
    assert manifest["seed"] == 1
    assert manifest["outputs"] == {str(out): file_digest(out)}


def test_generate_noisy_writes_clean_part(tmp_path):
    out = _generate(tmp_path, "noisy.csv", "--sigma", "0.5")
    assert (tmp_path / "noisy.clean.csv").exists()
    assert not np.array_equal(read_matrix(out), read_matrix(tmp_path / "noisy.clean.csv"))


def test_generate_deterministic(tmp_path):
    """Same flags, byte-identical output"""
    first = _generate(tmp_path, "a.csv")
    second = _generate(tmp_path, "b.csv")
    assert file_digest(first) == file_digest(second)


def test_generate_negative_sigma_is_usage_error(tmp_path, capsys):
    """Exit 2 naming the flag"""
    code = main(["generate", "--m", "4", "--n", "4", "--rank", "1", "--sigma", "-1", "--out", str(tmp_path / "x.csv")])
    assert code == 2
    assert "--sigma" in capsys.readouterr().err


def test_generate_rank_above_size_is_validation_error(tmp_path):
    code = main(["generate", "--m", "4", "--n", "4", "--rank", "5", "--out", str(tmp_path / "x.csv")])
    assert code == 2


# ============================================================================
# OBSERVE + COMPLETE
# ============================================================================

def test_complete_from_matrix(tmp_path):
    """Explicit d and s recover a rank-2 matrix; report excludes the matrix"""
    matrix = _generate(tmp_path)
    out = tmp_path / "m_hat.csv"
    code = main(["complete", "--matrix", str(matrix), "--rank", "2", "--d", "10", "--s", "12", "--out", str(out)])
    assert code == 0
    report = json.loads((tmp_path / "m_hat.report.json").read_text())
    assert "recovered" not in report
    assert report["effective_rank"] == 2
    assert report["relative_frobenius_error"] <= 1e-8
    assert np.allclose(read_matrix(out), read_matrix(matrix), atol=1e-8 * np.abs(read_matrix(matrix)).max())
    assert (tmp_path / "m_hat.csv.manifest.json").exists()


def test_complete_auto_thresholds(tmp_path):
    """Theorem thresholds (d clamped to n) give exact recovery"""
    matrix = _generate(tmp_path)
    out = tmp_path / "auto.csv"
    code = main(["complete", "--matrix", str(matrix), "--rank", "2", "--auto-thresholds", "--delta", "0.1", "--out", str(out)])
    assert code == 0
    report = json.loads((tmp_path / "auto.report.json").read_text())
    assert report["relative_frobenius_error"] <= 1e-8


def test_observe_then_complete_matches_in_memory(tmp_path):
    """Completing a saved observation set gives the same M_hat as the direct pipeline"""
    matrix = _generate(tmp_path)
    obs = tmp_path / "obs.json"
    assert main(["observe", "--matrix", str(matrix), "--d", "9", "--s", "11", "--seed", "4", "--out", str(obs)]) == 0

    via_file = tmp_path / "via_file.csv"
    direct = tmp_path / "direct.csv"
    assert main(["complete", "--observations", str(obs), "--rank", "2", "--out", str(via_file)]) == 0
    assert main([
        "complete", "--matrix", str(matrix), "--rank", "2", "--d", "9", "--s", "11", "--seed", "4", "--out", str(direct),
    ]) == 0
    assert np.array_equal(read_matrix(via_file), read_matrix(direct))


def test_observe_modes(tmp_path):
    """Aligned files hold one shared row set, independent files one per column"""
    matrix = _generate(tmp_path)
    aligned = tmp_path / "aligned.json"
    independent = tmp_path / "independent.json"
    base = ["observe", "--matrix", str(matrix), "--d", "5", "--s", "6"]
    assert main([*base, "--mode", "aligned", "--out", str(aligned)]) == 0
    assert main([*base, "--mode", "independent", "--out", str(independent)]) == 0

    aligned_data = json.loads(aligned.read_text())
    assert len(aligned_data["shared_rows"]) == 6
    independent_data = json.loads(independent.read_text())
    assert independent_data["shared_rows"] is None
    assert all(len(c["rows"]) == 6 for c in independent_data["partial_columns"])


def test_complete_with_column_weights(tmp_path):
    """Non-uniform sampling from a weights file"""
    matrix = _generate(tmp_path)
    weights = tmp_path / "w.csv"
    write_matrix(weights, np.linspace(1.0, 3.0, 40).reshape(-1, 1))
    out = tmp_path / "weighted.csv"
    code = main([
        "complete", "--matrix", str(matrix), "--rank", "2", "--d", "12", "--s", "12",
        "--column-weights", str(weights), "--out", str(out),
    ])
    assert code == 0
    assert json.loads((tmp_path / "weighted.report.json").read_text())["relative_frobenius_error"] <= 1e-8


def test_complete_zero_d_is_usage_error(tmp_path):
    matrix = _generate(tmp_path)
    code = main(["complete", "--matrix", str(matrix), "--rank", "2", "--d", "0", "--s", "5", "--out", str(tmp_path / "o.csv")])
    assert code == 2


def test_complete_missing_budget_is_usage_error(tmp_path):
    matrix = _generate(tmp_path)
    assert main(["complete", "--matrix", str(matrix), "--rank", "2", "--out", str(tmp_path / "o.csv")]) == 2


def test_complete_malformed_input_reports_position(tmp_path, capsys):
    """Exit 2 with line and column of the first parse failure"""
    bad = tmp_path / "bad.csv"
    bad.write_text("1,2\n3,oops\n")
    code = main(["complete", "--matrix", str(bad), "--rank", "1", "--d", "1", "--s", "1", "--out", str(tmp_path / "o.csv")])
    assert code == 2
    assert "line 2, column 2" in capsys.readouterr().err


def _singular_observation_file(tmp_path: Path) -> Path:
    """Rank-2 instance where column 3 is observed only on row 4"""
    rng = np.random.default_rng(4)
    M = rng.standard_normal((6, 2)) @ rng.standard_normal((2, 5))
    partial = [
        {"index": j, "rows": [4, 4, 4] if j == 3 else [0, 1, 2], "values": [float(M[r, j]) for r in ([4, 4, 4] if j == 3 else [0, 1, 2])]}
        for j in range(2, 5)
    ]
    data = {
        "m": 6, "n": 5, "d": 2, "s": 3, "mode": "independent", "probs": None, "draws": [0, 1], "shared_rows": None,
        "full_columns": [{"index": j, "values": M[:, j].tolist()} for j in (0, 1)],
        "partial_columns": partial,
    }
    path = tmp_path / "singular.json"
    path.write_text(json.dumps(data))
    return path


def test_complete_singular_exit_code(tmp_path):
    """Exit 3 without --regularize, 0 with it"""
    obs = _singular_observation_file(tmp_path)
    out = tmp_path / "o.csv"
    assert main(["complete", "--observations", str(obs), "--rank", "2", "--out", str(out)]) == 3
    assert main(["complete", "--observations", str(obs), "--rank", "2", "--regularize", "--out", str(out)]) == 0
    report = json.loads((tmp_path / "o.report.json").read_text())
    assert report["regularized_columns"] == [3]


def _observed(tmp_path: Path) -> Path:
    matrix = _generate(tmp_path)
    obs = tmp_path / "obs.json"
    assert main(["observe", "--matrix", str(matrix), "--d", "5", "--s", "6", "--out", str(obs)]) == 0
    return obs


def _complete_observations(tmp_path: Path, obs: Path) -> int:
    return main(["complete", "--observations", str(obs), "--rank", "2", "--out", str(tmp_path / "o.csv")])


def test_complete_non_utf8_observations(tmp_path, capsys):
    """Undecodable bytes are a parse error with a position, not a crash"""
    obs = _observed(tmp_path)
    obs.write_bytes(b"\xff\xfe" + obs.read_bytes())
    assert _complete_observations(tmp_path, obs) == 2
    err = capsys.readouterr().err
    assert "line 1, column 1" in err
    assert "Traceback" not in err


def test_complete_observations_with_object_values(tmp_path, capsys):
    """A JSON object where numbers belong is rejected with exit 2"""
    obs = _observed(tmp_path)
    data = json.loads(obs.read_text())
    data["partial_columns"][0]["values"] = {"a": 1}
    obs.write_text(json.dumps(data))
    assert _complete_observations(tmp_path, obs) == 2
    err = capsys.readouterr().err
    assert "partial_columns.0.values" in err
    assert "Traceback" not in err


def test_complete_observations_with_fractional_rows(tmp_path, capsys):
    """Row indices like 0.7 are rejected, not truncated"""
    obs = _observed(tmp_path)
    data = json.loads(obs.read_text())
    rows = data["partial_columns"][0]["rows"]
    data["partial_columns"][0]["rows"] = [0.7] + rows[1:]
    obs.write_text(json.dumps(data))
    assert _complete_observations(tmp_path, obs) == 2
    assert "partial_columns.0.rows" in capsys.readouterr().err


# ============================================================================
# INCOHERENCE
# ============================================================================

def test_incoherence_identity(tmp_path, capsys):
    """Identity with r = n prints mu(r) = 1"""
    matrix = tmp_path / "eye.csv"
    write_matrix(matrix, np.eye(5))
    assert main(["incoherence", "--matrix", str(matrix), "--rank", "5"]) == 0
    lines = dict(line.split(" = ") for line in capsys.readouterr().out.splitlines())
    assert float(lines["mu_r"]) == pytest.approx(1.0)
    assert (tmp_path / "eye.csv.incoherence.manifest.json").exists()


def test_incoherence_spike_json(tmp_path):
    """Single nonzero column gives mu(M) = n"""
    spike = np.zeros((4, 6))
    spike[:, 2] = [1.0, 2.0, 3.0, 4.0]
    matrix = tmp_path / "spike.csv"
    write_matrix(matrix, spike)
    out = tmp_path / "profile.json"
    assert main(["incoherence", "--matrix", str(matrix), "--rank", "1", "--per-vector", "--out", str(out)]) == 0
    profile = json.loads(out.read_text())
    assert profile["mu_M"] == pytest.approx(6.0)
    assert list(profile["per_vector"]) == ["2"]


# ============================================================================
# EXPERIMENT
# ============================================================================

def test_experiment_exact_recovery(tmp_path):
    """JSON, CSV and manifest named by spec hash and seed"""
    results = tmp_path / "results"
    code = main([
        "--jobs", "1", "experiment", "exact-recovery",
        "--sizes", "20", "--ranks", "1", "--trials", "2", "--seed", "7", "--results-dir", str(results),
    ])
    assert code == 0
    json_files = sorted(results.glob("exact_recovery_*_seed7.json"))
    assert len(json_files) == 1
    data = json.loads(json_files[0].read_text())
    search = data["cells"][0]["d_search"]
    assert search["minimal"] == 1
    assert search["certificate_success"] == 1
    assert len(list(results.glob("exact_recovery_*_seed7.csv"))) == 1
    assert len(list(results.glob("*.manifest.json"))) == 1


def test_experiment_empty_sizes_is_usage_error(tmp_path):
    code = main(["experiment", "exact-recovery", "--sizes", "--ranks", "2", "--results-dir", str(tmp_path)])
    assert code == 2


def test_experiment_config_file_lists_violations(tmp_path, capsys):
    """Every schema violation is reported"""
    config = tmp_path / "sweep.json"
    config.write_text(json.dumps({"sizes": [], "ranks": [], "trials": 0}))
    code = main(["experiment", "exact-recovery", "--config", str(config), "--results-dir", str(tmp_path)])
    assert code == 2
    err = capsys.readouterr().err
    for field in ("sizes", "ranks", "trials"):
        assert field in err


def test_experiment_lowrank_compare_from_config(tmp_path):
    """Config file parameters with a flag override"""
    config = tmp_path / "compare.json"
    config.write_text(json.dumps({"n": 30, "ranks": [2], "sigmas": [0.1], "budgets": [8], "trials": 3}))
    results = tmp_path / "results"
    code = main([
        "--jobs", "1", "experiment", "lowrank-compare", "--config", str(config), "--trials", "2",
        "--results-dir", str(results),
    ])
    assert code == 0
    data = json.loads(next(results.glob("lowrank_compare_*_seed0.json")).read_text())
    assert data["trials"] == 2
    assert data["cells"][0]["nystrom_mean"] > 0.0
    csv_lines = next(results.glob("lowrank_compare_*_seed0.csv")).read_text().splitlines()
    assert "completion_error" in csv_lines[0] and "nystrom_error" in csv_lines[0]
    assert len(csv_lines) == 3


def test_schemas_command(tmp_path):
    """One schema per JSON file kind plus a manifest beside the directory"""
    out = tmp_path / "schemas"
    assert main(["schemas", "--out", str(out)]) == 0
    assert sorted(p.name for p in out.iterdir()) == [
        "coherence_profile.schema.json",
        "completion_report.schema.json",
        "exact_recovery_result.schema.json",
        "lowrank_compare_result.schema.json",
        "observation_set.schema.json",
        "run_manifest.schema.json",
    ]
    manifest = json.loads((tmp_path / "schemas.manifest.json").read_text())
    assert manifest["command"] == "schemas"
    assert len(manifest["outputs"]) == 6
    assert json.loads((out / "run_manifest.schema.json").read_text())["title"] == "RunManifest"


def test_bad_jobs_flag(tmp_path):
    assert main(["--jobs", "0", "incoherence", "--matrix", str(tmp_path / "x.csv"), "--rank", "1"]) == 2
