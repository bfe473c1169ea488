"""
Tests for matrix and observation file formats, atomic writes and manifests
"""
import json
from pathlib import Path

import numpy as np
import pytest
from pydantic import ValidationError

from matcol.core.exceptions import MatrixParseError
from matcol.models.completion import CompletionConfig
from matcol.models.manifest import RunManifest
from matcol.models.observation import ObservationMode, PartialColumn
from matcol.models.sampling import ColumnSamplingDistribution
from matcol.services.storage.files import atomic_write_text, file_digest
from matcol.services.storage.manifest import ManifestRecorder, manifest_path
from matcol.services.storage.matrix_io import (
    BINARY_MAGIC,
    decode_binary,
    encode_binary,
    format_csv,
    parse_csv,
    read_matrix,
    read_vector,
    write_matrix,
)
from matcol.services.storage.observation_io import read_observations, write_observations
from matcol.services.storage.schemas import SCHEMA_MODELS, schema_for, schema_path, write_schemas
from matcol.services.synthetic.observations import gen_observation

pytestmark = pytest.mark.unit


# ============================================================================
# MATRICES
# ============================================================================

def test_csv_is_exact(tmp_path, rng):
    """17 significant digits reproduce every float64"""
    M = rng.standard_normal((7, 5)) * 10.0 ** rng.integers(-8, 8, size=(7, 5))
    path = tmp_path / "m.csv"
    write_matrix(path, M)
    assert np.array_equal(read_matrix(path), M)
    assert len(path.read_text().splitlines()) == 7


def test_binary_layout(tmp_path):
    """Magic, dims, then row-major little-endian float64"""
    M = np.array([[1.0, 2.0, 3.0], [4.0, 5.0, 6.0]])
    data = encode_binary(M)
    assert data.startswith(BINARY_MAGIC)
    assert len(data) == 5 + 16 + 6 * 8
    assert np.frombuffer(data[21:], dtype="<f8").tolist() == [1.0, 2.0, 3.0, 4.0, 5.0, 6.0]

    path = tmp_path / "m.mcol"
    write_matrix(path, M)
    assert path.read_bytes() == data
    assert np.array_equal(read_matrix(path), M)


def test_binary_truncated():
    data = encode_binary(np.ones((2, 2)))
    with pytest.raises(MatrixParseError):
        decode_binary(data[:-3])
    with pytest.raises(MatrixParseError):
        decode_binary(data[:4])


def test_csv_parse_error_position():
    """The first bad entry is located by 1-based line and column"""
    with pytest.raises(MatrixParseError) as exc_info:
        parse_csv("1,2,3\n4,x,6\n", path="bad.csv")
    assert (exc_info.value.line, exc_info.value.column) == (2, 2)
    assert "line 2, column 2" in exc_info.value.message


def test_csv_ragged_and_non_finite():
    with pytest.raises(MatrixParseError) as exc_info:
        parse_csv("1,2\n3\n")
    assert exc_info.value.line == 2
    with pytest.raises(MatrixParseError):
        parse_csv("1,nan\n")
    with pytest.raises(MatrixParseError):
        parse_csv("\n\n")


def test_missing_file(tmp_path):
    with pytest.raises(MatrixParseError):
        read_matrix(tmp_path / "absent.csv")


def test_format_csv_one_row_per_line():
    assert format_csv(np.array([[0.5, 1.0], [2.0, 3.0]])).splitlines() == ["0.5,1", "2,3"]


def test_read_vector(tmp_path):
    """Single row or single column"""
    path = tmp_path / "w.csv"
    path.write_text("1\n2\n3\n")
    assert read_vector(path).tolist() == [1.0, 2.0, 3.0]
    path.write_text("1,2\n3,4\n")
    with pytest.raises(MatrixParseError):
        read_vector(path)


# ============================================================================
# OBSERVATION SETS
# ============================================================================

@pytest.mark.parametrize("mode", [ObservationMode.ALIGNED, ObservationMode.INDEPENDENT])
def test_observation_round_trip(tmp_path, lowrank_matrix, mode):
    """Reload gives an identical observation set, multiplicities included"""
    config = CompletionConfig.uniform(40, target_rank=3, d=9, s=70, rng_seed=4)
    obs = gen_observation(lowrank_matrix, config, mode)
    path = tmp_path / "obs.json"
    write_observations(path, obs)
    loaded = read_observations(path)
    assert loaded.model_dump_json() == obs.model_dump_json()
    assert np.array_equal(loaded.draws, obs.draws)


def test_observation_file_layout(tmp_path, lowrank_matrix):
    """Aligned files list one shared row set; non-uniform runs keep their probabilities"""
    dist = ColumnSamplingDistribution.from_weights(np.arange(1.0, 41.0))
    config = CompletionConfig(target_rank=3, num_full_columns=5, entries_per_column=6, distribution=dist, rng_seed=2)
    path = tmp_path / "obs.json"
    write_observations(path, gen_observation(lowrank_matrix, config, "aligned"))
    data = json.loads(path.read_text())
    assert data["mode"] == "aligned"
    assert len(data["shared_rows"]) == 6
    assert all(column["rows"] is None for column in data["partial_columns"])
    assert data["probs"] == pytest.approx(dist.probs.tolist())


def test_observation_parse_errors(tmp_path):
    """Malformed JSON reports line and column; schema errors are parse errors too"""
    path = tmp_path / "obs.json"
    path.write_text('{\n  "m": 3,\n  "n": oops\n}\n')
    with pytest.raises(MatrixParseError) as exc_info:
        read_observations(path)
    assert exc_info.value.line == 3

    path.write_text(json.dumps({"m": 3, "n": 2}))
    with pytest.raises(MatrixParseError):
        read_observations(path)


def test_non_utf8_observation_file(tmp_path):
    """Undecodable bytes are located on their line"""
    path = tmp_path / "obs.json"
    path.write_bytes(b"{\n  \"m\": \xff\n}\n")
    with pytest.raises(MatrixParseError) as exc_info:
        read_observations(path)
    assert (exc_info.value.line, exc_info.value.column) == (2, 8)


def test_index_fields_reject_fractions():
    """Integral floats are accepted as indices, fractional ones and objects are not"""
    assert PartialColumn(index=0, rows=[1.0, 2.0], values=[0.5, 0.5]).rows.tolist() == [1, 2]
    with pytest.raises(ValidationError):
        PartialColumn(index=0, rows=[0.7, 2], values=[0.5, 0.5])
    with pytest.raises(ValidationError):
        PartialColumn(index=0, rows=[1, 2], values={"a": 1})
    with pytest.raises(ValidationError):
        PartialColumn(index=0, rows={"a": 1}, values=[0.5, 0.5])


# ============================================================================
# SCHEMAS
# ============================================================================

SHIPPED_SCHEMAS = Path(__file__).resolve().parents[1] / "docs" / "schemas"


@pytest.mark.parametrize("name", sorted(SCHEMA_MODELS))
def test_shipped_schema_matches_models(name):
    """docs/schemas lists the same fields the models generate"""
    generated = schema_for(name)
    shipped = json.loads(schema_path(SHIPPED_SCHEMAS, name).read_text())
    assert shipped["title"] == generated["title"]
    assert set(shipped["properties"]) == set(generated["properties"])
    assert set(shipped.get("required", [])) == set(generated.get("required", []))
    assert set(shipped.get("$defs", {})) == set(generated.get("$defs", {}))
    for key, definition in generated.get("$defs", {}).items():
        if "properties" in definition:
            assert set(shipped["$defs"][key]["properties"]) == set(definition["properties"]), key


def test_report_schema_leaves_out_recovered_matrix():
    schema = schema_for("completion_report")
    assert "recovered" not in schema["properties"]
    assert "recovered" not in schema["required"]
    assert "per_column_min_eigenvalue" in schema["required"]


def test_write_schemas(tmp_path):
    paths = write_schemas(tmp_path / "schemas")
    assert sorted(p.name for p in paths) == sorted(f"{name}.schema.json" for name in SCHEMA_MODELS)
    observation = json.loads(schema_path(tmp_path / "schemas", "observation_set").read_text())
    assert observation["properties"]["draws"]["items"] == {"type": "integer"}


# ============================================================================
# FILES AND MANIFESTS
# ============================================================================

def test_atomic_write_leaves_no_temp(tmp_path):
    path = tmp_path / "nested" / "out.txt"
    atomic_write_text(path, "hello")
    assert path.read_text() == "hello"
    assert sorted(p.name for p in path.parent.iterdir()) == ["out.txt"]


def test_manifest_records_digests(tmp_path):
    """Manifest sits next to the primary output and hashes inputs and outputs"""
    source = tmp_path / "in.csv"
    source.write_text("1,2\n")
    output = tmp_path / "out.csv"
    output.write_text("3,4\n")

    recorder = ManifestRecorder("generate", {"flags": {"m": 1}}, seed=5)
    recorder.add_inputs([source])
    recorder.add_outputs([output])
    path = recorder.write(output)

    assert path == manifest_path(output) == tmp_path / "out.csv.manifest.json"
    manifest = RunManifest.model_validate_json(path.read_text())
    assert manifest.command == "generate"
    assert manifest.seed == 5
    assert manifest.inputs == {str(source): file_digest(source)}
    assert manifest.outputs == {str(output): file_digest(output)}
    assert "total" in manifest.timings
