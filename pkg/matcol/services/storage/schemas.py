"""
JSON Schemas - machine-readable layouts of every JSON file matcol writes
"""
import json
import logging
from pathlib import Path

from pydantic import BaseModel

from matcol.models.coherence import CoherenceProfile
from matcol.models.completion import CompletionReport
from matcol.models.experiment import ComparisonResult, SweepResult
from matcol.models.manifest import RunManifest
from matcol.models.observation import ObservationSet
from matcol.services.storage.files import atomic_write_text

logger = logging.getLogger(__name__)

SCHEMA_MODELS: dict[str, type[BaseModel]] = {
    "observation_set": ObservationSet,
    "completion_report": CompletionReport,
    "coherence_profile": CoherenceProfile,
    "run_manifest": RunManifest,
    "exact_recovery_result": SweepResult,
    "lowrank_compare_result": ComparisonResult,
}

# fields a model carries in memory but its file leaves out
EXCLUDED_FIELDS: dict[str, tuple[str, ...]] = {
    "completion_report": ("recovered",),
}


def schema_for(name: str) -> dict:
    """Schema of one file kind, minus the fields its writer excludes"""
    schema = SCHEMA_MODELS[name].model_json_schema()
    for field in EXCLUDED_FIELDS.get(name, ()):
        schema["properties"].pop(field, None)
        if field in schema.get("required", []):
            schema["required"].remove(field)
    return schema


def schema_path(directory: Path, name: str) -> Path:
    return Path(directory) / f"{name}.schema.json"


def write_schemas(directory: Path) -> list[Path]:
    """Write one <name>.schema.json per file kind"""
    paths = []
    for name in SCHEMA_MODELS:
        path = schema_path(directory, name)
        atomic_write_text(path, json.dumps(schema_for(name), indent=2) + "\n")
        paths.append(path)
    logger.info(f"💾 Wrote {len(paths)} schemas to {directory}")
    return paths
