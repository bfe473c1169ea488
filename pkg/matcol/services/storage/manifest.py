"""
Run Manifests - one JSON record per CLI run, written next to the primary output
"""
import logging
import time
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Iterable

from matcol import __version__
from matcol.models.manifest import RunManifest
from matcol.services.storage.files import atomic_write_text, file_digest

logger = logging.getLogger(__name__)


def manifest_path(primary_output: Path) -> Path:
    """<output>.manifest.json"""
    primary_output = Path(primary_output)
    return primary_output.with_name(primary_output.name + ".manifest.json")


class ManifestRecorder:
    """Collects timings and file digests while a command runs"""

    def __init__(self, command: str, config: dict[str, Any], seed: int):
        self.command = command
        self.config = config
        self.seed = seed
        self.started_at = datetime.now(timezone.utc)
        self._clock = time.perf_counter()
        self.timings: dict[str, float] = {}
        self._inputs: list[Path] = []
        self._outputs: list[Path] = []

    def time(self, label: str, started: float) -> None:
        """Record wall-clock seconds since `started` (a perf_counter value)"""
        self.timings[label] = time.perf_counter() - started

    def add_inputs(self, paths: Iterable[Path]) -> None:
        self._inputs.extend(Path(p) for p in paths)

    def add_outputs(self, paths: Iterable[Path]) -> None:
        self._outputs.extend(Path(p) for p in paths)

    def build(self) -> RunManifest:
        self.timings["total"] = time.perf_counter() - self._clock
        return RunManifest(
            command=self.command,
            config=self.config,
            seed=self.seed,
            version=__version__,
            started_at=self.started_at,
            inputs={str(p): file_digest(p) for p in self._inputs},
            outputs={str(p): file_digest(p) for p in self._outputs},
            timings=self.timings,
        )

    def write(self, primary_output: Path) -> Path:
        """Write the manifest beside the primary output"""
        path = manifest_path(primary_output)
        atomic_write_text(path, self.build().model_dump_json(indent=2) + "\n")
        logger.info(f"🧾 Manifest written to {path}")
        return path
