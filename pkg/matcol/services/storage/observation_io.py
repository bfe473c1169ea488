"""
Observation File Format - ObservationSet as JSON

    {m, n, d, s, mode, probs, draws, shared_rows,
     full_columns: [{index, values}], partial_columns: [{index, rows, values}]}

Row multisets keep their multiplicity. Floats are written with Python's
shortest round-trip repr, so a reload reproduces every value exactly.
"""
import json
import logging
from pathlib import Path

import pydantic

from matcol.core.exceptions import MatrixParseError
from matcol.models.observation import ObservationSet
from matcol.services.storage.files import atomic_write_text

logger = logging.getLogger(__name__)


def write_observations(path: Path, obs: ObservationSet) -> None:
    """Write an observation set atomically"""
    atomic_write_text(Path(path), obs.model_dump_json() + "\n")
    logger.info(
        f"💾 Wrote observations ({obs.mode.value}, {len(obs.full_columns)} full / "
        f"{len(obs.partial_columns)} partial columns) to {path}"
    )


def read_observations(path: Path) -> ObservationSet:
    """
    Read an observation set

    Raises:
        MatrixParseError: unreadable file, malformed JSON (with line/column) or schema violations
    """
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as e:
        raise MatrixParseError(str(path), 0, 0, f"cannot read file: {e.strerror}") from e
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as e:
        line = raw.count(b"\n", 0, e.start) + 1
        column = e.start - raw.rfind(b"\n", 0, e.start)
        raise MatrixParseError(str(path), line, column, f"not UTF-8 text: {e.reason}") from e
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise MatrixParseError(str(path), e.lineno, e.colno, e.msg) from e
    try:
        return ObservationSet.model_validate(data)
    except pydantic.ValidationError as e:
        problems = "; ".join(
            f"{'.'.join(str(p) for p in err['loc']) or '<root>'}: {err['msg']}" for err in e.errors()
        )
        raise MatrixParseError(str(path), 1, 1, problems) from e
