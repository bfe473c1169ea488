"""
File Helpers - atomic writes and content digests

Writes go to a temporary sibling and are moved into place, so readers never
see a partially written output.
"""
import hashlib
import logging
import shutil
from pathlib import Path

from matcol.core.exceptions import StorageError

logger = logging.getLogger(__name__)


def atomic_write_bytes(path: Path, data: bytes) -> None:
    """Write bytes atomically (temp + rename)"""
    path = Path(path)
    temp_path = path.with_name(path.name + ".tmp")
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(temp_path, "wb") as f:
            f.write(data)
        shutil.move(str(temp_path), str(path))
    except OSError as e:
        if temp_path.exists():
            temp_path.unlink()
        raise StorageError(f"write {path}", str(e)) from e


def atomic_write_text(path: Path, text: str) -> None:
    """Write UTF-8 text atomically"""
    atomic_write_bytes(path, text.encode("utf-8"))


def file_digest(path: Path) -> str:
    """sha256 hex digest of a file"""
    digest = hashlib.sha256()
    try:
        with open(path, "rb") as f:
            for chunk in iter(lambda: f.read(1 << 20), b""):
                digest.update(chunk)
    except OSError as e:
        raise StorageError(f"read {path}", str(e)) from e
    return digest.hexdigest()
