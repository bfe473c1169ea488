"""
Matrix File Formats

CSV: headerless, comma separated, one matrix row per line, every entry
written with 17 significant digits (exact float64 round trip).

Binary (.mcol): magic b"MCOL1", rows and cols as little-endian uint64, then
rows*cols little-endian float64 entries in row-major order.

Readers detect the format from the magic bytes, not the suffix.
"""
import csv
import io
import logging
import math
import struct
from pathlib import Path

import numpy as np

from matcol.core.exceptions import InvalidMatrixError, MatrixParseError
from matcol.models.arrays import DenseMatrix, as_dense_matrix
from matcol.services.storage.files import atomic_write_bytes, atomic_write_text

logger = logging.getLogger(__name__)

BINARY_MAGIC = b"MCOL1"
BINARY_HEADER = struct.Struct("<5sQQ")
BINARY_SUFFIX = ".mcol"
CSV_FORMAT = "%.17g"


def format_csv(matrix: DenseMatrix) -> str:
    """CSV text of a matrix"""
    buffer = io.StringIO()
    np.savetxt(buffer, matrix, fmt=CSV_FORMAT, delimiter=",")
    return buffer.getvalue()


def parse_csv(text: str, path: str = "<string>") -> DenseMatrix:
    """
    Parse CSV text into a matrix

    Raises:
        MatrixParseError: first bad entry, ragged row or empty input (1-based line/column)
    """
    rows: list[list[float]] = []
    width = None
    for line_number, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        if not row or all(not cell.strip() for cell in row):
            continue
        values = []
        for column_number, cell in enumerate(row, start=1):
            try:
                value = float(cell)
            except ValueError:
                raise MatrixParseError(path, line_number, column_number, f"not a number: {cell.strip()!r}")
            if not math.isfinite(value):
                raise MatrixParseError(path, line_number, column_number, f"non-finite value: {cell.strip()!r}")
            values.append(value)
        if width is None:
            width = len(values)
        elif len(values) != width:
            raise MatrixParseError(
                path, line_number, min(len(values), width) + 1,
                f"row has {len(values)} entries, expected {width}",
            )
        rows.append(values)
    if not rows:
        raise MatrixParseError(path, 1, 1, "no matrix rows")
    return np.array(rows, dtype=np.float64)


def encode_binary(matrix: DenseMatrix) -> bytes:
    """Binary encoding of a matrix"""
    rows, cols = matrix.shape
    return BINARY_HEADER.pack(BINARY_MAGIC, rows, cols) + matrix.astype("<f8", copy=False).tobytes(order="C")


def decode_binary(data: bytes, path: str = "<bytes>") -> DenseMatrix:
    """Decode the binary format"""
    if len(data) < BINARY_HEADER.size:
        raise MatrixParseError(path, 1, 1, "truncated binary header")
    magic, rows, cols = BINARY_HEADER.unpack_from(data)
    if magic != BINARY_MAGIC:
        raise MatrixParseError(path, 1, 1, f"bad magic {magic!r}")
    expected = BINARY_HEADER.size + 8 * rows * cols
    if len(data) != expected:
        raise MatrixParseError(path, 1, 1, f"expected {expected} bytes for {rows}x{cols}, found {len(data)}")
    matrix = np.frombuffer(data, dtype="<f8", offset=BINARY_HEADER.size).reshape(rows, cols)
    try:
        return as_dense_matrix(matrix.astype(np.float64), path)
    except InvalidMatrixError as e:
        raise MatrixParseError(path, 1, 1, e.details or e.message) from e


def read_matrix(path: Path) -> DenseMatrix:
    """Read a CSV or binary matrix file"""
    path = Path(path)
    try:
        data = path.read_bytes()
    except OSError as e:
        raise MatrixParseError(str(path), 0, 0, f"cannot read file: {e.strerror}") from e
    if data.startswith(BINARY_MAGIC):
        return decode_binary(data, str(path))
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as e:
        raise MatrixParseError(str(path), 1, 1, "file is neither UTF-8 CSV nor binary") from e
    return parse_csv(text, str(path))


def write_matrix(path: Path, matrix: DenseMatrix) -> None:
    """Write a matrix; binary when the suffix is .mcol, CSV otherwise"""
    path = Path(path)
    matrix = as_dense_matrix(matrix, str(path))
    if path.suffix == BINARY_SUFFIX:
        atomic_write_bytes(path, encode_binary(matrix))
    else:
        atomic_write_text(path, format_csv(matrix))
    logger.info(f"💾 Wrote {matrix.shape[0]}x{matrix.shape[1]} matrix to {path}")


def read_vector(path: Path) -> np.ndarray:
    """Read a vector stored as a single CSV row or a single CSV column"""
    matrix = read_matrix(path)
    if min(matrix.shape) != 1:
        raise MatrixParseError(str(path), 1, 1, f"expected a vector, found a {matrix.shape[0]}x{matrix.shape[1]} matrix")
    return matrix.ravel()
