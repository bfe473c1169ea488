"""
Array Field Types - numpy arrays inside pydantic models

Matrices and vectors live in models as float64/int64 ndarrays. JSON
serialization turns them into (nested) lists, and validation turns lists
back into arrays, so files round-trip without custom encoders.
"""
from typing import Annotated, Any

import numpy as np
import numpy.typing as npt
from pydantic import BeforeValidator, PlainSerializer, WithJsonSchema

from matcol.core.exceptions import InvalidMatrixError

DenseMatrix = npt.NDArray[np.float64]


def _as_float_array(value: Any) -> np.ndarray:
    try:
        return np.asarray(value, dtype=np.float64)
    except TypeError as e:
        raise ValueError(f"expected numbers: {e}") from e


def _as_index_array(value: Any) -> np.ndarray:
    """Integers, or floats with integral values; anything else is rejected rather than truncated"""
    try:
        raw = np.asarray(value)
    except TypeError as e:
        raise ValueError(f"expected integer indices: {e}") from e
    if raw.dtype.kind in "iu" or raw.size == 0:
        return raw.astype(np.int64)
    if raw.dtype.kind == "f" and np.all(np.isfinite(raw)) and np.all(raw == np.round(raw)):
        return raw.astype(np.int64)
    raise ValueError(f"expected integer indices, got {raw.dtype.kind!r}-kind values")


def _to_list(value: np.ndarray) -> list:
    return value.tolist()


FloatArray = Annotated[
    np.ndarray,
    BeforeValidator(_as_float_array),
    PlainSerializer(_to_list, return_type=list, when_used="json"),
    WithJsonSchema({"type": "array", "items": {"anyOf": [{"type": "number"}, {"type": "array", "items": {"type": "number"}}]}}),
]

IndexArray = Annotated[
    np.ndarray,
    BeforeValidator(_as_index_array),
    PlainSerializer(_to_list, return_type=list, when_used="json"),
    WithJsonSchema({"type": "array", "items": {"type": "integer"}}),
]


def as_dense_matrix(data: Any, name: str = "matrix") -> DenseMatrix:
    """
    Coerce input to a finite 2-D float64 matrix

    Raises:
        InvalidMatrixError: not 2-D, empty, or holding NaN/Inf
    """
    matrix = np.asarray(data, dtype=np.float64)
    if matrix.ndim != 2:
        raise InvalidMatrixError(name, f"expected a 2-D matrix, got {matrix.ndim} dimension(s)")
    if matrix.shape[0] == 0 or matrix.shape[1] == 0:
        raise InvalidMatrixError(name, f"empty shape {matrix.shape}")
    if not np.all(np.isfinite(matrix)):
        bad = np.argwhere(~np.isfinite(matrix))[0]
        raise InvalidMatrixError(name, f"non-finite entry at ({bad[0]}, {bad[1]})")
    return matrix


def as_vector(data: Any, name: str = "vector") -> np.ndarray:
    """Coerce input to a finite 1-D float64 vector"""
    vector = np.asarray(data, dtype=np.float64)
    if vector.ndim != 1:
        raise InvalidMatrixError(name, f"expected a vector, got {vector.ndim} dimension(s)")
    if not np.all(np.isfinite(vector)):
        raise InvalidMatrixError(name, "non-finite entries")
    return vector
