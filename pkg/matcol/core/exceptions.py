"""
Custom Exception Hierarchy for matcol

Provides structured exceptions for different error types with consistent
error messages and CLI exit codes.
"""
from typing import Any


class MatcolException(Exception):
    """Base exception for all matcol errors"""

    exit_code: int = 1

    def __init__(self, message: str, details: str | None = None):
        self.message = message
        self.details = details
        super().__init__(self.message)


# ============================================================================
# VALIDATION EXCEPTIONS (exit 2)
# ============================================================================

class ValidationError(MatcolException):
    """Raised when input validation fails"""

    exit_code = 2


class InvalidParameterError(ValidationError):
    """Raised when a parameter value is invalid"""

    def __init__(self, param_name: str, value: Any, reason: str):
        super().__init__(
            message=f"Invalid parameter: {param_name}",
            details=f"Value '{value}' is invalid: {reason}"
        )
        self.param_name = param_name
        self.value = value


class ConfigurationError(ValidationError):
    """Raised when inputs are individually valid but inconsistent with each other"""
    pass


class DimensionMismatchError(ConfigurationError):
    """Raised when two inputs disagree on a dimension"""

    def __init__(self, what: str, expected: int, actual: int):
        super().__init__(
            message=f"Dimension mismatch: {what}",
            details=f"expected {expected}, got {actual}"
        )
        self.what = what
        self.expected = expected
        self.actual = actual


class InvalidMatrixError(ValidationError):
    """Raised when a matrix is not 2-D or holds NaN/Inf entries"""

    def __init__(self, name: str, reason: str):
        super().__init__(
            message=f"Invalid matrix: {name}",
            details=reason
        )
        self.name = name


class MatrixParseError(ValidationError):
    """Raised when a matrix or observation file cannot be parsed"""

    def __init__(self, path: str, line: int, column: int, reason: str):
        super().__init__(
            message=f"Parse error in {path} at line {line}, column {column}",
            details=reason
        )
        self.path = path
        self.line = line
        self.column = column


# ============================================================================
# NUMERICAL EXCEPTIONS (exit 3)
# ============================================================================

class NumericalError(MatcolException):
    """Base exception for numerical failures"""

    exit_code = 3


class DegenerateInputError(NumericalError):
    """Raised when an input carries no usable information (zero matrix, zero vector)"""

    def __init__(self, what: str, details: str | None = None):
        super().__init__(
            message=f"Degenerate input: {what}",
            details=details
        )
        self.what = what


class SingularSystemError(NumericalError):
    """Raised when the Gram matrix of a partially observed column is singular"""

    def __init__(self, column_index: int | None, min_eigenvalue: float):
        where = f"column {column_index}" if column_index is not None else "column"
        super().__init__(
            message=f"Singular per-column system for {where}",
            details=(
                f"lambda_min = {min_eigenvalue:.3e}; "
                "retry with regularization > 0"
            )
        )
        self.column_index = column_index
        self.min_eigenvalue = min_eigenvalue


# ============================================================================
# STORAGE EXCEPTIONS (exit 1)
# ============================================================================

class StorageError(MatcolException):
    """Raised when storage operations fail"""

    def __init__(self, operation: str, details: str | None = None):
        super().__init__(
            message=f"Storage error: {operation}",
            details=details
        )
        self.operation = operation
