"""Custom exception classes for the solver."""

from typing import Any, Dict, Optional


class TransportError(Exception):
    """Base exception class for solver errors."""

    def __init__(
        self,
        message: str,
        error_code: Optional[str] = None,
        details: Optional[Dict[str, Any]] = None,
    ) -> None:
        self.message = message
        self.error_code = error_code
        self.details = details or {}
        super().__init__(self.message)


class InvalidArgumentError(TransportError):
    """Raised when an operation receives an argument outside its domain."""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None) -> None:
        super().__init__(message, error_code="INVALID_ARGUMENT", details=details)


class ConfigurationError(TransportError):
    """Raised when a run configuration cannot be read or validated."""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None) -> None:
        super().__init__(message, error_code="CONFIGURATION_ERROR", details=details)


# Problem-definition exceptions
class MeshAlignmentError(InvalidArgumentError):
    """Raised when a region boundary does not fall on a cell edge."""

    def __init__(self, region: int, message: str) -> None:
        super().__init__(message, details={"region": region})
        self.error_code = "MESH_ALIGNMENT"
        self.region = region


class MaterialError(InvalidArgumentError):
    """Raised when region cross sections are physically inconsistent."""

    def __init__(self, region: int, message: str) -> None:
        super().__init__(message, details={"region": region})
        self.error_code = "MATERIAL_ERROR"
        self.region = region


# Solver exceptions
class NegativeFluxError(TransportError):
    """Raised when acceleration would divide by a non-positive scalar flux."""

    def __init__(self, cell: int, value: float) -> None:
        super().__init__(
            f"Scalar flux {value!r} in cell {cell} is not positive; "
            "acceleration cannot proceed",
            error_code="NEGATIVE_FLUX",
            details={"cell": cell, "value": value},
        )
        self.cell = cell
        self.value = value


class SingularSystemError(TransportError):
    """Raised when a linear solve meets a zero or non-finite pivot."""

    def __init__(self, index: int, pivot: float) -> None:
        super().__init__(
            f"Singular tridiagonal system: pivot {pivot!r} at row {index}",
            error_code="SINGULAR_SYSTEM",
            details={"index": index, "pivot": pivot},
        )
        self.index = index
        self.pivot = pivot
