"""Shared pydantic plumbing for numpy-backed models."""

from typing import Annotated, Any

import numpy as np
from pydantic import BaseModel, BeforeValidator, ConfigDict


def as_float_array(value: Any) -> np.ndarray:
    """Coerce a sequence into a read-only float64 array."""
    array = np.array(value, dtype=float)
    array.flags.writeable = False
    return array


def as_index_array(value: Any) -> np.ndarray:
    """Coerce a sequence into a read-only integer array."""
    array = np.array(value, dtype=np.int64)
    array.flags.writeable = False
    return array


def as_complex_array(value: Any) -> np.ndarray:
    """Coerce a sequence into a read-only complex128 array."""
    array = np.array(value, dtype=complex)
    array.flags.writeable = False
    return array


FloatArray = Annotated[np.ndarray, BeforeValidator(as_float_array)]
ComplexArray = Annotated[np.ndarray, BeforeValidator(as_complex_array)]
IndexArray = Annotated[np.ndarray, BeforeValidator(as_index_array)]


class ArrayModel(BaseModel):
    """Immutable model whose fields may hold numpy arrays."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)
