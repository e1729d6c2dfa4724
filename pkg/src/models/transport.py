"""Transport sweep and low-order correction models."""

from enum import Enum
from typing import Optional

import numpy as np
from pydantic import Field, model_validator

from .arrays import ArrayModel, FloatArray


class Closure(str, Enum):
    """Spatial closure of the discrete-ordinates cell equations."""
    DD = "dd"
    SC = "sc"


class AngularSolution(ArrayModel):
    """Angular flux from one transport sweep, indexed angle x cell."""

    cell_avg: FloatArray = Field(..., description="psi_{n,j}, shape (N, J)")
    edge: FloatArray = Field(..., description="psi_{n,j+1/2}, shape (N, J+1)")
    left_outgoing: Optional[FloatArray] = Field(
        default=None,
        description="mu < 0 fluxes leaving the left face, lagged when both faces reflect",
    )

    @model_validator(mode="after")
    def validate_shapes(self) -> "AngularSolution":
        """Validate that edge and cell arrays agree."""
        if self.cell_avg.ndim != 2 or self.edge.ndim != 2:
            raise ValueError("Angular fluxes must be two-dimensional")
        n, j = self.cell_avg.shape
        if self.edge.shape != (n, j + 1):
            raise ValueError("Edge fluxes must have one more column than cell fluxes")
        return self

    @property
    def has_negative(self) -> bool:
        """Check whether any cell-average angular flux is negative."""
        return bool(np.any(self.cell_avg < 0.0))


class Moments(ArrayModel):
    """Angular moments handed to the accelerators."""

    phi: FloatArray = Field(..., description="Cell-average scalar flux")
    phi2: FloatArray = Field(..., description="Cell-average second moment")
    current_edges: FloatArray = Field(..., description="Net current at all J+1 edges")

    @model_validator(mode="after")
    def validate_shapes(self) -> "Moments":
        """Validate moment lengths."""
        j = self.phi.shape[0]
        if self.phi2.shape != (j,) or self.current_edges.shape != (j + 1,):
            raise ValueError("Moment arrays have inconsistent lengths")
        return self


class CorrectionFields(ArrayModel):
    """Eddington factors and consistency factors for the low-order solve."""

    eddington: FloatArray = Field(..., description="E_j per cell")
    dhat_interior: FloatArray = Field(..., description="D-hat on the J-1 interior edges")
    dhat_boundary_left: Optional[float] = None
    dhat_boundary_right: Optional[float] = None

    @model_validator(mode="after")
    def validate_finite(self) -> "CorrectionFields":
        """Reject NaN or infinite corrections."""
        if self.dhat_interior.shape != (max(self.eddington.shape[0] - 1, 0),):
            raise ValueError("Interior D-hat must have one entry per interior edge")
        values = [self.eddington, self.dhat_interior]
        for boundary in (self.dhat_boundary_left, self.dhat_boundary_right):
            if boundary is not None:
                values.append(np.array([boundary]))
        if not all(np.all(np.isfinite(v)) for v in values):
            raise ValueError("Correction fields must be finite")
        return self
