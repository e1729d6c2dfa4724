"""Slab problem definition models."""

from enum import Enum

import numpy as np
from pydantic import BaseModel, Field, model_validator

from .arrays import ArrayModel, FloatArray, IndexArray


class BoundaryKind(str, Enum):
    """Boundary condition enumeration."""
    REFLECTIVE = "reflective"
    VACUUM = "vacuum"


class BoundarySpec(BaseModel):
    """Boundary conditions on both faces of the slab."""
    left: BoundaryKind = Field(default=BoundaryKind.REFLECTIVE)
    right: BoundaryKind = Field(default=BoundaryKind.VACUUM)

    model_config = {"frozen": True}

    @property
    def both_reflective(self) -> bool:
        """Check if neither face leaks."""
        return self.left == self.right == BoundaryKind.REFLECTIVE


class MaterialRegion(BaseModel):
    """Homogeneous material region with an isotropic source.

    The sigma_s <= sigma_t check is left to mesh construction so that the
    offending region can be named in the error.
    """
    width: float = Field(..., gt=0, description="Region width in cm")
    sigma_t: float = Field(..., ge=0, description="Total cross section in 1/cm")
    sigma_s: float = Field(..., ge=0, description="Scattering cross section in 1/cm")
    q: float = Field(default=0.0, ge=0, description="Isotropic source density")

    model_config = {"frozen": True}

    @property
    def sigma_a(self) -> float:
        """Absorption cross section."""
        return self.sigma_t - self.sigma_s


class Mesh(ArrayModel):
    """Fine computational mesh with piecewise-constant cell data."""

    widths: FloatArray = Field(..., description="Cell widths h_j")
    sigma_t: FloatArray
    sigma_s: FloatArray
    q: FloatArray
    region_index: IndexArray = Field(..., description="Owning region of each cell")
    boundary: BoundarySpec

    @model_validator(mode="after")
    def validate_cells(self) -> "Mesh":
        """Validate per-cell array consistency."""
        n = self.widths.shape
        if len(n) != 1 or n[0] < 1:
            raise ValueError("Mesh needs at least one cell")
        for name in ("sigma_t", "sigma_s", "q", "region_index"):
            if getattr(self, name).shape != n:
                raise ValueError(f"{name} must have one entry per cell")
        if np.any(self.widths <= 0.0):
            raise ValueError("Cell widths must be positive")
        if np.any(self.sigma_s > self.sigma_t):
            raise ValueError("sigma_s cannot exceed sigma_t")
        return self

    @property
    def cell_count(self) -> int:
        """Number of cells J."""
        return int(self.widths.shape[0])

    @property
    def sigma_a(self) -> np.ndarray:
        """Absorption cross section per cell."""
        return self.sigma_t - self.sigma_s

    @property
    def scattering_ratio(self) -> np.ndarray:
        """c = sigma_s / sigma_t per cell (0 in void cells)."""
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(self.sigma_t > 0.0, self.sigma_s / self.sigma_t, 0.0)
        return ratio

    @property
    def edges(self) -> np.ndarray:
        """Edge positions x_{j+1/2}, starting at 0."""
        return np.concatenate(([0.0], np.cumsum(self.widths)))

    @property
    def centers(self) -> np.ndarray:
        """Cell-center positions."""
        edges = self.edges
        return 0.5 * (edges[:-1] + edges[1:])

    @property
    def length(self) -> float:
        """Total slab width."""
        return float(np.sum(self.widths))

    @property
    def optical_widths(self) -> np.ndarray:
        """Sigma_t h per cell."""
        return self.sigma_t * self.widths
