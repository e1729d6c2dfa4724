"""JSON run configuration schema for the solve command."""

from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .iteration import IterationOptions, SchemeKind
from .problem import BoundaryKind, BoundarySpec, MaterialRegion
from .transport import Closure


class RegionConfig(MaterialRegion):
    """Material region as written in a run configuration."""

    model_config = ConfigDict(extra="forbid", frozen=True)


class BoundaryConfig(BaseModel):
    """Boundary tags as written in a run configuration."""

    model_config = ConfigDict(extra="forbid")

    left: BoundaryKind = Field(default=BoundaryKind.REFLECTIVE)
    right: BoundaryKind = Field(default=BoundaryKind.VACUUM)


class RunConfig(BaseModel):
    """Problem, discretization and iteration settings for one solve."""

    model_config = ConfigDict(extra="forbid")

    quadrature_order: int = Field(default=10, ge=2, le=64)
    closure: Closure = Field(default=Closure.DD)
    boundary: BoundaryConfig = Field(default_factory=BoundaryConfig)
    regions: List[RegionConfig] = Field(..., min_length=1)
    cell_width: Optional[float] = Field(default=None, gt=0)
    widths: Optional[List[float]] = Field(default=None, min_length=1)
    scheme: SchemeKind = Field(default=SchemeKind.SI)
    tolerance: float = Field(default=1e-10, gt=0)
    max_iterations: int = Field(default=10000, gt=0)
    lp_alpha: float = Field(default=0.5, ge=0, le=1)

    @field_validator("quadrature_order")
    @classmethod
    def validate_order(cls, v: int) -> int:
        """Validate quadrature order is even."""
        if v % 2:
            raise ValueError("quadrature_order must be even")
        return v

    @field_validator("widths")
    @classmethod
    def validate_widths(cls, v: Optional[List[float]]) -> Optional[List[float]]:
        """Validate explicit cell widths are positive."""
        if v is not None and any(w <= 0 for w in v):
            raise ValueError("Cell widths must be positive")
        return v

    @model_validator(mode="after")
    def validate_mesh_choice(self) -> "RunConfig":
        """Validate exactly one of cell_width or widths is given."""
        if (self.cell_width is None) == (self.widths is None):
            raise ValueError("Specify exactly one of cell_width or widths")
        return self

    @property
    def boundary_spec(self) -> BoundarySpec:
        """Boundary conditions as a solver type."""
        return BoundarySpec(left=self.boundary.left, right=self.boundary.right)

    @property
    def options(self) -> IterationOptions:
        """Iteration options for the solver."""
        return IterationOptions(
            tolerance=self.tolerance,
            max_iterations=self.max_iterations,
            lp_boundary_alpha=self.lp_alpha,
        )
