"""Fourier model problem configuration and symbol results."""

from enum import Enum
from typing import Any

from pydantic import Field, model_validator

from .arrays import ArrayModel, ComplexArray
from .quadrature import QuadratureSet
from .transport import Closure


class BoundaryModel(str, Enum):
    """Frequency set used for the discrete spectral radius."""
    PERIODIC = "periodic"
    REFLECTIVE = "reflective"


class FourierConfig(ArrayModel):
    """Homogeneous infinite-medium model problem on a uniform mesh."""

    c: float = Field(..., ge=0, le=1, description="Scattering ratio")
    sigma_t: float = Field(default=1.0, gt=0, description="Total cross section in 1/cm")
    h: float = Field(..., gt=0, allow_inf_nan=False, description="Cell width in cm")
    quad: QuadratureSet
    closure: Closure = Field(default=Closure.DD)
    length: float = Field(
        ..., gt=0, allow_inf_nan=False, description="Slab length L setting the frequency set"
    )
    boundary_model: BoundaryModel = Field(default=BoundaryModel.REFLECTIVE)

    @model_validator(mode="after")
    def validate_cell_count(self) -> "FourierConfig":
        """Validate that L/h is a positive integer."""
        ratio = self.length / self.h
        if round(ratio) < 1 or abs(ratio - round(ratio)) > 1e-9 * ratio:
            raise ValueError("length / h must be a positive integer")
        return self

    @classmethod
    def from_cells(cls, cells: int, h: float, **kwargs: Any) -> "FourierConfig":
        """Build a configuration for J cells of width h."""
        return cls(h=h, length=cells * h, **kwargs)

    @property
    def cells(self) -> int:
        """Number of cells J = L/h."""
        return int(round(self.length / self.h))

    @property
    def sigma_a(self) -> float:
        """Absorption cross section."""
        return self.sigma_t * (1.0 - self.c)

    @property
    def optical_width(self) -> float:
        """Sigma_t h."""
        return self.sigma_t * self.h


class SymbolResult(ArrayModel):
    """Iteration symbols of all three schemes at one frequency."""

    omega: float
    rho_si: complex
    rho_cqd: complex
    rho_lpcqd: complex
    a: ComplexArray = Field(..., description="Per-angle cell-average amplitudes a_n")
    b: ComplexArray = Field(..., description="Per-angle edge amplitudes b_n")
    pole: bool = Field(default=False, description="CQD denominator vanished at this frequency")


class SpectralRadius(ArrayModel):
    """Maximum symbol modulus over a frequency set."""

    rho: float
    omega: float
