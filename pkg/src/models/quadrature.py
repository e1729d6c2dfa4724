"""Angular quadrature set model."""

import numpy as np
from pydantic import Field, model_validator

from .arrays import ArrayModel, FloatArray


class QuadratureSet(ArrayModel):
    """Symmetric S_N quadrature: angles ascending, negative directions first."""

    order: int = Field(..., gt=0, description="Number of discrete directions N")
    angles: FloatArray = Field(..., description="Direction cosines mu_n")
    weights: FloatArray = Field(..., description="Quadrature weights w_n")

    @model_validator(mode="after")
    def validate_layout(self) -> "QuadratureSet":
        """Validate lengths, symmetry and positivity."""
        if self.order % 2:
            raise ValueError("Quadrature order must be even")
        if self.angles.shape != (self.order,) or self.weights.shape != (self.order,):
            raise ValueError("Angles and weights must both have length equal to order")
        if np.any(self.weights <= 0.0):
            raise ValueError("Quadrature weights must be positive")
        if np.any(self.angles == 0.0) or np.any(np.abs(self.angles) >= 1.0):
            raise ValueError("Angles must lie in (-1, 1) excluding 0")
        if np.any(np.diff(self.angles) <= 0.0):
            raise ValueError("Angles must be strictly increasing")
        if not np.array_equal(self.angles, -self.angles[::-1]):
            raise ValueError("Angles must come in +/- pairs")
        return self

    @property
    def half(self) -> int:
        """Number of directions in each hemisphere."""
        return self.order // 2

    @property
    def negative(self) -> slice:
        """Index range of the mu < 0 directions."""
        return slice(0, self.half)

    @property
    def positive(self) -> slice:
        """Index range of the mu > 0 directions."""
        return slice(self.half, self.order)
