"""Outer-iteration options, history and results."""

from enum import Enum
from typing import List, NamedTuple, Optional

import numpy as np
from pydantic import BaseModel, Field

from .arrays import ArrayModel, FloatArray
from .transport import AngularSolution


class SchemeKind(str, Enum):
    """Outer iteration scheme enumeration."""
    SI = "si"
    CQD = "cqd"
    LPCQD = "lpcqd"


class SolveStatus(str, Enum):
    """Termination status of an outer iteration."""
    CONVERGED = "converged"
    MAX_ITERATIONS = "max_iterations"
    DIVERGED = "diverged"
    NEGATIVE_FLUX_ABORT = "negative_flux_abort"


class IterationOptions(BaseModel):
    """Stopping and prolongation controls."""
    tolerance: float = Field(default=1e-10, gt=0, description="Relative successive-difference threshold")
    max_iterations: int = Field(default=10000, gt=0)
    lp_boundary_alpha: float = Field(default=0.5, ge=0, le=1, description="Vacuum-cell weight in lpCQD")
    divergence_window: int = Field(default=10, gt=0)

    model_config = {"frozen": True}


class IterationRecord(BaseModel):
    """Instrumentation for one outer iteration."""
    iteration: int = Field(..., ge=1)
    diff_norm: float = Field(..., ge=0)
    rho_estimate: Optional[float] = None
    min_flux: float


class IterationHistory(BaseModel):
    """Per-iteration record of an outer iteration."""
    records: List[IterationRecord] = Field(default_factory=list)

    def __len__(self) -> int:
        return len(self.records)

    @property
    def diff_norms(self) -> List[float]:
        """Successive-difference norms in iteration order."""
        return [r.diff_norm for r in self.records]

    def append(self, diff_norm: float, min_flux: float) -> IterationRecord:
        """Record an iteration and its ratio to the previous one."""
        rho = None
        if self.records:
            previous = self.records[-1].diff_norm
            if previous > 0.0 and np.isfinite(diff_norm):
                rho = diff_norm / previous
        record = IterationRecord(
            iteration=len(self.records) + 1,
            diff_norm=diff_norm,
            rho_estimate=rho,
            min_flux=min_flux,
        )
        self.records.append(record)
        return record


class Solution(ArrayModel):
    """Result of an outer iteration."""

    phi: FloatArray
    status: SolveStatus
    history: IterationHistory
    iterations_used: int = Field(..., ge=0)
    negative_flux_seen: bool = False
    last_sweep: Optional[AngularSolution] = Field(
        default=None, description="Final sweep; restarts a doubly reflective slab where it stopped"
    )

    @property
    def converged(self) -> bool:
        """Check if the iteration met its tolerance."""
        return self.status == SolveStatus.CONVERGED


class RhoMeasurement(NamedTuple):
    """Numerical spectral radius of a benchmark run."""
    rho: Optional[float]
    status: SolveStatus
    iterations: int
