"""The two benchmark slabs: three-region consistency problem and variable-width stability problem."""

from typing import List

import numpy as np

from src.core.exceptions import InvalidArgumentError
from src.models.problem import BoundaryKind, BoundarySpec, MaterialRegion, Mesh

from .mesh import build_mesh

PROBLEM_ONE_CELL_WIDTH = 1.0
PROBLEM_TWO_SIGMA_T = 1.0
PROBLEM_TWO_CELLS = 100
BENCHMARK_BOUNDARY = BoundarySpec(left=BoundaryKind.REFLECTIVE, right=BoundaryKind.VACUUM)


def problem_one_regions() -> List[MaterialRegion]:
    """Three 10 cm regions, the middle one nearly non-absorbing."""
    return [
        MaterialRegion(width=10.0, sigma_t=1.0, sigma_s=0.9, q=1.0),
        MaterialRegion(width=10.0, sigma_t=1.0, sigma_s=0.99, q=1.0),
        MaterialRegion(width=10.0, sigma_t=1.0, sigma_s=0.9, q=1.0),
    ]


def problem_one_mesh(cell_width: float = PROBLEM_ONE_CELL_WIDTH) -> Mesh:
    """Problem-one slab on a uniform mesh, reflective left and vacuum right."""
    return build_mesh(problem_one_regions(), BENCHMARK_BOUNDARY, cell_width)


def problem_two_mesh(c: float, sigma_t_h: float, cells: int = PROBLEM_TWO_CELLS) -> Mesh:
    """Homogeneous slab of ``cells`` cells with optical width ``sigma_t_h`` each."""
    if not 0.0 <= c <= 1.0:
        raise InvalidArgumentError(f"Scattering ratio must lie in [0, 1], got {c}")
    if not (sigma_t_h > 0.0 and np.isfinite(sigma_t_h)):
        raise InvalidArgumentError(
            f"Optical cell width must be positive and finite, got {sigma_t_h}"
        )
    if cells < 1:
        raise InvalidArgumentError(f"Cell count must be positive, got {cells}")

    h = sigma_t_h / PROBLEM_TWO_SIGMA_T
    region = MaterialRegion(
        width=cells * h,
        sigma_t=PROBLEM_TWO_SIGMA_T,
        sigma_s=c * PROBLEM_TWO_SIGMA_T,
        q=1.0,
    )
    return build_mesh([region], BENCHMARK_BOUNDARY, h)
