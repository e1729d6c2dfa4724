"""Pytest configuration and fixtures."""

from typing import Callable

import pytest

from src.core.config import get_settings
from src.models.problem import BoundaryKind, BoundarySpec, MaterialRegion, Mesh
from src.models.quadrature import QuadratureSet
from src.services.mesh import build_mesh
from src.services.quadrature import gauss_legendre
from src.services.scenarios import problem_one_mesh

VACUUM_BOTH = BoundarySpec(left=BoundaryKind.VACUUM, right=BoundaryKind.VACUUM)
REFLECTIVE_BOTH = BoundarySpec(left=BoundaryKind.REFLECTIVE, right=BoundaryKind.REFLECTIVE)
REFLECTIVE_VACUUM = BoundarySpec(left=BoundaryKind.REFLECTIVE, right=BoundaryKind.VACUUM)


@pytest.fixture(autouse=True)
def fresh_settings():
    """Drop cached settings so environment overrides apply per test."""
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def s2() -> QuadratureSet:
    """Two-direction Gauss-Legendre set."""
    return gauss_legendre(2)


@pytest.fixture
def s10() -> QuadratureSet:
    """Ten-direction Gauss-Legendre set."""
    return gauss_legendre(10)


@pytest.fixture
def problem_one() -> Mesh:
    """Three-region consistency benchmark, 30 unit cells."""
    return problem_one_mesh()


@pytest.fixture
def one_cell_vacuum() -> Mesh:
    """Pure absorber cell of unit width with vacuum on both faces."""
    region = MaterialRegion(width=1.0, sigma_t=1.0, sigma_s=0.0, q=1.0)
    return build_mesh([region], VACUUM_BOTH, 1.0)


@pytest.fixture
def homogeneous_mesh() -> Callable[..., Mesh]:
    """Factory for single-region slabs with unit total cross section."""

    def make(c: float = 0.5, h: float = 1.0, cells: int = 10,
             boundary: BoundarySpec = REFLECTIVE_VACUUM, q: float = 1.0) -> Mesh:
        region = MaterialRegion(width=cells * h, sigma_t=1.0, sigma_s=c, q=q)
        return build_mesh([region], boundary, h)

    return make
