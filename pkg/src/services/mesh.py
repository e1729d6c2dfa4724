"""Fine-mesh construction from material regions."""

from typing import Sequence

import numpy as np
from loguru import logger

from src.core.exceptions import InvalidArgumentError, MaterialError, MeshAlignmentError
from src.models.problem import BoundarySpec, MaterialRegion, Mesh

ALIGNMENT_TOLERANCE = 1e-9


def _check_materials(regions: Sequence[MaterialRegion]) -> None:
    if not regions:
        raise InvalidArgumentError("At least one material region is required")
    for index, region in enumerate(regions):
        if region.sigma_s > region.sigma_t:
            raise MaterialError(
                index,
                f"Region {index}: sigma_s ({region.sigma_s}) exceeds sigma_t ({region.sigma_t})",
            )


def _fill(regions: Sequence[MaterialRegion], owner: np.ndarray, widths: np.ndarray,
          boundary: BoundarySpec) -> Mesh:
    def per_cell(attr: str) -> np.ndarray:
        return np.array([getattr(regions[k], attr) for k in owner], dtype=float)

    return Mesh(
        widths=widths,
        sigma_t=per_cell("sigma_t"),
        sigma_s=per_cell("sigma_s"),
        q=per_cell("q"),
        region_index=owner,
        boundary=boundary,
    )


def build_mesh(regions: Sequence[MaterialRegion], boundary: BoundarySpec,
               cell_width: float) -> Mesh:
    """Cut every region into uniform cells of the requested width."""
    if not (cell_width > 0.0 and np.isfinite(cell_width)):
        raise InvalidArgumentError(f"cell_width must be positive and finite, got {cell_width}")
    _check_materials(regions)

    counts = []
    for index, region in enumerate(regions):
        ratio = region.width / cell_width
        if not np.isfinite(ratio):
            raise InvalidArgumentError(f"Region {index}: width {region.width} is not finite")
        n = int(round(ratio))
        if n < 1 or abs(ratio - n) > ALIGNMENT_TOLERANCE * ratio:
            raise MeshAlignmentError(
                index,
                f"Region {index}: width {region.width} is not a multiple of cell width {cell_width}",
            )
        counts.append(n)

    owner = np.repeat(np.arange(len(regions)), counts)
    widths = np.full(owner.shape[0], float(cell_width))
    logger.debug("Built uniform mesh: {} cells of width {}", owner.shape[0], cell_width)
    return _fill(regions, owner, widths, boundary)


def build_mesh_nonuniform(regions: Sequence[MaterialRegion], boundary: BoundarySpec,
                          widths: Sequence[float]) -> Mesh:
    """Assign explicit cell widths to regions; cumulative edges must hit every interface."""
    _check_materials(regions)
    widths = np.asarray(widths, dtype=float)
    valid = widths.ndim == 1 and widths.size > 0 and np.all(np.isfinite(widths) & (widths > 0.0))
    if not valid:
        raise InvalidArgumentError("Cell widths must be positive finite values, at least one")

    edges = np.cumsum(widths)
    owner = np.empty(widths.size, dtype=np.int64)
    start = 0
    interface = 0.0
    for index, region in enumerate(regions):
        interface += region.width
        tol = ALIGNMENT_TOLERANCE * interface
        hits = np.nonzero(np.abs(edges[start:] - interface) <= tol)[0]
        if hits.size == 0:
            raise MeshAlignmentError(
                index,
                f"Region {index}: no cell edge at its right interface x = {interface}",
            )
        stop = start + int(hits[0]) + 1
        owner[start:stop] = index
        start = stop
    if start != widths.size:
        raise MeshAlignmentError(
            len(regions) - 1,
            f"Cell widths extend past the last region (total {edges[-1]}, slab {interface})",
        )
    return _fill(regions, owner, widths, boundary)
