"""Outer iterations: source iteration, CQD and lpCQD."""

from typing import Optional

import numpy as np
from loguru import logger

from src.core.exceptions import InvalidArgumentError, NegativeFluxError
from src.models.iteration import (
    IterationHistory,
    IterationOptions,
    RhoMeasurement,
    SchemeKind,
    Solution,
    SolveStatus,
)
from src.models.problem import BoundaryKind, BoundarySpec, Mesh
from src.models.quadrature import QuadratureSet
from src.models.transport import AngularSolution, Closure

from .low_order import assemble_and_solve, correction_fields
from .quadrature import gauss_legendre
from .scenarios import problem_two_mesh
from .sweep import compute_moments, transport_sweep

NORM_FLOOR = 1e-300
RHO_WINDOW = 5
RHO_SKIP = 3
GROWTH_FACTOR = 10.0


def diff_norm(phi_new: np.ndarray, phi_old: np.ndarray, mesh: Mesh) -> float:
    """Width-weighted L2 norm of a flux difference."""
    phi_new = np.asarray(phi_new, dtype=float)
    phi_old = np.asarray(phi_old, dtype=float)
    if phi_new.shape != phi_old.shape:
        raise InvalidArgumentError("Flux vectors must have equal lengths")
    h = mesh.widths
    return float(np.sqrt(np.sum(np.abs(phi_new - phi_old) ** 2 * h) / np.sum(h)))


def estimate_spectral_radius(history: IterationHistory) -> Optional[float]:
    """Median of the last five successive-difference ratios, ignoring the first three iterations.

    Returns None when fewer than five iterations were recorded or no usable
    ratio remains.
    """
    norms = np.asarray(history.diff_norms, dtype=float)
    if norms.size < RHO_WINDOW:
        return None
    ratios = []
    for k in range(max(1, RHO_SKIP), norms.size):
        previous = norms[k - 1]
        if previous > 0.0 and np.isfinite(norms[k]):
            ratios.append(norms[k] / previous)
    if not ratios:
        return None
    return float(np.median(ratios[-RHO_WINDOW:]))


def lp_update(phi_ho: np.ndarray, phi_lo: np.ndarray, mesh: Mesh,
              boundary: BoundarySpec, alpha: float) -> np.ndarray:
    """Prolong the low-order correction linearly over each cell and its neighbours."""
    phi_ho = np.asarray(phi_ho, dtype=float)
    delta = np.asarray(phi_lo, dtype=float) - phi_ho
    h = mesh.widths
    n = h.size
    if n < 2:
        raise InvalidArgumentError("Linear prolongation needs at least two cells")
    if not 0.0 <= alpha <= 1.0:
        raise InvalidArgumentError(f"Boundary weight must lie in [0, 1], got {alpha}")

    # ghost cells mirror the boundary cells; only reflective faces use them
    h_ext = np.concatenate(([h[0]], h, [h[-1]]))
    d_ext = np.concatenate(([delta[0]], delta, [delta[-1]]))
    h_left, h_mid, h_right = h_ext[:-2], h_ext[1:-1], h_ext[2:]
    update = 0.5 * (
        h_mid / (h_left + h_mid) * d_ext[:-2]
        + (h_left / (h_left + h_mid) + h_right / (h_mid + h_right)) * d_ext[1:-1]
        + h_mid / (h_mid + h_right) * d_ext[2:]
    )

    if boundary.left == BoundaryKind.VACUUM:
        w = h[0] / (h[0] + h[1])
        update[0] = 0.5 * ((alpha + w) * delta[0] + w * delta[1])
    if boundary.right == BoundaryKind.VACUUM:
        w = h[-1] / (h[-2] + h[-1])
        update[-1] = 0.5 * ((alpha + w) * delta[-1] + w * delta[-2])
    return phi_ho + update


class _DivergenceMonitor:
    """Sustained ratio above one together with growth beyond the running minimum."""

    def __init__(self, window: int) -> None:
        self.window = window
        self.streak = 0
        self.minimum = np.inf

    def update(self, diff: float, rho: Optional[float]) -> bool:
        self.minimum = min(self.minimum, diff)
        self.streak = self.streak + 1 if rho is not None and rho > 1.0 else 0
        return self.streak >= self.window and diff > GROWTH_FACTOR * self.minimum


def solve(scheme: SchemeKind, mesh: Mesh, quad: QuadratureSet, closure: Closure,
          opts: Optional[IterationOptions] = None,
          initial_phi: Optional[np.ndarray] = None,
          initial_sweep: Optional[AngularSolution] = None) -> Solution:
    """Iterate the sweep (and low-order solve) until successive fluxes agree.

    ``initial_sweep``, usually ``Solution.last_sweep`` of an earlier run,
    supplies the lagged boundary fluxes of a doubly reflective slab.
    """
    opts = opts or IterationOptions()
    scheme = SchemeKind(scheme)
    closure = Closure(closure)
    if scheme == SchemeKind.LPCQD and mesh.cell_count < 2:
        raise InvalidArgumentError("lpCQD needs at least two cells")

    phi = np.zeros(mesh.cell_count) if initial_phi is None else np.array(initial_phi, dtype=float)
    if phi.shape != (mesh.cell_count,):
        raise InvalidArgumentError("Initial flux must have one value per cell")

    history = IterationHistory()
    monitor = _DivergenceMonitor(opts.divergence_window)
    previous = initial_sweep
    status = SolveStatus.MAX_ITERATIONS
    negative_seen = False
    logger.info("Solving {} on {} cells ({}, S{})", scheme.value, mesh.cell_count,
                closure.value, quad.order)

    for iteration in range(1, opts.max_iterations + 1):
        sweep = transport_sweep(mesh, quad, closure, phi, previous)
        previous = sweep
        moments = compute_moments(sweep, quad)
        if not negative_seen and np.any(moments.phi < 0.0):
            negative_seen = True
            logger.warning("Negative scalar flux after sweep at iteration {}", iteration)

        if scheme == SchemeKind.SI:
            phi_new = moments.phi
        else:
            try:
                corr = correction_fields(moments, mesh)
            except NegativeFluxError as exc:
                logger.warning("Acceleration stopped at iteration {}: {}", iteration, exc.message)
                status = SolveStatus.NEGATIVE_FLUX_ABORT
                break
            phi_lo = assemble_and_solve(mesh, corr.eddington, corr, mesh.boundary)
            if scheme == SchemeKind.CQD:
                phi_new = phi_lo
            else:
                phi_new = lp_update(moments.phi, phi_lo, mesh, mesh.boundary,
                                    opts.lp_boundary_alpha)

        if not np.all(np.isfinite(phi_new)):
            logger.warning("Non-finite flux at iteration {}", iteration)
            status = SolveStatus.DIVERGED
            break

        diff = diff_norm(phi_new, phi, mesh)
        scale = diff_norm(phi_new, np.zeros_like(phi_new), mesh)
        record = history.append(diff, float(np.min(phi_new)))
        phi = np.array(phi_new, dtype=float)
        logger.debug("iteration {}: diff {:.3e} rho {}", iteration, diff, record.rho_estimate)

        if diff / max(scale, NORM_FLOOR) < opts.tolerance:
            status = SolveStatus.CONVERGED
            break
        if monitor.update(diff, record.rho_estimate):
            logger.warning("Iteration diverging at iteration {}", iteration)
            status = SolveStatus.DIVERGED
            break

    logger.info("{} finished: {} after {} iterations", scheme.value, status.value, len(history))
    return Solution(
        phi=phi,
        status=status,
        history=history,
        iterations_used=len(history),
        negative_flux_seen=negative_seen,
        last_sweep=previous,
    )


def measure_rho(scheme: SchemeKind, c: float, sigma_t_h: float, cells: int = 100,
                closure: Closure = Closure.DD, opts: Optional[IterationOptions] = None,
                quad: Optional[QuadratureSet] = None) -> RhoMeasurement:
    """Numerical spectral radius on the reflective/vacuum homogeneous benchmark slab."""
    quad = quad or gauss_legendre(10)
    mesh = problem_two_mesh(c, sigma_t_h, cells)
    solution = solve(scheme, mesh, quad, closure, opts)
    return RhoMeasurement(
        rho=estimate_spectral_radius(solution.history),
        status=solution.status,
        iterations=solution.iterations_used,
    )
