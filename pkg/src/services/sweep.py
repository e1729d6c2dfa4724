"""Discrete-ordinates transport sweep with diamond or step-characteristic closure.

Each direction family is swept upwind, one cell at a time, vectorized over
the angles of the family. Per cell, the closure

    psi_c = (1 - a)/2 psi_in + (1 + a)/2 psi_out,    a = |alpha_n|

is used to eliminate the outgoing edge value from the cell balance, which
gives psi_c = (S + k psi_in) / (k + sigma_t) with k = 2|mu| / (h (1 + a)).
"""

from typing import Optional

import numpy as np
from loguru import logger

from src.core.exceptions import InvalidArgumentError
from src.models.problem import BoundaryKind, Mesh
from src.models.quadrature import QuadratureSet
from src.models.transport import AngularSolution, Closure, Moments

SERIES_THRESHOLD = 1e-2


def sc_alpha(tau: float) -> float:
    """Step-characteristic closure weight for signed optical thickness tau = sigma_t h / mu."""
    if tau == 0.0:
        raise InvalidArgumentError("Step characteristic weight is undefined at tau = 0; use DD")
    if not np.isfinite(tau):
        return float(np.sign(tau))
    if abs(tau) < SERIES_THRESHOLD:
        t2 = tau * tau
        return tau * (1.0 / 6.0 - t2 * (1.0 / 360.0 - t2 * (1.0 / 15120.0 - t2 / 604800.0)))
    return float(1.0 / np.tanh(0.5 * tau) - 2.0 / tau)


def closure_alphas(optical_widths: np.ndarray, quad: QuadratureSet,
                   closure: Closure) -> np.ndarray:
    """Signed alpha_n per angle and cell; zero for DD and for void cells."""
    optical_widths = np.atleast_1d(np.asarray(optical_widths, dtype=float))
    if closure == Closure.DD:
        return np.zeros((quad.order, optical_widths.size))
    tau = optical_widths[np.newaxis, :] / quad.angles[:, np.newaxis]
    t2 = tau * tau
    series = tau * (1.0 / 6.0 - t2 * (1.0 / 360.0 - t2 * (1.0 / 15120.0 - t2 / 604800.0)))
    with np.errstate(divide="ignore", invalid="ignore"):
        closed = 1.0 / np.tanh(0.5 * tau) - 2.0 / tau
    return np.where(np.abs(tau) < SERIES_THRESHOLD, series, closed)


def _sweep_family(psi_in: np.ndarray, cells: range, k: np.ndarray, a: np.ndarray,
                  sigma_t: np.ndarray, source: np.ndarray,
                  cell_avg: np.ndarray, edge_out: np.ndarray) -> np.ndarray:
    """March one direction family through the given cells; return the exiting fluxes."""
    for j in cells:
        kj = k[:, j]
        aj = a[:, j]
        psi_c = (source[j] + kj * psi_in) / (kj + sigma_t[j])
        psi_out = (2.0 * psi_c - (1.0 - aj) * psi_in) / (1.0 + aj)
        cell_avg[:, j] = psi_c
        edge_out[:, j] = psi_out
        psi_in = psi_out
    return psi_in


def transport_sweep(mesh: Mesh, quad: QuadratureSet, closure: Closure,
                    scalar_source: np.ndarray,
                    previous: Optional[AngularSolution] = None) -> AngularSolution:
    """Solve the cell equations for a fixed scattering source phi^l.

    The family flowing away from a single reflective face is swept second
    so the reflection is exact within the sweep. With two reflective faces
    the mu > 0 inflow on the left is lagged from ``previous``; without one,
    it is the inflow this sweep reflects back onto itself.
    """
    scalar_source = np.asarray(scalar_source, dtype=float)
    n_cells = mesh.cell_count
    if scalar_source.shape != (n_cells,):
        raise InvalidArgumentError(
            f"Scalar source has shape {scalar_source.shape}, expected ({n_cells},)"
        )

    source = 0.5 * (mesh.sigma_s * scalar_source + mesh.q)
    a = np.abs(closure_alphas(mesh.optical_widths, quad, closure))
    k = 2.0 * np.abs(quad.angles)[:, np.newaxis] / (mesh.widths[np.newaxis, :] * (1.0 + a))

    lagged: Optional[np.ndarray] = None
    left, right = mesh.boundary.left, mesh.boundary.right
    if left == BoundaryKind.REFLECTIVE and right == BoundaryKind.REFLECTIVE:
        if previous is not None and previous.left_outgoing is not None:
            lagged = np.asarray(previous.left_outgoing)[::-1].copy()
        else:
            lagged = _self_consistent_inflow(mesh, quad, k, a, source)

    solution = _sweep(mesh, quad, k, a, source, lagged)
    if solution.has_negative:
        logger.debug("Sweep produced negative cell-average angular fluxes")
    return solution


def _self_consistent_inflow(mesh: Mesh, quad: QuadratureSet, k: np.ndarray, a: np.ndarray,
                            source: np.ndarray) -> np.ndarray:
    """Left inflow of a doubly reflective slab that the sweep returns unchanged.

    Angle by angle the reflected outflow is offset + gain * inflow, so one
    sweep with the source and one unit sweep without it fix both terms.
    """
    half = quad.half
    offset = np.asarray(_sweep(mesh, quad, k, a, source, np.zeros(half)).left_outgoing)[::-1]
    unit = _sweep(mesh, quad, k, a, np.zeros_like(source), np.ones(half))
    gain = np.asarray(unit.left_outgoing)[::-1]
    inflow = np.full(half, _flat_estimate(mesh))
    # gain is 1 only across an all-void slab, where any flat inflow is a fixed point
    solvable = gain < 1.0
    inflow[solvable] = offset[solvable] / (1.0 - gain[solvable])
    return inflow


def _sweep(mesh: Mesh, quad: QuadratureSet, k: np.ndarray, a: np.ndarray,
           source: np.ndarray, lagged: Optional[np.ndarray]) -> AngularSolution:
    n_cells = mesh.cell_count
    half = quad.half
    neg, pos = quad.negative, quad.positive

    cell_avg = np.zeros((quad.order, n_cells))
    edge = np.zeros((quad.order, n_cells + 1))
    # per-family outgoing edge buffers, indexed by cell
    out_pos = np.zeros((half, n_cells))
    out_neg = np.zeros((half, n_cells))
    avg_pos = np.zeros((half, n_cells))
    avg_neg = np.zeros((half, n_cells))

    left, right = mesh.boundary.left, mesh.boundary.right
    forward = range(n_cells)
    backward = range(n_cells - 1, -1, -1)

    def sweep_right(inflow: np.ndarray) -> np.ndarray:
        return _sweep_family(inflow, forward, k[pos], a[pos], mesh.sigma_t, source,
                             avg_pos, out_pos)

    def sweep_left(inflow: np.ndarray) -> np.ndarray:
        return _sweep_family(inflow, backward, k[neg], a[neg], mesh.sigma_t, source,
                             avg_neg, out_neg)

    left_outgoing: Optional[np.ndarray] = None
    if lagged is not None:
        inflow_left = lagged
        exit_right = sweep_right(inflow_left)
        exit_left = sweep_left(exit_right[::-1].copy())
        left_outgoing = exit_left.copy()
    elif left == BoundaryKind.REFLECTIVE:
        exit_left = sweep_left(np.zeros(half))
        inflow_left = exit_left[::-1].copy()
        sweep_right(inflow_left)
    elif right == BoundaryKind.REFLECTIVE:
        inflow_left = np.zeros(half)
        exit_right = sweep_right(inflow_left)
        sweep_left(exit_right[::-1].copy())
    else:
        inflow_left = np.zeros(half)
        sweep_right(inflow_left)
        sweep_left(np.zeros(half))

    cell_avg[neg] = avg_neg
    cell_avg[pos] = avg_pos
    # mu > 0: edge j+1/2 is the exit of cell j; inflow sits on edge 1/2
    edge[pos, 0] = inflow_left
    edge[pos, 1:] = out_pos
    # mu < 0: edge j-1/2 is the exit of cell j; inflow sits on edge J+1/2
    edge[neg, :-1] = out_neg
    edge[neg, -1] = _right_inflow(right, out_pos[:, -1])
    return AngularSolution(cell_avg=cell_avg, edge=edge, left_outgoing=left_outgoing)


def _flat_estimate(mesh: Mesh) -> float:
    """Isotropic Q / (2 sigma_t) of the leftmost cell."""
    sigma_t = float(mesh.sigma_t[0])
    return 0.5 * float(mesh.q[0]) / sigma_t if sigma_t > 0.0 else 0.0


def _right_inflow(right: BoundaryKind, exit_pos: np.ndarray) -> np.ndarray:
    if right == BoundaryKind.REFLECTIVE:
        return exit_pos[::-1]
    return np.zeros_like(exit_pos)


def compute_moments(sol: AngularSolution, quad: QuadratureSet) -> Moments:
    """Scalar flux, second moment and edge currents of an angular solution."""
    w = quad.weights
    mu = quad.angles
    return Moments(
        phi=w @ sol.cell_avg,
        phi2=(w * mu * mu) @ sol.cell_avg,
        current_edges=(w * mu) @ sol.edge,
    )


def balance_residual(mesh: Mesh, moments: Moments, scalar_source: np.ndarray) -> np.ndarray:
    """Zeroth-moment balance residual per cell; zero to rounding after any sweep."""
    leakage = np.diff(moments.current_edges) / mesh.widths
    return leakage + mesh.sigma_t * moments.phi - (mesh.sigma_s * scalar_source + mesh.q)
