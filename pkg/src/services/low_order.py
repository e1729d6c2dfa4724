"""Consistent low-order quasidiffusion solve on the fine mesh.

Cell balance, for each cell j:

    (J_{j+1/2} - J_{j-1/2}) / h_j + sigma_a_j phi_j = Q_j

with interior edge currents

    J_{j+1/2} = -beta_{j+1/2} (E_{j+1} phi_{j+1} - E_j phi_j)
                + dhat_{j+1/2} (phi_j + phi_{j+1}) / 2,
    beta_{j+1/2} = 2 / (sigma_t_j h_j + sigma_t_{j+1} h_{j+1}).

A reflective face carries zero current; a vacuum face carries
dhat_b phi of its boundary cell. The D-hat factors are built so that the
transport scalar flux is an exact solution at convergence.
"""

from typing import Optional, Sequence

import numpy as np

from src.core.exceptions import InvalidArgumentError, NegativeFluxError, SingularSystemError
from src.models.problem import BoundaryKind, BoundarySpec, Mesh
from src.models.transport import CorrectionFields, Moments

FLUX_FLOOR = 1e-14


def _require_positive(phi: np.ndarray) -> None:
    bad = np.nonzero(~(phi > FLUX_FLOOR))[0]
    if bad.size:
        cell = int(bad[0])
        raise NegativeFluxError(cell, float(phi[cell]))


def edge_betas(mesh: Mesh) -> np.ndarray:
    """Discrete (1/sigma_t) d/dx weight on the J-1 interior edges."""
    tau = mesh.optical_widths
    total = tau[:-1] + tau[1:]
    if np.any(total <= 0.0):
        raise InvalidArgumentError("Two adjacent void cells have no diffusion coupling")
    return 2.0 / total


def eddington_factors(m: Moments) -> np.ndarray:
    """E_j = phi2_j / phi_j."""
    _require_positive(m.phi)
    return m.phi2 / m.phi


def dhat_factors(m: Moments, mesh: Mesh, eddington: np.ndarray) -> CorrectionFields:
    """Consistency factors on interior edges and vacuum faces."""
    phi = m.phi
    _require_positive(phi)
    current = m.current_edges

    if mesh.cell_count > 1:
        beta = edge_betas(mesh)
        phi_edge = 0.5 * (phi[:-1] + phi[1:])
        dhat = (current[1:-1] + beta * (m.phi2[1:] - m.phi2[:-1])) / phi_edge
    else:
        dhat = np.zeros(0)

    boundary = mesh.boundary
    left = None
    right = None
    if boundary.left == BoundaryKind.VACUUM:
        left = float(current[0] / phi[0])
    if boundary.right == BoundaryKind.VACUUM:
        right = float(current[-1] / phi[-1])

    return CorrectionFields(
        eddington=eddington,
        dhat_interior=dhat,
        dhat_boundary_left=left,
        dhat_boundary_right=right,
    )


def correction_fields(m: Moments, mesh: Mesh) -> CorrectionFields:
    """Eddington and consistency factors from one set of transport moments."""
    return dhat_factors(m, mesh, eddington_factors(m))


def tridiagonal_solve(sub: Sequence[float], diag: Sequence[float],
                      sup: Sequence[float], rhs: Sequence[float]) -> np.ndarray:
    """Thomas algorithm: forward elimination, then back substitution.

    ``sub[i]`` couples row i+1 to unknown i and ``sup[i]`` couples row i to
    unknown i+1, so both have length n-1.
    """
    b = [float(v) for v in diag]
    n = len(b)
    a = [float(v) for v in sub]
    c = [float(v) for v in sup]
    d = [float(v) for v in rhs]
    if n == 0 or len(a) != n - 1 or len(c) != n - 1 or len(d) != n:
        raise InvalidArgumentError(
            "Tridiagonal bands must have lengths n-1, n, n-1 and rhs length n",
            details={"sub": len(a), "diag": n, "super": len(c), "rhs": len(d)},
        )

    cp = [0.0] * n
    dp = [0.0] * n
    pivot = b[0]
    if pivot == 0.0 or not np.isfinite(pivot):
        raise SingularSystemError(0, pivot)
    cp[0] = c[0] / pivot if n > 1 else 0.0
    dp[0] = d[0] / pivot
    for i in range(1, n):
        pivot = b[i] - a[i - 1] * cp[i - 1]
        if pivot == 0.0 or not np.isfinite(pivot):
            raise SingularSystemError(i, pivot)
        cp[i] = c[i] / pivot if i < n - 1 else 0.0
        dp[i] = (d[i] - a[i - 1] * dp[i - 1]) / pivot

    x = [0.0] * n
    x[-1] = dp[-1]
    for i in range(n - 2, -1, -1):
        x[i] = dp[i] - cp[i] * x[i + 1]
    return np.array(x)


def assemble_and_solve(mesh: Mesh, eddington: np.ndarray, corr: CorrectionFields,
                       boundary: BoundarySpec) -> np.ndarray:
    """Assemble the low-order balance system and solve it directly."""
    n = mesh.cell_count
    eddington = np.asarray(eddington, dtype=float)
    if eddington.shape != (n,) or corr.dhat_interior.shape != (n - 1,):
        raise InvalidArgumentError("Correction fields do not match the mesh")

    diag = mesh.widths * mesh.sigma_a
    sub = np.zeros(max(n - 1, 0))
    sup = np.zeros(max(n - 1, 0))

    if n > 1:
        beta = edge_betas(mesh)
        dhat = corr.dhat_interior
        # J_{j+1/2} = (beta E_j + dhat/2) phi_j + (-beta E_{j+1} + dhat/2) phi_{j+1}
        own = beta * eddington[:-1] + 0.5 * dhat
        nxt = -beta * eddington[1:] + 0.5 * dhat
        diag[:-1] += own
        sup += nxt
        diag[1:] -= nxt
        sub -= own

    if boundary.left == BoundaryKind.VACUUM:
        diag[0] -= _boundary_factor(corr.dhat_boundary_left, "left")
    if boundary.right == BoundaryKind.VACUUM:
        diag[-1] += _boundary_factor(corr.dhat_boundary_right, "right")

    rhs = mesh.widths * mesh.q
    return tridiagonal_solve(sub, diag, sup, rhs)


def _boundary_factor(value: Optional[float], side: str) -> float:
    if value is None:
        raise InvalidArgumentError(f"Vacuum {side} face needs a boundary consistency factor")
    return float(value)


def low_order_currents(phi: np.ndarray, mesh: Mesh, eddington: np.ndarray,
                       corr: CorrectionFields) -> np.ndarray:
    """Low-order net current at all J+1 edges for a given scalar flux."""
    phi = np.asarray(phi, dtype=float)
    current = np.zeros(mesh.cell_count + 1)
    if mesh.cell_count > 1:
        beta = edge_betas(mesh)
        current[1:-1] = (-beta * (eddington[1:] * phi[1:] - eddington[:-1] * phi[:-1])
                         + corr.dhat_interior * 0.5 * (phi[:-1] + phi[1:]))
    boundary = mesh.boundary
    if boundary.left == BoundaryKind.VACUUM:
        current[0] = _boundary_factor(corr.dhat_boundary_left, "left") * phi[0]
    if boundary.right == BoundaryKind.VACUUM:
        current[-1] = _boundary_factor(corr.dhat_boundary_right, "right") * phi[-1]
    return current
