"""Gauss-Legendre angular quadrature."""

from functools import lru_cache

import numpy as np

from src.core.exceptions import InvalidArgumentError
from src.models.quadrature import QuadratureSet

MAX_ORDER = 64
NEWTON_TOLERANCE = 1e-15
NEWTON_MAX_STEPS = 100


def _legendre_with_derivative(order: int, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Evaluate P_order and its derivative by the three-term recurrence."""
    p_prev = np.ones_like(x)
    p = x.copy()
    for k in range(2, order + 1):
        p_prev, p = p, ((2 * k - 1) * x * p - (k - 1) * p_prev) / k
    dp = order * (x * p - p_prev) / (x * x - 1.0)
    return p, dp


@lru_cache(maxsize=None, typed=True)
def gauss_legendre(order: int) -> QuadratureSet:
    """Build the symmetric S_N Gauss-Legendre set of the given even order.

    Nodes are found by Newton iteration from the usual cosine initial
    guesses, then symmetrized so that every angle has an exact mirror.
    """
    if isinstance(order, bool) or not isinstance(order, (int, np.integer)):
        raise InvalidArgumentError(f"Quadrature order must be an integer, got {order!r}")
    if order % 2 or not 2 <= order <= MAX_ORDER:
        raise InvalidArgumentError(
            f"Quadrature order must be even and in [2, {MAX_ORDER}], got {order}",
            details={"order": int(order)},
        )
    order = int(order)

    i = np.arange(1, order + 1)
    x = np.cos(np.pi * (i - 0.25) / (order + 0.5))
    for _ in range(NEWTON_MAX_STEPS):
        p, dp = _legendre_with_derivative(order, x)
        dx = p / dp
        x = x - dx
        if np.max(np.abs(dx)) < NEWTON_TOLERANCE:
            break

    _, dp = _legendre_with_derivative(order, x)
    w = 2.0 / ((1.0 - x * x) * dp * dp)

    idx = np.argsort(x)
    x, w = x[idx], w[idx]
    angles = 0.5 * (x - x[::-1])
    weights = 0.5 * (w + w[::-1])
    return QuadratureSet(order=order, angles=angles, weights=weights)
