"""Fourier analysis of SI, CQD and lpCQD on the homogeneous model problem.

With theta = sigma_t h omega / 2 the per-angle amplitudes are evaluated in
the form obtained by clearing tan(theta) from numerator and denominator,

    a_n = (c/2) tau (cos + i alpha_n sin) / (tau (cos + i alpha_n sin) + 2 i mu_n sin)
    b_n = (c/2) tau / (tau (cos + i alpha_n sin) + 2 i mu_n sin)

with tau = sigma_t h, so grid frequencies with theta = pi/2 need no special
casing.
"""

from typing import Optional, Tuple

import numpy as np
from loguru import logger

from src.core.exceptions import InvalidArgumentError
from src.models.fourier import BoundaryModel, FourierConfig, SpectralRadius, SymbolResult
from src.models.iteration import SchemeKind
from src.models.transport import Closure

from .sweep import closure_alphas

POLE_TOLERANCE = 1e-14


def _alphas(cfg: FourierConfig) -> np.ndarray:
    return closure_alphas(np.array([cfg.optical_width]), cfg.quad, cfg.closure)[:, 0]


def _amplitudes(omegas: np.ndarray, cfg: FourierConfig) -> Tuple[np.ndarray, np.ndarray]:
    """a_n and b_n for every frequency, shape (frequencies, angles)."""
    tau = cfg.optical_width
    theta = 0.5 * tau * omegas[:, np.newaxis]
    sin, cos = np.sin(theta), np.cos(theta)
    mu = cfg.quad.angles[np.newaxis, :]
    alpha = _alphas(cfg)[np.newaxis, :]

    closure = tau * (cos + 1j * alpha * sin)
    denominator = closure + 2j * mu * sin
    a = 0.5 * cfg.c * closure / denominator
    b = 0.5 * cfg.c * tau / denominator
    return a, b


def _cqd_denominator(omegas: np.ndarray, cfg: FourierConfig) -> np.ndarray:
    return (2.0 / (3.0 * cfg.sigma_t)) * (1.0 - np.cos(cfg.optical_width * omegas)) \
        + cfg.h ** 2 * cfg.sigma_a


def _is_pole(denominator: np.ndarray, cfg: FourierConfig) -> np.ndarray:
    return np.abs(denominator) <= POLE_TOLERANCE * (2.0 / (3.0 * cfg.sigma_t))


def _symbols(
    omegas: np.ndarray, cfg: FourierConfig
) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """All three symbols over a frequency array; NaN for CQD and lpCQD at poles."""
    omegas = np.atleast_1d(np.asarray(omegas, dtype=float))
    a, b = _amplitudes(omegas, cfg)
    w = cfg.quad.weights
    mu = cfg.quad.angles

    si = a @ w
    sin = np.sin(0.5 * cfg.optical_width * omegas)
    denominator = _cqd_denominator(omegas, cfg)
    pole = _is_pole(denominator, cfg)
    numerator = cfg.h * 2j * sin * (b @ (mu * w)) + cfg.h ** 2 * cfg.sigma_a * si
    with np.errstate(divide="ignore", invalid="ignore"):
        cqd = np.where(pole, np.nan, si - numerator / np.where(pole, 1.0, denominator))
    weight = 0.5 * (1.0 + np.cos(cfg.optical_width * omegas))
    lp = si + weight * (cqd - si)
    return a, b, si, cqd, lp, pole


def angle_coefficients(omega: float, cfg: FourierConfig) -> Tuple[np.ndarray, np.ndarray]:
    """Per-angle complex amplitudes (a_n, b_n) at one frequency."""
    a, b = _amplitudes(np.array([float(omega)]), cfg)
    return a[0], b[0]


def rho_si(omega: float, cfg: FourierConfig) -> complex:
    """Source-iteration symbol sum_n a_n w_n."""
    return complex(_symbols(np.array([omega]), cfg)[2][0])


def rho_cqd(omega: float, cfg: FourierConfig) -> complex:
    """CQD symbol; NaN where the low-order denominator vanishes."""
    return complex(_symbols(np.array([omega]), cfg)[3][0])


def rho_cqd_dd(omega: float, cfg: FourierConfig) -> complex:
    """Closed-form CQD symbol for diamond differencing, evaluated through tan directly."""
    if cfg.closure != Closure.DD:
        raise InvalidArgumentError("The closed-form CQD symbol holds for the DD closure only")
    tau = cfg.optical_width
    tan = np.tan(0.5 * tau * omega)
    lam = 2.0 / tau * tan
    mu = cfg.quad.angles
    w = cfg.quad.weights
    si = 0.5 * cfg.c * np.sum(w / (1.0 + mu * mu * lam * lam))
    numerator = cfg.h * cfg.c * lam * tan * np.sum(mu * mu * w / (1.0 + mu * mu * lam * lam)) \
        + cfg.h ** 2 * cfg.sigma_a * si
    denominator = float(_cqd_denominator(np.array([omega]), cfg)[0])
    if _is_pole(np.array([denominator]), cfg)[0]:
        return complex(np.nan, np.nan)
    return complex(si - numerator / denominator)


def rho_lpcqd(omega: float, cfg: FourierConfig) -> complex:
    """Linear-prolongation symbol, a cosine-weighted blend of the SI and CQD symbols."""
    return complex(_symbols(np.array([omega]), cfg)[4][0])


def evaluate_symbols(omega: float, cfg: FourierConfig) -> SymbolResult:
    """All three symbols plus the per-angle workspace at one frequency."""
    a, b, si, cqd, lp, pole = _symbols(np.array([omega]), cfg)
    return SymbolResult(
        omega=float(omega),
        rho_si=complex(si[0]),
        rho_cqd=complex(cqd[0]),
        rho_lpcqd=complex(lp[0]),
        a=a[0],
        b=b[0],
        pole=bool(pole[0]),
    )


def frequency_grid(cfg: FourierConfig, dense: Optional[int] = None) -> np.ndarray:
    """Discrete frequencies of the slab, or ``dense`` uniform ones in (0, 2 pi / (sigma_t h)]."""
    if dense is not None:
        if dense < 1:
            raise InvalidArgumentError(f"Dense grid needs at least one frequency, got {dense}")
        return 2.0 * np.pi / cfg.optical_width * np.arange(1, dense + 1) / dense
    s = np.arange(1, cfg.cells + 1)
    omegas = 2.0 * np.pi * s / (cfg.sigma_t * cfg.length)
    if cfg.boundary_model == BoundaryModel.REFLECTIVE:
        omegas = 0.5 * omegas
    return omegas


def symbol_table(cfg: FourierConfig, dense: Optional[int] = None) -> dict:
    """Symbol values of every scheme over the frequency grid, keyed by scheme."""
    omegas = frequency_grid(cfg, dense)
    _, _, si, cqd, lp, pole = _symbols(omegas, cfg)
    if np.any(pole):
        logger.warning("Skipping {} frequencies where the CQD denominator vanishes",
                       int(np.count_nonzero(pole)))
    return {
        "omega": omegas,
        SchemeKind.SI: si,
        SchemeKind.CQD: cqd,
        SchemeKind.LPCQD: lp,
    }


def spectral_radius(cfg: FourierConfig, scheme: SchemeKind,
                    dense: Optional[int] = None) -> SpectralRadius:
    """Largest symbol modulus over the frequency grid and the frequency attaining it."""
    table = symbol_table(cfg, dense)
    magnitude = np.abs(table[SchemeKind(scheme)])
    if np.all(np.isnan(magnitude)):
        raise InvalidArgumentError("Every frequency of the grid is a pole of the CQD symbol")
    index = int(np.nanargmax(magnitude))
    return SpectralRadius(rho=float(magnitude[index]), omega=float(table["omega"][index]))
