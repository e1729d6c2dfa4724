"""CSV tables written by the command-line front end.

Every table has a header row, a fixed column order, shortest round-trip
float formatting and ``\\n`` line endings. Missing values are left empty.
"""

from pathlib import Path
from typing import Iterable, List, Mapping, Sequence, Union

import numpy as np
import pandas as pd
from loguru import logger

from src.models.iteration import IterationHistory, SchemeKind
from src.models.problem import Mesh

PathLike = Union[str, Path]

FLUX_COLUMNS = ["x_center", "phi"]
HISTORY_COLUMNS = ["iter", "diff_norm", "rho_estimate"]
SCAN_COLUMNS = ["c", "sigma_t_h", "scheme", "rho_numerical", "status", "rho_fourier", "iterations"]
FOURIER_COLUMNS = ["omega", "scheme", "re", "im", "abs"]


def _write(frame: pd.DataFrame, path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, lineterminator="\n", na_rep="")
    logger.debug("Wrote {} rows to {}", len(frame), path)
    return path


def write_flux(path: PathLike, mesh: Mesh, phi: np.ndarray) -> Path:
    """Cell-centre scalar flux table."""
    frame = pd.DataFrame({"x_center": mesh.centers, "phi": np.asarray(phi, dtype=float)},
                         columns=FLUX_COLUMNS)
    return _write(frame, path)


def write_history(path: PathLike, history: IterationHistory) -> Path:
    """One row per outer iteration; the first ratio is empty."""
    frame = pd.DataFrame(
        {
            "iter": [r.iteration for r in history.records],
            "diff_norm": [r.diff_norm for r in history.records],
            "rho_estimate": [r.rho_estimate for r in history.records],
        },
        columns=HISTORY_COLUMNS,
    )
    return _write(frame, path)


def write_scan(path: PathLike, rows: Sequence[Mapping]) -> Path:
    """Scan results in input order."""
    frame = pd.DataFrame(list(rows), columns=SCAN_COLUMNS)
    return _write(frame, path)


def fourier_rows(omegas: np.ndarray, symbols: Mapping[SchemeKind, np.ndarray],
                 schemes: Iterable[SchemeKind]) -> List[dict]:
    """Per-frequency symbol rows followed by one ``<scheme>_max`` summary row per scheme."""
    rows: List[dict] = []
    summaries: List[dict] = []
    for scheme in schemes:
        values = np.asarray(symbols[scheme], dtype=complex)
        for omega, value in zip(omegas, values):
            rows.append({
                "omega": float(omega),
                "scheme": scheme.value,
                "re": float(value.real),
                "im": float(value.imag),
                "abs": float(abs(value)),
            })
        magnitude = np.abs(values)
        if np.all(np.isnan(magnitude)):
            continue
        index = int(np.nanargmax(magnitude))
        summaries.append({
            "omega": float(omegas[index]),
            "scheme": f"{scheme.value}_max",
            "re": None,
            "im": None,
            "abs": float(magnitude[index]),
        })
    return rows + summaries


def write_fourier(path: PathLike, rows: Sequence[Mapping]) -> Path:
    """Symbol table from :func:`fourier_rows`."""
    frame = pd.DataFrame(list(rows), columns=FOURIER_COLUMNS)
    return _write(frame, path)
