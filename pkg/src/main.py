"""Command-line entry point: ``solve``, ``scan`` and ``fourier``."""

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Callable, List, NoReturn, Optional, Sequence

import numpy as np
from loguru import logger
from pydantic import ValidationError

from src.core.config import get_settings
from src.core.exceptions import ConfigurationError, InvalidArgumentError, TransportError
from src.core.logging import configure_logging
from src.models.fourier import BoundaryModel, FourierConfig
from src.models.iteration import IterationOptions, SchemeKind, SolveStatus
from src.models.problem import Mesh
from src.models.run_config import RunConfig
from src.models.transport import Closure
from src.services.fourier import rho_cqd_dd, spectral_radius, symbol_table
from src.services.iteration import measure_rho, solve
from src.services.mesh import build_mesh, build_mesh_nonuniform
from src.services.quadrature import gauss_legendre
from src.services.reporting import (
    fourier_rows,
    write_flux,
    write_fourier,
    write_history,
    write_scan,
)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_DIVERGED = 2
EXIT_NEGATIVE_FLUX = 3
EXIT_MAX_ITERATIONS = 4
EXIT_FAILURE = 5

STATUS_EXIT_CODES = {
    SolveStatus.CONVERGED: EXIT_OK,
    SolveStatus.DIVERGED: EXIT_DIVERGED,
    SolveStatus.NEGATIVE_FLUX_ABORT: EXIT_NEGATIVE_FLUX,
    SolveStatus.MAX_ITERATIONS: EXIT_MAX_ITERATIONS,
}

DEFAULT_SCAN_C = [0.4, 0.6, 0.9, 0.99]
DEFAULT_SCAN_SIGMA_T_H = [0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0]
DEFAULT_SCHEMES = [SchemeKind.SI, SchemeKind.CQD, SchemeKind.LPCQD]
SELF_CHECK_TOLERANCE = 1e-12


class _ArgumentParser(argparse.ArgumentParser):
    """Argument errors become configuration errors instead of exiting with code 2."""

    def error(self, message: str) -> NoReturn:
        raise ConfigurationError(message)


def _float_list(text: str) -> List[float]:
    try:
        values = [float(item) for item in text.split(",") if item.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from exc
    if not values:
        raise argparse.ArgumentTypeError("list must not be empty")
    return values


def _scheme_list(text: str) -> List[SchemeKind]:
    items = [item.strip().lower() for item in text.split(",") if item.strip()]
    if not items:
        raise argparse.ArgumentTypeError("scheme list must not be empty")
    try:
        return [SchemeKind(item) for item in items]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"unknown scheme in {text!r}") from exc


def describe_validation_error(exc: ValidationError) -> str:
    """One ``field.path: message`` entry per validation failure."""
    parts = []
    for err in exc.errors():
        location = ".".join(str(p) for p in err["loc"]) or "<root>"
        parts.append(f"{location}: {err['msg']}")
    return "; ".join(parts)


def load_run_config(path: Path) -> RunConfig:
    """Read and validate a JSON run configuration."""
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigurationError(f"Cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"Config {path} is not valid JSON: {exc}") from exc
    try:
        return RunConfig.model_validate(raw)
    except ValidationError as exc:
        raise ConfigurationError(
            f"Invalid config {path}: {describe_validation_error(exc)}",
            details={"errors": exc.errors(include_url=False)},
        ) from exc


def build_problem_mesh(config: RunConfig) -> Mesh:
    """Fine mesh described by a run configuration."""
    if config.cell_width is not None:
        return build_mesh(config.regions, config.boundary_spec, config.cell_width)
    return build_mesh_nonuniform(config.regions, config.boundary_spec, config.widths)


def cmd_solve(args: argparse.Namespace) -> int:
    """Solve one configured problem and write flux.csv and history.csv."""
    try:
        config = load_run_config(args.config)
        mesh = build_problem_mesh(config)
        quad = gauss_legendre(config.quadrature_order)
        if config.scheme == SchemeKind.LPCQD and mesh.cell_count < 2:
            raise ConfigurationError("lpCQD needs a mesh of at least two cells")
    except (ConfigurationError, InvalidArgumentError) as exc:
        logger.error("{}", exc.message)
        return EXIT_CONFIG

    try:
        solution = solve(config.scheme, mesh, quad, config.closure, config.options)
    except TransportError as exc:
        logger.error("Solve failed: {}", exc.message)
        return EXIT_FAILURE

    out_dir = Path(args.out_dir)
    write_flux(out_dir / "flux.csv", mesh, solution.phi)
    write_history(out_dir / "history.csv", solution.history)
    logger.info("Wrote results for {} cells to {}", mesh.cell_count, out_dir)
    return STATUS_EXIT_CODES[solution.status]


def scan_row(job: tuple) -> dict:
    """Measure and predict the spectral radius of one scan point; errors become a row status."""
    c, sigma_t_h, scheme, cells, closure, order, tolerance, max_iterations = job
    row = {
        "c": c,
        "sigma_t_h": sigma_t_h,
        "scheme": scheme.value,
        "rho_numerical": None,
        "status": "error",
        "rho_fourier": None,
        "iterations": 0,
    }
    quad = gauss_legendre(order)
    opts = IterationOptions(tolerance=tolerance, max_iterations=max_iterations)
    try:
        measured = measure_rho(scheme, c, sigma_t_h, cells, closure, opts, quad)
        row.update(rho_numerical=measured.rho, status=measured.status.value,
                   iterations=measured.iterations)
    except TransportError as exc:
        logger.warning("Scan point c={} sigma_t_h={} {} failed: {}",
                       c, sigma_t_h, scheme.value, exc.message)
    try:
        cfg = FourierConfig.from_cells(cells, sigma_t_h, c=c, quad=quad, closure=closure,
                                       boundary_model=BoundaryModel.REFLECTIVE)
        row["rho_fourier"] = spectral_radius(cfg, scheme).rho
    except (TransportError, ValidationError) as exc:
        logger.warning("No Fourier prediction for c={} sigma_t_h={}: {}", c, sigma_t_h, exc)
    return row


def run_scan(jobs: Sequence[tuple], workers: int) -> List[dict]:
    """Evaluate scan points, in parallel when ``workers`` > 1; rows keep input order."""
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(scan_row, jobs))
    return [scan_row(job) for job in jobs]


def cmd_scan(args: argparse.Namespace) -> int:
    """Spectral-radius scan over scattering ratio, optical width and scheme."""
    c_values = args.c or DEFAULT_SCAN_C
    widths = args.sigma_t_h or DEFAULT_SCAN_SIGMA_T_H
    schemes = args.schemes if args.schemes is not None else DEFAULT_SCHEMES
    if not schemes:
        logger.error("Scheme list must not be empty")
        return EXIT_CONFIG
    bad_c = any(not 0.0 <= c <= 1.0 for c in c_values)
    bad_w = any(not (w > 0.0 and np.isfinite(w)) for w in widths)
    if bad_c or bad_w:
        logger.error("Scattering ratios must lie in [0, 1]; "
                     "optical widths must be positive and finite")
        return EXIT_CONFIG
    if args.order % 2 or not 2 <= args.order <= 64 or args.cells < 2:
        logger.error("Quadrature order must be even in [2, 64] and cells at least 2")
        return EXIT_CONFIG

    closure = Closure(args.closure)
    jobs = [
        (c, w, scheme, args.cells, closure, args.order, args.tolerance, args.max_iterations)
        for c in c_values
        for w in widths
        for scheme in schemes
    ]
    workers = args.workers or get_settings().scan_workers
    logger.info("Scanning {} points with {} worker(s)", len(jobs), workers)
    rows = run_scan(jobs, workers)

    path = write_scan(Path(args.out_dir) / "scan.csv", rows)
    logger.info("Wrote {}", path)
    return EXIT_OK


def _self_check(cfg: FourierConfig, omegas: np.ndarray, cqd: np.ndarray) -> bool:
    worst = 0.0
    for omega, value in zip(omegas, cqd):
        if np.isnan(value):
            continue
        reference = rho_cqd_dd(float(omega), cfg)
        worst = max(worst, abs(value - reference) / max(1.0, abs(reference)))
    logger.info("CQD closed-form self-check: worst deviation {:.3e}", worst)
    return worst <= SELF_CHECK_TOLERANCE


def cmd_fourier(args: argparse.Namespace) -> int:
    """Tabulate the iteration symbols over the slab frequencies."""
    try:
        cfg = FourierConfig.from_cells(
            args.cells,
            args.sigma_t_h,
            c=args.c,
            quad=gauss_legendre(args.order),
            closure=Closure(args.closure),
            boundary_model=BoundaryModel(args.boundary_model),
        )
        if args.self_check and cfg.closure != Closure.DD:
            raise InvalidArgumentError("--self-check needs the dd closure")
        table = symbol_table(cfg, args.dense)
    except ValidationError as exc:
        logger.error("Invalid Fourier parameters: {}", describe_validation_error(exc))
        return EXIT_CONFIG
    except InvalidArgumentError as exc:
        logger.error("{}", exc.message)
        return EXIT_CONFIG

    rows = fourier_rows(table["omega"], table, args.schemes)
    path = write_fourier(args.out, rows)
    logger.info("Wrote {} rows to {}", len(rows), path)

    if args.self_check and not _self_check(cfg, table["omega"], table[SchemeKind.CQD]):
        logger.error("CQD symbol disagrees with its closed diamond-difference form")
        return EXIT_FAILURE
    return EXIT_OK


def create_parser() -> argparse.ArgumentParser:
    """Create and configure the argument parser."""
    settings = get_settings()
    parser = _ArgumentParser(
        prog="slabqd",
        description="Slab discrete-ordinates solver with quasidiffusion acceleration",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {settings.version}")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    solve_cmd = commands.add_parser("solve", help="Solve a configured slab problem")
    solve_cmd.add_argument("--config", type=Path, required=True, help="JSON run configuration")
    solve_cmd.add_argument("--out-dir", type=Path, required=True)
    solve_cmd.set_defaults(handler=cmd_solve)

    scan_cmd = commands.add_parser("scan", help="Measured and predicted spectral radii")
    scan_cmd.add_argument("--c", type=_float_list, default=None, help="Scattering ratios")
    scan_cmd.add_argument("--sigma-t-h", type=_float_list, default=None, help="Optical cell widths")
    scan_cmd.add_argument("--schemes", type=_scheme_list, default=None)
    scan_cmd.add_argument("--cells", type=int, default=100)
    scan_cmd.add_argument("--closure", choices=[c.value for c in Closure], default=Closure.DD.value)
    scan_cmd.add_argument("--order", type=int, default=10)
    scan_cmd.add_argument("--tolerance", type=float, default=1e-10)
    scan_cmd.add_argument("--max-iterations", type=int, default=10000)
    scan_cmd.add_argument("--workers", type=int, default=None,
                          help="Worker processes (default from SLABQD_SCAN_WORKERS)")
    scan_cmd.add_argument("--out-dir", type=Path, required=True)
    scan_cmd.set_defaults(handler=cmd_scan)

    fourier_cmd = commands.add_parser("fourier", help="Analytic iteration symbols")
    fourier_cmd.add_argument("--c", type=float, required=True)
    fourier_cmd.add_argument("--sigma-t-h", type=float, required=True)
    fourier_cmd.add_argument("--order", type=int, default=10)
    fourier_cmd.add_argument("--closure", choices=[c.value for c in Closure],
                             default=Closure.DD.value)
    fourier_cmd.add_argument("--cells", type=int, default=100)
    fourier_cmd.add_argument("--boundary-model", choices=[b.value for b in BoundaryModel],
                             default=BoundaryModel.REFLECTIVE.value)
    fourier_cmd.add_argument("--schemes", type=_scheme_list, default=list(DEFAULT_SCHEMES))
    fourier_cmd.add_argument("--dense", type=int, default=None,
                             help="Use N uniform frequencies instead of the slab frequencies")
    fourier_cmd.add_argument("--self-check", action="store_true",
                             help="Compare CQD values against the closed DD form")
    fourier_cmd.add_argument("--out", type=Path, required=True)
    fourier_cmd.set_defaults(handler=cmd_fourier)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the CLI and return its exit code."""
    configure_logging()
    parser = create_parser()
    try:
        args = parser.parse_args(argv)
    except ConfigurationError as exc:
        logger.error("{}", exc.message)
        return EXIT_CONFIG
    handler: Callable[[argparse.Namespace], int] = args.handler
    return handler(args)


if __name__ == "__main__":
    sys.exit(main())
