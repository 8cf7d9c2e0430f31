"""``curvature``: eigenvalues of space-form disks at fixed area or radius, as K varies."""

import argparse

from pydantic import ValidationError

from steklov.commands import CommandOutput, add_eigen_arguments, add_grid_arguments, add_output_arguments, scan_config, solver_config
from steklov.models.run_config import RunConfig
from steklov.models.scan import Constraint, CurvatureFamily
from steklov.services.curvature import GRID_EDGE, curvature_curve, curvature_grid, curvature_monotonicity
from steklov.utils.error_handler import DomainError


def register(subparsers) -> argparse.ArgumentParser:
    parser = subparsers.add_parser("curvature", help="Eigenvalue as a function of curvature K in 2D")
    parser.add_argument("--constraint", choices=[c.value for c in Constraint], required=True)
    parser.add_argument("--size", type=float, required=True, help="Area A or radius rho")
    add_eigen_arguments(parser)
    parser.add_argument("--k-min", type=float, default=None, help="Smallest K (default -3 times the bound)")
    parser.add_argument("--k-max", type=float, default=None, help="Largest K (default 99%% of the bound)")
    parser.add_argument("--tol", type=float, default=1e-6, help="Width of the critical-curvature bracket")
    add_grid_arguments(parser)
    parser.set_defaults(samples=128)
    add_output_arguments(parser, csv=True)
    return parser


def execute(config: RunConfig) -> CommandOutput:
    try:
        family = CurvatureFamily(constraint=config.constraint, size=config.size, problem=config.problem, m=config.m)
    except ValidationError as e:
        raise DomainError(f"Invalid curvature family: {e.errors()[0]['msg']}")

    bound = family.curvature_bound
    k_min = config.k_min if config.k_min is not None else -3.0 * bound
    k_max = config.k_max if config.k_max is not None else GRID_EDGE * bound
    grid = curvature_grid(family, config.samples, (k_min, k_max))

    solver, scan = solver_config(config), scan_config(config)
    curve = curvature_curve(family, grid, solver, scan)
    report = curvature_monotonicity(family, grid, config.margin, config.tol, solver, scan, curve=curve)
    return CommandOutput(
        payload={
            "verdict": report.verdict.value,
            "curvature_bound": bound,
            "report": report.model_dump(mode="json"),
            "points": [{"K": p.x, "value": p.value, "est_error": p.est_error} for p in curve.points],
            "gaps": [gap.model_dump() for gap in curve.gaps],
        },
        axis="K",
        points=curve.points,
    )
