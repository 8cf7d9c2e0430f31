"""``scan``: a normalized eigenvalue curve over radii and its monotonicity verdict."""

import argparse
import math

import numpy as np

from steklov.commands import (
    CommandOutput,
    add_eigen_arguments,
    add_grid_arguments,
    add_normalizer_arguments,
    add_output_arguments,
    normalizer_of,
    scan_config,
    solver_config,
)
from steklov.config import DEFAULT_SCAN
from steklov.models.run_config import RunConfig
from steklov.models.spectrum import Geometry
from steklov.services.scaling import monotonicity_report, normalized_curve

HYPERBOLIC_R_MAX = 10.0


def default_radius_range(geometry: Geometry) -> tuple:
    """(0.05, pi - 0.05) on the sphere, (0.05, 10) on hyperbolic space."""
    edge = DEFAULT_SCAN.sphere_edge
    if geometry == Geometry.SPHERE:
        return edge, math.pi - edge
    return edge, HYPERBOLIC_R_MAX


def register(subparsers) -> argparse.ArgumentParser:
    parser = subparsers.add_parser("scan", help="Normalized eigenvalue curve over R with a verdict")
    add_normalizer_arguments(parser)
    add_eigen_arguments(parser)
    parser.add_argument("--r-min", type=float, default=None, help="First radius (default 0.05)")
    parser.add_argument("--r-max", type=float, default=None, help="Last radius (default pi-0.05 or 10)")
    add_grid_arguments(parser)
    add_output_arguments(parser, csv=True)
    return parser


def execute(config: RunConfig) -> CommandOutput:
    normalizer = normalizer_of(config)
    lo, hi = default_radius_range(config.geometry)
    r_min = config.r_min if config.r_min is not None else lo
    r_max = config.r_max if config.r_max is not None else hi
    grid = [float(R) for R in np.linspace(r_min, r_max, config.samples)]

    scan = scan_config(config)
    curve = normalized_curve(
        config.geometry, config.n, config.problem, config.m, normalizer, grid,
        method=config.method, solver=solver_config(config), scan=scan,
    )
    report = monotonicity_report(curve, config.margin, scan)
    return CommandOutput(
        payload={
            "verdict": report.verdict.value,
            "normalizer": normalizer.model_dump(mode="json"),
            "report": report.model_dump(mode="json"),
            "points": [{"R": p.x, "value": p.value, "est_error": p.est_error} for p in curve.points],
            "gaps": [gap.model_dump() for gap in curve.gaps],
        },
        axis="R",
        points=curve.points,
    )
