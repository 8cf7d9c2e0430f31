"""``eig``: one eigenvalue of one warped product."""

import argparse

from steklov.commands import CommandOutput, add_eigen_arguments, add_output_arguments, solver_config
from steklov.models.run_config import RunConfig
from steklov.models.scan import CurvePoint
from steklov.services.eigen import eigenvalue
from steklov.services.warp import make_manifold, parse_warp
from steklov.utils.logging import get_logger

logger = get_logger(__name__)


def register(subparsers) -> argparse.ArgumentParser:
    parser = subparsers.add_parser("eig", help="Compute sigma_(m), xi_(m) or eta_(m)")
    parser.add_argument("--warp", required=True, help="euclidean | sphere | hyperbolic | spaceform:K=<real> | poly:a3=<real>[,a5=...]")
    parser.add_argument("--n", type=int, required=True, help="Dimension")
    parser.add_argument("--R", type=float, required=True, help="Boundary radius")
    add_eigen_arguments(parser)
    add_output_arguments(parser, csv=True)
    return parser


def execute(config: RunConfig) -> CommandOutput:
    manifold = make_manifold(config.n, config.R, parse_warp(config.warp))
    result = eigenvalue(config.problem, manifold, config.m, config.method, rtol=config.rtol, config=solver_config(config))
    logger.info(f"{result.problem.value}_({result.m}) = {result.value:.12e} via {result.method.value}")
    return CommandOutput(
        payload={
            "value": result.value,
            "est_error": result.est_error,
            "method": result.method.value,
        },
        axis="R",
        points=[CurvePoint(x=manifold.R, value=result.value, est_error=result.est_error)],
    )
