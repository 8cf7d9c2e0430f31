"""``bounds``: an eigenvalue against its sharp warped-product bounds."""

import argparse

from steklov.commands import CommandOutput, add_output_arguments, solver_config
from steklov.config import DEFAULT_FUZZ
from steklov.models.bounds import BoundKind
from steklov.models.run_config import RunConfig
from steklov.models.spectrum import MethodChoice
from steklov.services.bounds import (
    all_bound_checks,
    verify_eta_bounds,
    verify_eta_ratio,
    verify_wang_xia,
    verify_xi_bounds,
)
from steklov.services.warp import make_manifold, parse_warp
from steklov.utils.error_handler import UsageError

CHECKS = {
    BoundKind.XI: verify_xi_bounds,
    BoundKind.ETA: verify_eta_bounds,
    BoundKind.ETA_RATIO: verify_eta_ratio,
}


def register(subparsers) -> argparse.ArgumentParser:
    parser = subparsers.add_parser("bounds", help="Check the sharp xi/eta bounds on one warped product")
    parser.add_argument("--warp", required=True, help="Warp string")
    parser.add_argument("--n", type=int, required=True, help="Dimension")
    parser.add_argument("--R", type=float, required=True, help="Boundary radius")
    parser.add_argument("--m", type=int, default=1, help="Mode index (the largest one without --kind)")
    parser.add_argument(
        "--kind",
        choices=[k.value for k in (BoundKind.XI, BoundKind.ETA, BoundKind.ETA_RATIO, BoundKind.WANG_XIA)],
        default=None,
        help="Single check to run (default: every check up to --m)",
    )
    parser.add_argument("--method", choices=[c.value for c in MethodChoice], default=MethodChoice.AUTO.value)
    add_output_arguments(parser)
    return parser


def execute(config: RunConfig) -> CommandOutput:
    manifold = make_manifold(config.n, config.R, parse_warp(config.warp))
    solver = solver_config(config)
    if config.kind is None:
        if config.m < 1:
            raise UsageError("Running every check needs --m >= 1")
        reports = all_bound_checks(manifold, config.m, solver=solver)
    elif config.kind == BoundKind.WANG_XIA:
        reports = [verify_wang_xia(manifold, config.method, solver=solver)]
    else:
        reports = [CHECKS[config.kind](manifold, config.m, config.method, solver=solver)]
    return CommandOutput(
        payload={
            "violations": sum(1 for r in reports if r.violated(DEFAULT_FUZZ.slack_tol)),
            "reports": [r.model_dump(mode="json") for r in reports],
        }
    )
