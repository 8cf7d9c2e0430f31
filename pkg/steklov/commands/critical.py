"""``critical``: locate the radius where a normalized curve turns."""

import argparse
from functools import partial

from steklov.commands import (
    CommandOutput,
    add_eigen_arguments,
    add_normalizer_arguments,
    add_output_arguments,
    normalizer_of,
    scan_config,
    solver_config,
)
from steklov.models.run_config import RunConfig
from steklov.services.scaling import dense_scan_argmin, find_transition, normalized_value
from steklov.utils.error_handler import UsageError
from steklov.utils.logging import get_logger

logger = get_logger(__name__)


def register(subparsers) -> argparse.ArgumentParser:
    parser = subparsers.add_parser("critical", help="Transition radius of a normalized curve")
    add_normalizer_arguments(parser)
    add_eigen_arguments(parser)
    parser.add_argument("--lo", type=float, required=True, help="Bracket start")
    parser.add_argument("--hi", type=float, required=True, help="Bracket end")
    parser.add_argument("--tol", type=float, default=1e-6, help="Bracket width to reach")
    parser.add_argument("--oracle", type=int, default=0, help="Also report a dense-scan argmin with this many samples")
    add_output_arguments(parser)
    return parser


def execute(config: RunConfig) -> CommandOutput:
    if config.lo is None or config.hi is None:
        raise UsageError("critical needs --lo and --hi")
    normalizer = normalizer_of(config)
    solver, scan = solver_config(config), scan_config(config)
    point = find_transition(
        config.geometry, config.n, config.problem, config.m, normalizer,
        (config.lo, config.hi), config.tol, method=config.method, solver=solver, scan=scan,
    )
    payload = {
        "value": point.location,
        "est_error": point.width,
        "method": "slope_bisection",
        "transition": point.model_dump(mode="json"),
    }

    if config.oracle:
        curve = partial(
            _curve_value,
            geometry=config.geometry, n=config.n, problem=config.problem, m=config.m,
            normalizer=normalizer, method=config.method, solver=solver,
        )
        oracle = dense_scan_argmin(curve, config.lo, config.hi, config.oracle)
        logger.info(f"Dense-scan oracle {oracle:.10g} vs bisection {point.location:.10g}")
        payload["oracle"] = oracle
    return CommandOutput(payload=payload)


def _curve_value(R: float, **kwargs) -> float:
    return normalized_value(R=R, **kwargs)[0]
