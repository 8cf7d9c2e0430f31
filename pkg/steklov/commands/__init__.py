"""Sub-commands of the steklov CLI, one module per command.

Each module provides ``register(subparsers)``, which adds its parser, and
``execute(config) -> CommandOutput``.
"""

import argparse
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from steklov.config import DEFAULT_SCAN, DEFAULT_SOLVER, ScanConfig, SolverConfig
from steklov.models.run_config import OutputFormat, RunConfig
from steklov.models.scan import CurvePoint, FACTOR_ALIASES, Normalizer
from steklov.models.spectrum import Geometry, MethodChoice, Problem
from steklov.utils.error_handler import UsageError

__all__ = ["eig", "scan", "critical", "curvature", "bounds", "fuzz"]


class CommandOutput(BaseModel):
    """What a command hands back to the CLI for writing."""
    payload: Dict[str, Any] = Field(default_factory=dict, description="JSON object, config_echo excluded")
    axis: Optional[str] = Field(None, description="CSV abscissa name (R or K) when the command has a curve")
    points: List[CurvePoint] = Field(default_factory=list)


def add_output_arguments(parser: argparse.ArgumentParser, csv: bool = False) -> None:
    choices = [f.value for f in OutputFormat] if csv else [OutputFormat.JSON.value]
    parser.add_argument("--out", choices=choices, default=OutputFormat.JSON.value, help="Output format")
    parser.add_argument("--rtol", type=float, default=None, help="ODE relative tolerance (<= 1e-6)")
    parser.add_argument("--log-level", default=None, help="Console log level (stderr)")


def add_eigen_arguments(parser: argparse.ArgumentParser, m_default: Optional[int] = None) -> None:
    parser.add_argument("--problem", choices=[p.value for p in Problem], required=True)
    parser.add_argument("--m", type=int, default=m_default, required=m_default is None, help="Mode index")
    parser.add_argument("--method", choices=[c.value for c in MethodChoice], default=MethodChoice.AUTO.value)


def add_grid_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--samples", type=int, default=256, help="Grid points")
    parser.add_argument("--margin", type=float, default=None, help="Absolute margin for strict differences")
    parser.add_argument("--workers", type=int, default=1, help="Worker processes")
    parser.add_argument("--report", default=None, help="Write the JSON report here when --out csv")


def add_normalizer_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--geometry", choices=[g.value for g in Geometry], required=True)
    parser.add_argument("--n", type=int, default=2, help="Dimension")
    parser.add_argument("--normalizer", choices=sorted(FACTOR_ALIASES), required=True)
    parser.add_argument("--power", type=int, default=None, help="Normalizer power (default: 3 for xi, else 1)")


def solver_config(config: RunConfig) -> SolverConfig:
    if config.rtol is None:
        return DEFAULT_SOLVER
    return DEFAULT_SOLVER.model_copy(update={"rtol": config.rtol})


def scan_config(config: RunConfig) -> ScanConfig:
    return DEFAULT_SCAN.model_copy(update={"workers": config.workers})


def normalizer_of(config: RunConfig) -> Normalizer:
    """Resolve --normalizer/--power; the sinh/tanh variants follow from the geometry."""
    factor = FACTOR_ALIASES.get(config.normalizer)
    if factor is None:
        raise UsageError(f"Unknown normalizer '{config.normalizer}'", extra={"choices": sorted(FACTOR_ALIASES)})
    if config.power is None:
        return Normalizer.for_problem(factor, config.problem)
    return Normalizer(factor=factor, power=config.power)
