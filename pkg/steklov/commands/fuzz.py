"""``fuzz``: the bounds harness on seeded random polynomial warps."""

import argparse

from steklov.commands import CommandOutput, add_output_arguments, solver_config
from steklov.config import DEFAULT_FUZZ
from steklov.models.run_config import RunConfig
from steklov.services.bounds import fuzz_bounds, probe_open_question


def register(subparsers) -> argparse.ArgumentParser:
    parser = subparsers.add_parser("fuzz", help="Verify all bounds on random admissible warps")
    parser.add_argument("--n", type=int, required=True, help="Dimension")
    parser.add_argument("--m-max", type=int, default=3, help="Largest mode index checked")
    parser.add_argument("--trials", type=int, default=100, help="Accepted warps to test")
    parser.add_argument("--seed", type=int, default=0, help="Generator seed")
    parser.add_argument("--workers", type=int, default=1, help="Worker processes")
    parser.add_argument("--probe", action="store_true", help="Tally xi_(m) against m^2(n+2m)/h^3 (n = 3)")
    add_output_arguments(parser)
    return parser


def execute(config: RunConfig) -> CommandOutput:
    trials = fuzz_bounds(
        config.n, config.m_max, config.trials, config.seed, workers=config.workers, solver=solver_config(config)
    )
    violations = [r for t in trials for r in t.violations(DEFAULT_FUZZ.slack_tol)]
    payload = {
        "trials": len(trials),
        "draws": sum(t.attempts for t in trials),
        "violations": len(violations),
        "worst_slack": min((s / abs(r.value) for t in trials for r in t.reports for s in r.slacks), default=None),
        "results": [t.model_dump(mode="json") for t in trials],
    }
    if config.probe:
        payload["probe"] = probe_open_question(trials).model_dump(mode="json")
    return CommandOutput(payload=payload)
