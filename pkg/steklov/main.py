"""Command-line entry point: parse arguments into a RunConfig and run one command.

Exit codes: 0 success, 2 usage error, 3 domain/solver/numeric failure. Results go
to standard output; logs and error objects go to standard error.
"""

import argparse
import sys
from typing import List, Optional, TextIO

from pydantic import ValidationError

from steklov import __version__
from steklov.commands import bounds, critical, curvature, eig, fuzz, scan
from steklov.models.run_config import Command, OutputFormat, RunConfig
from steklov.utils.error_handler import EXIT_OK, InternalError, SteklovError, UsageError, error_payload
from steklov.utils.logging import get_logger, setup_logging
from steklov.utils.output import to_json, write_csv

logger = get_logger(__name__)

COMMANDS = {
    Command.EIG: eig,
    Command.SCAN: scan,
    Command.CRITICAL: critical,
    Command.CURVATURE: curvature,
    Command.BOUNDS: bounds,
    Command.FUZZ: fuzz,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="steklov",
        description="Steklov eigenvalues of warped-product balls: computation, scans and bound checks",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for module in COMMANDS.values():
        module.register(subparsers)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    """RunConfig from parsed arguments; invalid values become UsageError."""
    values = {k: v for k, v in vars(args).items() if k in RunConfig.model_fields and v is not None}
    try:
        return RunConfig(**values)
    except ValidationError as e:
        first = e.errors()[0]
        field = ".".join(str(part) for part in first["loc"]) or "arguments"
        raise UsageError(f"Invalid {field}: {first['msg']}", extra={"field": field})


def _fail(exc: SteklovError, stderr: TextIO) -> int:
    logger.error(f"{exc.label}: {exc.message}")
    stderr.write(to_json(error_payload(exc)))
    return exc.exit_code


def run(config: RunConfig, stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None) -> int:
    """Execute one configured command and write its output; returns the exit code."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        output = COMMANDS[config.command].execute(config)
    except SteklovError as e:
        return _fail(e, stderr)
    except Exception as e:
        logger.debug("Unexpected failure", exc_info=True)
        return _fail(InternalError(f"{type(e).__name__}: {e}", extra={"type": type(e).__name__}), stderr)

    document = to_json({**output.payload, "config_echo": config.echo()})
    if config.out == OutputFormat.CSV and output.axis is not None:
        write_csv(stdout, output.axis, output.points)
        if config.report is None:
            stderr.write(document)
        else:
            try:
                config.report.write_text(document, encoding="utf-8")
            except OSError as e:
                return _fail(SteklovError(f"Cannot write report: {e}", extra={"path": str(config.report)}), stderr)
    else:
        stdout.write(document)
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors and 0 for --help/--version
        return int(e.code or 0)

    setup_logging(level=args.log_level, force=True)
    try:
        config = config_from_args(args)
    except UsageError as e:
        return _fail(e, sys.stderr)
    logger.debug(f"Run configuration: {config.echo()}")
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
