"""The ``holoknot`` command-line program."""

__all__ = ["create_parser", "main"]

import argparse
import sys

import structlog

from . import __version__
from .commands import algebra, cousin, curve, holonomize, isotopy
from .config import EngineConfig, load_config
from .errors import (
    DomainError,
    InputError,
    IterationCapError,
    ToleranceError,
    exit_code_for,
)
from .report import RunReport, configure_logging
from .utils import atomic_write_text

COMMAND_MODULES = (algebra, holonomize, curve, cousin, isotopy)

# Flags that override EngineConfig fields of the same name.
CONFIG_FLAGS = (
    ("--grid-size", int, "samples per period for grid scans"),
    ("--root-tolerance", float, "root refinement tolerance"),
    ("--match-tolerance", float, "double-point matching tolerance"),
    ("--dedupe-radius", float, "parameter radius for merging double points"),
    ("--axis-tolerance", float, "minimum |f'| at a double point"),
    ("--transversality-tolerance", float, "minimum front slope gap"),
    ("--tangency-tolerance", float, "relative contact-form residual bound"),
    ("--newton-max-iterations", int, "Newton iterations per candidate"),
    ("--strand-cap", int, "maximum strands for summit-set closure"),
    ("--max-positive-words", int, "positive rewriting closure cap"),
)

log = structlog.get_logger("Cli")


def create_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="holoknot",
        description="Braid normal forms, holonomic forms and holonomic or "
        "Legendrian curves of trigonometric series.",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    parser.add_argument(
        "--config", help="JSON file of configuration values"
    )
    parser.add_argument(
        "--json",
        action="store_true",
        help="print the run report as JSON instead of text",
    )
    parser.add_argument(
        "--log-level",
        help="DEBUG, INFO, WARNING, ERROR or CRITICAL; "
        "log messages go to stderr",
    )
    for flag, kind, text in CONFIG_FLAGS:
        parser.add_argument(flag, type=kind, help=text)
    subparsers = parser.add_subparsers(
        dest="command", required=True, metavar="COMMAND"
    )
    for module in COMMAND_MODULES:
        module.register(subparsers)
    return parser


def _load_config(args: argparse.Namespace) -> EngineConfig:
    overrides = {
        flag[2:].replace("-", "_"): getattr(
            args, flag[2:].replace("-", "_")
        )
        for flag, _, _ in CONFIG_FLAGS
    }
    return load_config(args.config, log_level=args.log_level, **overrides)


def _emit(report: RunReport, as_json: bool) -> None:
    sys.stdout.write(report.to_json() if as_json else report.to_text())


def main(argv: None | list[str] = None) -> int:
    """Run the program and return its exit code.

    0 success, 1 domain failure, 2 input error, 3 a cap was exceeded.
    """
    parser = create_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    command = " ".join(
        part for part in (args.command, getattr(args, "action", None)) if part
    )
    configure_logging("INFO")
    try:
        config = _load_config(args)
        configure_logging(config.log_level)
        report = args.handler(args, config)
        for path, text in report.outputs.items():
            atomic_write_text(path, text)
    except (
        InputError,
        DomainError,
        ToleranceError,
        IterationCapError,
    ) as e:
        exit_code = exit_code_for(e)
        log.error("command failed", command=command, error=str(e))
        report = RunReport(
            command=command,
            results={"error": str(e), "error_type": type(e).__name__},
            exit_code=exit_code,
            summary=[f"error: {e}"],
        )
        if args.json:
            _emit(report, True)
        else:
            sys.stderr.write(report.to_text())
        return exit_code
    _emit(report, args.json)
    return report.exit_code


def run() -> None:
    """Console-script entry point."""
    sys.exit(main())
