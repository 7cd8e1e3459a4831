__all__ = ["RunReport", "configure_logging"]

import logging
import sys
import typing

import pydantic
import structlog

from .utils import sha256_digest


class RunReport(pydantic.BaseModel):
    """Result of one command-line run.

    ``summary`` holds the human-readable lines printed in text mode and
    ``outputs`` the files to write once the command has succeeded;
    neither is part of the JSON report.
    """

    command: str
    inputs_digest: dict[str, str] = pydantic.Field(default_factory=dict)
    results: dict[str, typing.Any] = pydantic.Field(default_factory=dict)
    warnings: list[str] = pydantic.Field(default_factory=list)
    exit_code: int = 0
    summary: list[str] = pydantic.Field(default_factory=list, exclude=True)
    outputs: dict[str, str] = pydantic.Field(
        default_factory=dict, exclude=True
    )

    def add_input(self, name: str, text: str) -> None:
        self.inputs_digest[name] = sha256_digest(text)

    def to_json(self) -> str:
        return self.model_dump_json(indent=2) + "\n"

    def to_text(self) -> str:
        lines = list(self.summary)
        lines += [f"warning: {warning}" for warning in self.warnings]
        return "".join(f"{line}\n" for line in lines)


def _stderr_logger(*args: typing.Any) -> structlog.PrintLogger:
    # Resolve sys.stderr per event, not at configuration time.
    return structlog.PrintLogger(sys.stderr)


def configure_logging(level: str) -> None:
    """Send structlog events at or above ``level`` to stderr."""
    structlog.configure(
        wrapper_class=structlog.make_filtering_bound_logger(
            logging.getLevelName(level.upper())
        ),
        logger_factory=_stderr_logger,
        cache_logger_on_first_use=False,
    )
