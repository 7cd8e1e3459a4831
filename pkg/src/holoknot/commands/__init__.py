"""Subcommands of the ``holoknot`` program.

Each module exposes ``register(subparsers)``, which adds its parsers
and sets ``handler`` to a function taking the parsed arguments and the
`holoknot.config.EngineConfig` and returning a
`holoknot.report.RunReport`.
"""

__all__ = [
    "read_input",
    "read_word",
    "add_certificate_output",
    "write_or_print",
]

import argparse

from ..braid_core import BraidWord, parse_braid_word
from ..holonomic_algebra import IsotopyCertificate, format_certificate
from ..report import RunReport
from ..utils import read_text


def read_input(report: RunReport, path: str) -> str:
    """Read an input file and record its digest in the report."""
    text = read_text(path)
    report.add_input(path, text)
    return text


def read_word(report: RunReport, path: str) -> BraidWord:
    return parse_braid_word(read_input(report, path))


def add_certificate_output(
    report: RunReport,
    args: argparse.Namespace,
    certificate: IsotopyCertificate,
) -> None:
    """Queue the certificate for ``--certificate PATH``, if given."""
    report.results["certificate_steps"] = len(certificate.steps)
    if args.certificate:
        report.outputs[args.certificate] = format_certificate(certificate)


def write_or_print(
    report: RunReport, args: argparse.Namespace, text: str
) -> None:
    """Queue ``text`` for ``--output PATH``, or print it if no path is
    given."""
    if args.output:
        report.outputs[args.output] = text
        report.results["output"] = args.output
        report.summary.append(f"wrote {args.output}")
    else:
        report.summary.append(text.rstrip("\n"))
