__all__ = ["register"]

import argparse

from ..config import EngineConfig
from ..garside import words_equal
from ..holonomic_algebra import (
    IsotopyCertificate,
    format_holonomic_form,
    holonomic_normal_form,
    holonomic_summit,
    holonomize,
    parse_certificate,
    verify_certificate,
)
from ..report import RunReport
from . import add_certificate_output, read_input, read_word


def run_holonomize(
    args: argparse.Namespace, config: EngineConfig
) -> RunReport:
    report = RunReport(command="holonomize")
    word = read_word(report, args.word)
    h = holonomize(word)
    certificate = IsotopyCertificate(h)
    if args.to == "normal":
        _, certificate = holonomic_normal_form(h)
    elif args.to == "summit":
        _, certificate = holonomic_summit(h)
    final = certificate.end
    round_trip = words_equal(h.word(), word)
    verdict = verify_certificate(certificate)
    text = format_holonomic_form(final)
    report.results.update(
        holonomic_form=format_holonomic_form(h),
        final_form=text,
        round_trip=round_trip,
        certificate_valid=verdict.ok,
    )
    add_certificate_output(report, args, certificate)
    report.summary += [
        text,
        f"round trip: {'PASS' if round_trip else 'FAIL'}",
        f"certificate: {'PASS' if verdict else 'FAIL'}",
    ]
    if not (round_trip and verdict):
        report.exit_code = 1
    return report


def run_verify(args: argparse.Namespace, config: EngineConfig) -> RunReport:
    report = RunReport(command="verify")
    text = read_input(report, args.certificate_file)
    certificate = parse_certificate(text)
    verdict = verify_certificate(certificate)
    report.results.update(
        ok=verdict.ok,
        failed_step=verdict.failed_step,
        reason=verdict.reason,
        steps=len(certificate.steps),
    )
    if verdict:
        report.summary.append("PASS")
    else:
        report.summary.append(
            f"FAIL at step {verdict.failed_step}: {verdict.reason}"
        )
        report.exit_code = 1
    return report


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        "holonomize", help="rewrite a braid word as a holonomic form N|P"
    )
    parser.add_argument("word", help="braid word file")
    parser.add_argument(
        "--to",
        choices=("form", "normal", "summit"),
        default="form",
        help="continue with holonomic moves to the normal form or to a "
        "summit form",
    )
    parser.add_argument("--certificate", help="write the certificate here")
    parser.set_defaults(handler=run_holonomize)

    parser = subparsers.add_parser(
        "verify", help="replay an isotopy certificate"
    )
    parser.add_argument("certificate_file", help="certificate file")
    parser.set_defaults(handler=run_verify)
