__all__ = ["register"]

import argparse

from ..config import EngineConfig
from ..errors import BraidParseError
from ..holonomic_algebra import (
    Destabilize,
    HolonomicForm,
    ScriptStep,
    Stabilize,
    format_holonomic_form,
    parse_holonomic_form,
    parse_markov_script,
    replay_markov_script,
    verify_certificate,
)
from ..report import RunReport
from . import add_certificate_output, read_input


def _read_form(report: RunReport, path: str) -> HolonomicForm:
    lines = [
        (number, line)
        for number, line in enumerate(
            read_input(report, path).splitlines(), start=1
        )
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if len(lines) != 1:
        line_number = lines[1][0] if lines else 1
        raise BraidParseError(
            "expected exactly one holonomic form", line_number, 1
        )
    number, line = lines[0]
    return parse_holonomic_form(line, number)


def _replay(
    report: RunReport,
    args: argparse.Namespace,
    start: HolonomicForm,
    script: list[ScriptStep],
) -> RunReport:
    certificate = replay_markov_script(start, script)
    verdict = verify_certificate(certificate)
    text = format_holonomic_form(certificate.end)
    report.results.update(
        start=format_holonomic_form(start),
        end=text,
        certificate_valid=verdict.ok,
    )
    add_certificate_output(report, args, certificate)
    report.summary += [text, f"certificate: {'PASS' if verdict else 'FAIL'}"]
    if not verdict:
        report.exit_code = 1
    return report


def run_stabilize(
    args: argparse.Namespace, config: EngineConfig
) -> RunReport:
    report = RunReport(command="isotopy stabilize")
    start = _read_form(report, args.form)
    return _replay(report, args, start, [Stabilize(args.sign)])


def run_destabilize(
    args: argparse.Namespace, config: EngineConfig
) -> RunReport:
    report = RunReport(command="isotopy destabilize")
    start = _read_form(report, args.form)
    return _replay(report, args, start, [Destabilize()])


def run_replay(args: argparse.Namespace, config: EngineConfig) -> RunReport:
    report = RunReport(command="isotopy replay")
    start, script = parse_markov_script(read_input(report, args.script))
    return _replay(report, args, start, script)


def _sign(text: str) -> int:
    if text not in ("+1", "-1", "1"):
        raise argparse.ArgumentTypeError(f"sign must be +1 or -1: {text!r}")
    return int(text)


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        "isotopy", help="Markov moves and holonomic isotopies"
    )
    actions = parser.add_subparsers(
        dest="action", required=True, metavar="ACTION"
    )

    action = actions.add_parser(
        "stabilize", help="add a strand with sigma_n^sign (M1)"
    )
    action.add_argument("form", help="holonomic form file")
    action.add_argument("--sign", type=_sign, default=1, help="+1 or -1")
    action.add_argument("--certificate", help="write the certificate here")
    action.set_defaults(handler=run_stabilize)

    action = actions.add_parser(
        "destabilize", help="remove the last strand (M2)"
    )
    action.add_argument("form", help="holonomic form file")
    action.add_argument("--certificate", help="write the certificate here")
    action.set_defaults(handler=run_destabilize)

    action = actions.add_parser(
        "replay", help="run a Markov script and certify it"
    )
    action.add_argument("script", help="Markov script file")
    action.add_argument("--certificate", help="write the certificate here")
    action.set_defaults(handler=run_replay)
