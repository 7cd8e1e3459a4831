__all__ = ["register", "read_series"]

import argparse

from ..braid_core import format_braid_word
from ..config import EngineConfig
from ..curve_engine import (
    FourierSeries,
    braid_axis_point,
    extract_braid,
    genericity_report,
    load_fourier_series,
    sample_curve,
    samples_csv,
    winding_rate,
)
from ..report import RunReport
from ..svg import render_projection_svg
from . import read_input, write_or_print


def read_series(report: RunReport, path: str) -> FourierSeries:
    return load_fourier_series(read_input(report, path))


def run_curve(args: argparse.Namespace, config: EngineConfig) -> RunReport:
    report = RunReport(command=f"curve {args.action}")
    f = read_series(report, args.series)
    if args.action == "check":
        genericity = genericity_report(f, config)
        report.results["genericity"] = genericity.model_dump()
        report.warnings += genericity.warnings
        for index, condition in enumerate(
            (
                genericity.condition1,
                genericity.condition2,
                genericity.condition3,
                genericity.condition4,
            ),
            start=1,
        ):
            verdict = "PASS" if condition.passed else "FAIL"
            report.summary.append(f"condition {index}: {verdict}")
            report.summary += [
                f"  {diagnostic}" for diagnostic in condition.diagnostics
            ]
        report.summary += [
            f"zeros of f: {genericity.zeros_f}",
            f"zeros of f': {genericity.zeros_fprime}",
            f"double points: {genericity.double_point_count}",
            f"braid index: {genericity.braid_index}",
            f"axis point: {genericity.axis_point}",
        ]
    elif args.action == "braid":
        word = extract_braid(f, config)
        axis = braid_axis_point(f, config)
        text = format_braid_word(word)
        report.results.update(
            braid=text,
            axis_point=axis,
            winding_rate=winding_rate(f, axis, config),
        )
        report.summary.append(text)
    elif args.action == "svg":
        write_or_print(report, args, render_projection_svg(f, config))
    else:
        write_or_print(report, args, samples_csv(sample_curve(f, config)))
    return report


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        "curve", help="holonomic curve of a trigonometric series"
    )
    parser.add_argument(
        "action",
        choices=("check", "braid", "svg", "csv"),
        help="genericity report, closed braid word, SVG projection or "
        "CSV samples",
    )
    parser.add_argument("series", help="Fourier series JSON file")
    parser.add_argument("--output", help="write SVG or CSV output here")
    parser.set_defaults(handler=run_curve)
