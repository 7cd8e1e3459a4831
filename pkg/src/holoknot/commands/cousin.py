__all__ = ["register"]

import argparse

from ..config import EngineConfig
from ..legendrian import (
    CousinParams,
    dasbach_isotopy_report,
    diagram_equivalence,
    front_diagram,
    holonomic_samples_off_axis,
    sample_cousin,
    tangency_residual,
)
from ..report import RunReport
from ..svg import render_front_svg
from . import write_or_print
from .curve import read_series

# Samples closer than this to y=0 are dropped before evaluating beta.
BETA_MIN_ABS_Y = 0.1


def _check(
    report: RunReport,
    args: argparse.Namespace,
    p: CousinParams,
    config: EngineConfig,
) -> None:
    if p.k == 0:
        samples = holonomic_samples_off_axis(p.base, BETA_MIN_ABS_Y, config)
        tangency = tangency_residual(samples, "beta", config)
        report.warnings.append("k=0 is the holonomic curve, not a front")
    else:
        tangency = tangency_residual(sample_cousin(p, config), "alpha", config)
    report.results["tangency"] = tangency.model_dump()
    report.summary.append(
        f"{tangency.form} residual: {tangency.max_residual:.3e} "
        f"({'tangent' if tangency.is_tangent else 'NOT tangent'})"
    )
    if p.k > 0:
        equivalence = diagram_equivalence(p.base, p.k, config)
        report.results["diagram_equivalence"] = equivalence.model_dump()
        report.summary += [
            f"crossings: {equivalence.front_crossings}",
            f"cusps: {equivalence.cusps}",
            "diagram equivalent to the holonomic projection: "
            + ("yes" if equivalence.equivalent else "NO"),
        ]
    if args.dasbach is not None:
        dasbach = dasbach_isotopy_report(
            p.base, p.k, args.dasbach, verbatim=args.verbatim, config=config
        )
        report.results["dasbach"] = dasbach.model_dump()
        report.warnings += dasbach.warnings
        for row in dasbach.rows:
            report.summary.append(
                f"isotopy s={row.s:g}: residual {row.max_residual:.3e}"
            )


def run_cousin(args: argparse.Namespace, config: EngineConfig) -> RunReport:
    report = RunReport(command=f"cousin {args.action}")
    p = CousinParams(k=args.k, base=read_series(report, args.series))
    if args.action == "front":
        diagram = front_diagram(p, config)
        report.results["front"] = diagram.model_dump()
        report.warnings += diagram.warnings
        report.summary += [
            f"crossing t1={crossing.t1:.10f} t2={crossing.t2:.10f} "
            f"sign={crossing.sign:+d}"
            for crossing in diagram.crossings
        ]
        report.summary.append(f"cusps: {len(diagram.cusps)}")
    elif args.action == "check":
        _check(report, args, p, config)
    else:
        write_or_print(report, args, render_front_svg(p, config))
    return report


def _nonnegative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0: {text}")
    return value


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        "cousin", help="Legendrian cousin L_k of a holonomic curve"
    )
    parser.add_argument(
        "action",
        choices=("front", "check", "svg"),
        help="front crossings and cusps, tangency and diagram checks, or "
        "SVG front",
    )
    parser.add_argument("series", help="Fourier series JSON file")
    parser.add_argument("--k", type=_nonnegative, default=1, help="k of L_k")
    parser.add_argument(
        "--dasbach",
        type=int,
        metavar="M",
        help="also check the isotopy from L_M to L_k",
    )
    parser.add_argument(
        "--verbatim",
        action="store_true",
        help="use the uncorrected isotopy coefficients",
    )
    parser.add_argument("--output", help="write SVG output here")
    parser.set_defaults(handler=run_cousin)
