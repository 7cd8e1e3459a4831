"""SVG drawings of holonomic projections and Legendrian fronts.

The under-strand is broken at every crossing; fronts also get a dot at
each cusp. Both axes are scaled independently to fill the canvas.
"""

__all__ = ["render_projection_svg", "render_front_svg"]

import collections.abc
import math
import typing

import numpy as np

from .config import EngineConfig
from .curve_engine import (
    TWO_PI,
    FourierSeries,
    double_points,
    eval_jet,
    sample_curve,
)
from .legendrian import (
    CousinParams,
    cousin_jet,
    front_diagram,
    sample_cousin,
)

CANVAS = 400
MARGIN = 20
STROKE = 2.0
# Radius of the hole cut in the under-strand, in canvas units.
GAP_RADIUS = 8.0
CUSP_RADIUS = 3.0
# Parameter window searched for under-strand samples near a crossing.
GAP_WINDOW = 0.25

ArrayT = typing.Any


def _props(**attributes: typing.Any) -> str:
    return " ".join(
        f'{name.replace("_", "-")}="{value}"'
        for name, value in attributes.items()
    )


def _to_canvas(
    u: ArrayT, w: ArrayT, bounds: tuple[float, float, float, float]
) -> tuple[ArrayT, ArrayT]:
    """Map plane coordinates inside ``bounds`` = (low u, high u, low w,
    high w) onto the canvas with w pointing up."""
    span = CANVAS - 2 * MARGIN
    low_u, high_u, low_w, high_w = bounds
    width_u = high_u - low_u if high_u > low_u else 1.0
    width_w = high_w - low_w if high_w > low_w else 1.0
    canvas_u = MARGIN + span * (np.asarray(u) - low_u) / width_u
    canvas_w = MARGIN + span * (1 - (np.asarray(w) - low_w) / width_w)
    return canvas_u, canvas_w


def _runs(keep: ArrayT) -> list[ArrayT]:
    """Index runs of a closed sample loop where ``keep`` is true."""
    n = len(keep)
    if np.all(keep):
        return [np.append(np.arange(n), 0)]
    start = int(np.nonzero(~keep)[0][0])
    order = (np.arange(n) + start) % n
    runs: list[ArrayT] = []
    current: list[int] = []
    for index in order:
        if keep[index]:
            current.append(int(index))
        elif current:
            runs.append(np.array(current))
            current = []
    if current:
        runs.append(np.array(current))
    return [run for run in runs if len(run) > 1]


def _render(
    t: ArrayT,
    u: ArrayT,
    w: ArrayT,
    under: collections.abc.Iterable[tuple[float, float, float]],
    dots: collections.abc.Iterable[tuple[float, float]],
    title: str,
) -> str:
    """Draw the closed curve (u, w) sampled at t.

    ``under`` holds (t, u, w) of the under-branch at each crossing and
    ``dots`` the plane points that get a glyph.
    """
    dots = list(dots)
    all_u = np.concatenate([u, [d[0] for d in dots]]) if dots else u
    all_w = np.concatenate([w, [d[1] for d in dots]]) if dots else w
    bounds = (
        float(np.min(all_u)),
        float(np.max(all_u)),
        float(np.min(all_w)),
        float(np.max(all_w)),
    )
    canvas_u, canvas_w = _to_canvas(u, w, bounds)

    def place(point_u: float, point_w: float) -> tuple[float, float]:
        pu, pw = _to_canvas(
            np.array([point_u]), np.array([point_w]), bounds
        )
        return float(pu[0]), float(pw[0])

    keep = np.ones(len(t), dtype=bool)
    for t_under, point_u, point_w in under:
        cu, cw = place(point_u, point_w)
        delta = np.abs((t - t_under + math.pi) % TWO_PI - math.pi)
        distance = np.hypot(canvas_u - cu, canvas_w - cw)
        keep &= ~((delta < GAP_WINDOW) & (distance < GAP_RADIUS))

    lines = [
        "<svg "
        + _props(
            xmlns="http://www.w3.org/2000/svg",
            width=CANVAS,
            height=CANVAS,
            viewBox=f"0 0 {CANVAS} {CANVAS}",
        )
        + ">",
        f"  <title>{title}</title>",
    ]
    for run in _runs(keep):
        points = " ".join(
            f"{canvas_u[i]:.3f},{canvas_w[i]:.3f}" for i in run
        )
        lines.append(
            "  <polyline "
            + _props(
                points=points,
                fill="none",
                stroke="black",
                stroke_width=STROKE,
                stroke_linejoin="round",
            )
            + "/>"
        )
    for dot_u, dot_w in dots:
        cu, cw = place(dot_u, dot_w)
        lines.append(
            "  <circle "
            + _props(
                cx=f"{cu:.3f}", cy=f"{cw:.3f}", r=CUSP_RADIUS, fill="red"
            )
            + "/>"
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def render_projection_svg(
    f: FourierSeries, config: None | EngineConfig = None
) -> str:
    """The xy projection of the holonomic curve of ``f``; the branch with
    the smaller z is broken at each crossing."""
    samples = sample_curve(f, config)
    under = []
    for dp in double_points(f, config):
        z1 = eval_jet(f, dp.t1).z
        z2 = eval_jet(f, dp.t2).z
        under.append((dp.t2 if z1 > z2 else dp.t1, dp.x, dp.y))
    return _render(
        samples.t, samples.x, samples.y, under, (), "holonomic projection"
    )


def render_front_svg(
    p: CousinParams, config: None | EngineConfig = None
) -> str:
    """The (x, v) front of L_k with a dot at each cusp.

    Raises
    ------
    NotAFrontError
        If k=0.
    """
    diagram = front_diagram(p, config)
    samples = sample_cousin(p, config)
    under = []
    for crossing in diagram.crossings:
        z1 = cousin_jet(p, crossing.t1).z
        z2 = cousin_jet(p, crossing.t2).z
        t_under = crossing.t2 if z1 > z2 else crossing.t1
        under.append((t_under, crossing.x, crossing.v))
    cusps = []
    for t in diagram.cusps:
        jet = cousin_jet(p, t)
        cusps.append((float(jet.x), float(jet.y)))
    return _render(
        samples.t, samples.x, samples.y, under, cusps, f"front of L_{p.k}"
    )
