"""Legendrian cousins of holonomic curves.

For k >= 1 the curve
L_k(t) = (-f, f'^(2k+1), -(2k+1) f'^(2k-1) f'') is tangent to the contact
planes of alpha = z dx - dv; its (x, v) front shares the crossings of the
holonomic projection and has a cusp wherever f' vanishes.
"""

__all__ = [
    "CousinParams",
    "TangencyReport",
    "FrontCrossing",
    "FrontDiagram",
    "DasbachRow",
    "DasbachReport",
    "DiagramEquivalence",
    "DASBACH_VERBATIM_WARNING",
    "cousin_jet",
    "sample_cousin",
    "tangency_residual",
    "half_space_map",
    "half_space_map_curve",
    "front_diagram",
    "front_crossing_sign",
    "dasbach_isotopy_jet",
    "sample_dasbach_isotopy",
    "dasbach_isotopy_report",
    "diagram_equivalence",
    "holonomic_samples_off_axis",
]

import collections.abc
import typing

import numpy as np
import pydantic
import structlog

from .config import EngineConfig
from .curve_engine import (
    FourierSeries,
    Jet,
    SampledCurve,
    double_points,
    eval_jet,
    genericity_report,
    scan_self_intersections,
    zeros_on_cycle,
)
from .errors import (
    CurveConditionError,
    DegenerateCurveError,
    IndeterminateCrossingError,
    InputError,
    NotAFrontError,
)

DASBACH_VERBATIM_WARNING = (
    "verbatim isotopy formula: the f'^(2m-1) term carries the coefficient "
    "(2k+1) instead of (2m+1), so the curve is not Legendrian for s < 1 "
    "when k != m, and s=0 gives the v coordinate of L_m, not of L_k"
)

FormT = typing.Literal["alpha", "beta"]

log = structlog.get_logger("Legendrian")


class CousinParams(pydantic.BaseModel):
    """Selects the cousin L_k of the holonomic curve of ``base``.

    k=0 gives the holonomic curve itself.
    """

    model_config = pydantic.ConfigDict(frozen=True)

    k: int = pydantic.Field(default=1, ge=0, title="Cousin index.")
    base: FourierSeries


def _derivatives(f: FourierSeries, t: typing.Any) -> list[typing.Any]:
    return [f.derivative(order)(t) for order in range(4)]


def _cousin_terms(
    first: typing.Any,
    second: typing.Any,
    third: typing.Any,
    k: int,
    z_coefficient: None | int = None,
) -> tuple[typing.Any, typing.Any, typing.Any, typing.Any]:
    """v, z and their t-derivatives for L_k.

    ``z_coefficient`` replaces the factor 2k+1 of z.
    """
    if k == 0:
        return first, -second, second, -third
    n = 2 * k + 1
    c = n if z_coefficient is None else z_coefficient
    v = first**n
    dv = n * first ** (n - 1) * second
    z = -c * first ** (n - 2) * second
    dz = -c * (
        (n - 2) * first ** (n - 3) * second**2 + first ** (n - 2) * third
    )
    return v, z, dv, dz


def cousin_jet(p: CousinParams, t: typing.Any) -> Jet:
    """Evaluate L_k at ``t`` (a number or numpy array).

    The middle fields of the returned `Jet` hold v and dv.
    """
    f0, f1, f2, f3 = _derivatives(p.base, t)
    v, z, dv, dz = _cousin_terms(f1, f2, f3, p.k)
    return Jet(x=-f0, y=v, z=z, dx=-f1, dy=dv, dz=dz)


def _grid(config: EngineConfig) -> typing.Any:
    size = config.grid_size
    return np.arange(size, dtype=float) * (2 * np.pi / size)


def sample_cousin(
    p: CousinParams, config: None | EngineConfig = None
) -> SampledCurve:
    config = EngineConfig() if config is None else config
    t = _grid(config)
    return SampledCurve.from_jet(t, cousin_jet(p, t))


class TangencyReport(pydantic.BaseModel):
    """Largest contact-form residual over a set of samples.

    The relative residual divides by max(1, |z x'|, |v'|) pointwise.
    """

    form: FormT
    samples: int
    max_residual: float
    max_relative_residual: float
    is_tangent: bool


def tangency_residual(
    samples: SampledCurve,
    form: FormT = "alpha",
    config: None | EngineConfig = None,
) -> TangencyReport:
    """Evaluate a contact form on sampled tangent vectors.

    alpha = z dx - dv reads the middle coordinate as v;
    beta = z dx - y dy reads it as y.

    Raises
    ------
    CurveConditionError
        If beta is requested and a sample lies within the axis tolerance
        of the plane y = 0, where beta does not define a plane field.
    InputError
        If ``form`` is unknown.
    """
    config = EngineConfig() if config is None else config
    lhs = samples.z * samples.dx
    if form == "alpha":
        rhs = samples.dy
    elif form == "beta":
        if np.any(np.abs(samples.y) < config.axis_tolerance):
            raise CurveConditionError(
                "beta is degenerate on y=0; mask those samples first"
            )
        rhs = samples.y * samples.dy
    else:
        raise InputError(f"unknown contact form {form!r}")
    residual = np.abs(lhs - rhs)
    scale = np.maximum(1.0, np.maximum(np.abs(lhs), np.abs(rhs)))
    max_residual = float(np.max(residual, initial=0.0))
    max_relative = float(np.max(residual / scale, initial=0.0))
    return TangencyReport(
        form=form,
        samples=len(samples),
        max_residual=max_residual,
        max_relative_residual=max_relative,
        is_tangent=max_relative < config.tangency_tolerance,
    )


def half_space_map(
    point: tuple[float, float, float]
) -> tuple[float, float, float]:
    """(x, y, z) -> (x, y^2/2, z).

    Carries beta-tangent curves in y > 0 (and in y < 0) to alpha-tangent
    curves in v > 0; it folds the two half-spaces together and is not
    invertible on y = 0.
    """
    x, y, z = point
    return x, y * y / 2, z


def half_space_map_curve(samples: SampledCurve) -> SampledCurve:
    """`half_space_map` applied to sampled points and tangents."""
    return SampledCurve(
        t=samples.t,
        x=samples.x,
        y=samples.y**2 / 2,
        z=samples.z,
        dx=samples.dx,
        dy=samples.y * samples.dy,
        dz=samples.dz,
    )


class FrontCrossing(pydantic.BaseModel):
    model_config = pydantic.ConfigDict(frozen=True)

    t1: float
    t2: float
    x: float
    v: float
    sign: int


class FrontDiagram(pydantic.BaseModel):
    """Crossings and cusps of the (x, v) front of L_k."""

    k: int
    crossings: list[FrontCrossing] = pydantic.Field(default_factory=list)
    cusps: list[float] = pydantic.Field(default_factory=list)
    warnings: list[str] = pydantic.Field(default_factory=list)


def front_crossing_sign(
    branch1: Jet, branch2: Jet, config: None | EngineConfig = None
) -> int:
    """Sign of a front crossing from the two branches' cousin jets.

    Branches crossing a vertical line in the same x direction give -1,
    in opposite directions +1. This is checked against the space curve:
    the branch with the larger z is over, and the sign is that of the
    cross product of the over and under (x, v) tangents.

    Raises
    ------
    IndeterminateCrossingError
        If the branches have nearly equal slopes or one is nearly
        vertical.
    """
    config = EngineConfig() if config is None else config
    tolerance = config.transversality_tolerance
    if min(abs(branch1.dx), abs(branch2.dx)) <= tolerance:
        raise IndeterminateCrossingError(
            "a branch is vertical at the crossing"
        )
    if abs(branch1.z - branch2.z) <= tolerance:
        raise IndeterminateCrossingError(
            f"branch slopes {branch1.z:.12g} and {branch2.z:.12g} are "
            f"within {tolerance}"
        )
    rule = -1 if branch1.dx * branch2.dx > 0 else 1
    over, under = (
        (branch1, branch2) if branch1.z > branch2.z else (branch2, branch1)
    )
    cross = over.dx * under.dy - over.dy * under.dx
    if (1 if cross > 0 else -1) != rule:
        raise IndeterminateCrossingError(
            f"direction rule gives {rule:+d} but the over/under geometry "
            "disagrees"
        )
    return rule


def _front_projection(
    p: CousinParams,
) -> tuple[
    collections.abc.Callable[[typing.Any], tuple[typing.Any, typing.Any]],
    collections.abc.Callable[[typing.Any], tuple[typing.Any, typing.Any]],
]:
    def position(t: typing.Any) -> tuple[typing.Any, typing.Any]:
        jet = cousin_jet(p, t)
        return jet.x, jet.y

    def velocity(t: typing.Any) -> tuple[typing.Any, typing.Any]:
        jet = cousin_jet(p, t)
        return jet.dx, jet.dy

    return position, velocity


def front_diagram(
    p: CousinParams, config: None | EngineConfig = None
) -> FrontDiagram:
    """Find the crossings and cusps of the front of L_k.

    Crossings are searched on the (x, v) projection itself, independently
    of the holonomic double points.

    Raises
    ------
    NotAFrontError
        If k=0.
    CurveConditionError
        If the base curve fails genericity conditions 1-3.
    DegenerateCurveError
        If f' has a non-simple zero.
    IndeterminateCrossingError
        If a crossing cannot be signed.
    """
    if p.k == 0:
        raise NotAFrontError(
            "k=0 is the holonomic curve, whose xy projection has vertical "
            "tangencies instead of cusps"
        )
    config = EngineConfig() if config is None else config
    report = genericity_report(p.base, config)
    failed = [index for index in report.failed_conditions() if index < 4]
    if failed:
        raise CurveConditionError(f"genericity conditions {failed} fail")
    cusps = zeros_on_cycle(p.base, 1, config)
    if len(cusps) % 2:
        raise DegenerateCurveError(f"odd number of cusps: {len(cusps)}")
    scan = scan_self_intersections(*_front_projection(p), config)
    crossings = []
    for t1, t2 in scan.pairs:
        branch1 = cousin_jet(p, t1)
        branch2 = cousin_jet(p, t2)
        crossings.append(
            FrontCrossing(
                t1=t1,
                t2=t2,
                x=branch1.x,
                v=branch1.y,
                sign=front_crossing_sign(branch1, branch2, config),
            )
        )
    warnings = [
        f"Newton did not converge from ({t1:.12g}, {t2:.12g})"
        for t1, t2 in scan.failures
    ]
    log.info(
        "front diagram",
        k=p.k,
        crossings=len(crossings),
        cusps=len(cusps),
    )
    return FrontDiagram(
        k=p.k, crossings=crossings, cusps=list(cusps), warnings=warnings
    )


def _check_isotopy_indices(k: int, m: int) -> None:
    if k < 1 or m < 1:
        raise InputError(f"isotopy needs k, m >= 1, got k={k}, m={m}")


def dasbach_isotopy_jet(
    f: FourierSeries,
    k: int,
    m: int,
    s: float,
    t: typing.Any,
    verbatim: bool = False,
) -> Jet:
    """Evaluate the isotopy from L_m (s=0) to L_k (s=1).

    v and z are the s-weighted averages of those of L_k and L_m, which
    keeps the curve Legendrian for every s. With ``verbatim`` the z term
    of L_m uses the coefficient 2k+1 instead of 2m+1; that variant is
    kept for comparison and is not Legendrian when k != m.

    Raises
    ------
    InputError
        If k or m is less than 1.
    """
    _check_isotopy_indices(k, m)
    f0, f1, f2, f3 = _derivatives(f, t)
    terms_k = _cousin_terms(f1, f2, f3, k)
    terms_m = _cousin_terms(
        f1, f2, f3, m, z_coefficient=2 * k + 1 if verbatim else None
    )
    v, z, dv, dz = (s * a + (1 - s) * b for a, b in zip(terms_k, terms_m))
    return Jet(x=-f0, y=v, z=z, dx=-f1, dy=dv, dz=dz)


def sample_dasbach_isotopy(
    f: FourierSeries,
    k: int,
    m: int,
    s: float,
    verbatim: bool = False,
    config: None | EngineConfig = None,
) -> SampledCurve:
    config = EngineConfig() if config is None else config
    t = _grid(config)
    return SampledCurve.from_jet(
        t, dasbach_isotopy_jet(f, k, m, s, t, verbatim)
    )


class DasbachRow(pydantic.BaseModel):
    s: float
    max_residual: float
    max_relative_residual: float
    is_tangent: bool


class DasbachReport(pydantic.BaseModel):
    k: int
    m: int
    verbatim: bool
    rows: list[DasbachRow]
    warnings: list[str] = pydantic.Field(default_factory=list)

    @pydantic.computed_field  # type: ignore[misc]
    @property
    def all_tangent(self) -> bool:
        return all(row.is_tangent for row in self.rows)


def dasbach_isotopy_report(
    f: FourierSeries,
    k: int,
    m: int,
    s_values: collections.abc.Iterable[float] = (0.0, 0.25, 0.5, 0.75, 1.0),
    verbatim: bool = False,
    config: None | EngineConfig = None,
) -> DasbachReport:
    """Tabulate the alpha residual of the isotopy at each s.

    Raises
    ------
    InputError
        If k or m is less than 1.
    """
    _check_isotopy_indices(k, m)
    config = EngineConfig() if config is None else config
    rows = []
    for s in s_values:
        samples = sample_dasbach_isotopy(f, k, m, s, verbatim, config)
        tangency = tangency_residual(samples, "alpha", config)
        rows.append(
            DasbachRow(
                s=s,
                max_residual=tangency.max_residual,
                max_relative_residual=tangency.max_relative_residual,
                is_tangent=tangency.is_tangent,
            )
        )
    warnings = []
    if verbatim:
        log.warning("verbatim isotopy formula", k=k, m=m)
        warnings.append(DASBACH_VERBATIM_WARNING)
    return DasbachReport(
        k=k, m=m, verbatim=verbatim, rows=rows, warnings=warnings
    )


class DiagramEquivalence(pydantic.BaseModel):
    """Comparison of the front of L_k with the holonomic projection.

    ``max_pair_difference`` is the largest parameter difference between
    matched crossings and ``max_cusp_difference`` that between cusps and
    axis crossings of the holonomic projection; both are None when the
    counts differ.
    """

    k: int
    holonomic_crossings: int
    front_crossings: int
    cusps: int
    axis_crossings: int
    max_pair_difference: None | float
    max_cusp_difference: None | float
    signs_transferred: bool
    equivalent: bool


def diagram_equivalence(
    f: FourierSeries, k: int = 1, config: None | EngineConfig = None
) -> DiagramEquivalence:
    """Check that the front of L_k and the xy projection of the holonomic
    curve have the same crossings, that cusps sit at the axis crossings,
    and that front signs equal holonomic signs above the x axis and are
    opposite below it.

    Raises
    ------
    NotAFrontError
        If k=0.
    """
    config = EngineConfig() if config is None else config
    front = front_diagram(CousinParams(k=k, base=f), config)
    holonomic = double_points(f, config)
    axis = zeros_on_cycle(f, 1, config)

    pair_difference: None | float = None
    signs_transferred = len(front.crossings) == len(holonomic)
    if len(front.crossings) == len(holonomic):
        pair_difference = 0.0
        for crossing, dp in zip(front.crossings, holonomic):
            pair_difference = max(
                pair_difference,
                abs(crossing.t1 - dp.t1),
                abs(crossing.t2 - dp.t2),
            )
            upper = dp.half_plane == "upper"
            expected = dp.sign if upper else -dp.sign
            if crossing.sign != expected:
                signs_transferred = False

    cusp_difference: None | float = None
    if len(front.cusps) == len(axis):
        cusp_difference = max(
            (abs(a - b) for a, b in zip(front.cusps, axis)), default=0.0
        )

    tolerance = config.match_tolerance
    equivalent = (
        pair_difference is not None
        and pair_difference < tolerance
        and cusp_difference is not None
        and cusp_difference < tolerance
        and signs_transferred
    )
    return DiagramEquivalence(
        k=k,
        holonomic_crossings=len(holonomic),
        front_crossings=len(front.crossings),
        cusps=len(front.cusps),
        axis_crossings=len(axis),
        max_pair_difference=pair_difference,
        max_cusp_difference=cusp_difference,
        signs_transferred=signs_transferred,
        equivalent=equivalent,
    )


def holonomic_samples_off_axis(
    f: FourierSeries, min_abs_y: float, config: None | EngineConfig = None
) -> SampledCurve:
    """Holonomic samples of ``f`` with |y| > ``min_abs_y``."""
    config = EngineConfig() if config is None else config
    t = _grid(config)
    samples = SampledCurve.from_jet(t, eval_jet(f, t))
    return samples.mask(np.abs(samples.y) > min_abs_y)
