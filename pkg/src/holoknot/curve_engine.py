"""Holonomic curves of trigonometric series.

A 2pi-periodic function f defines the space curve
(x, y, z) = (-f(t), f'(t), -f''(t)). This module evaluates that curve,
checks the conditions under which its xy projection is a generic closed
braid diagram, and reads the braid word off the projection.
"""

__all__ = [
    "TWO_PI",
    "FourierSeries",
    "Jet",
    "SampledCurve",
    "DoublePoint",
    "DoublePointScan",
    "ConditionResult",
    "GenericityReport",
    "load_fourier_series",
    "eval_jet",
    "sample_curve",
    "zeros_on_cycle",
    "scan_self_intersections",
    "double_points",
    "crossing_sign",
    "genericity_report",
    "braid_axis_point",
    "winding_rate",
    "extract_braid",
    "samples_csv",
]

import collections.abc
import dataclasses
import io
import math
import typing

import numpy as np
import numpy.typing as npt
import pydantic
import structlog
from scipy.optimize import brentq, minimize_scalar

from .braid_core import BraidWord
from .config import EngineConfig
from .errors import (
    CurveConditionError,
    DegenerateCurveError,
    InputError,
    NoSeparatingPointError,
    StrandOrderError,
    ToleranceError,
    WindingError,
)

TWO_PI = 2 * math.pi

# Rows of the segment-pair matrix handled per numpy block.
SCAN_BLOCK = 256

# Relative size below which a local minimum of |g| is probed for a
# tangential zero, and below which that minimum counts as a zero.
TANGENTIAL_PROBE = 1e-3
TANGENTIAL_ZERO = 1e-9

# Relative |g'| below which a bracketed root is not simple.
SIMPLE_ROOT_SLOPE = 1e-7

# Extra grid doublings tried when a ray misses some strands.
RAY_RETRIES = 3

ArrayT = npt.NDArray[np.float64]
CurveFunctionT = collections.abc.Callable[[ArrayT], tuple[ArrayT, ArrayT]]

log = structlog.get_logger("CurveEngine")


class FourierSeries(pydantic.BaseModel):
    """f(t) = constant + sum_k sin_coeffs[k-1] sin(kt) + cos_coeffs[k-1]
    cos(kt), period 2pi.

    In JSON documents the coefficient lists are named ``sin`` and ``cos``.
    """

    model_config = pydantic.ConfigDict(
        frozen=True, populate_by_name=True, extra="forbid"
    )

    constant: float = pydantic.Field(default=0.0, title="Constant term.")
    sin_coeffs: tuple[float, ...] = pydantic.Field(
        default=(), alias="sin", title="Coefficients of sin(kt), k=1.."
    )
    cos_coeffs: tuple[float, ...] = pydantic.Field(
        default=(), alias="cos", title="Coefficients of cos(kt), k=1.."
    )

    @pydantic.field_validator("constant")
    @classmethod
    def _check_constant(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError(f"constant={value} is not finite")
        return value

    @pydantic.field_validator("sin_coeffs", "cos_coeffs")
    @classmethod
    def _check_coeffs(cls, value: tuple[float, ...]) -> tuple[float, ...]:
        bad = [coeff for coeff in value if not math.isfinite(coeff)]
        if bad:
            raise ValueError(f"coefficients {bad} are not finite")
        return value

    @property
    def degree(self) -> int:
        return max(len(self.sin_coeffs), len(self.cos_coeffs))

    def _padded(self) -> tuple[ArrayT, ArrayT]:
        m = self.degree
        sin_coeffs = np.zeros(m)
        cos_coeffs = np.zeros(m)
        sin_coeffs[: len(self.sin_coeffs)] = self.sin_coeffs
        cos_coeffs[: len(self.cos_coeffs)] = self.cos_coeffs
        return sin_coeffs, cos_coeffs

    def is_zero(self) -> bool:
        return self.constant == 0 and not any(
            self.sin_coeffs + self.cos_coeffs
        )

    def is_constant(self) -> bool:
        return not any(self.sin_coeffs + self.cos_coeffs)

    def derivative(self, order: int = 1) -> "FourierSeries":
        """The termwise derivative of the given order.

        Raises
        ------
        InputError
            If ``order`` is negative.
        """
        if order < 0:
            raise InputError(f"order={order} must be non-negative")
        if order == 0:
            return self
        sin_coeffs, cos_coeffs = self._padded()
        k = np.arange(1, self.degree + 1, dtype=float)
        for _ in range(order):
            sin_coeffs, cos_coeffs = -k * cos_coeffs, k * sin_coeffs
        return FourierSeries(
            constant=0.0,
            sin_coeffs=tuple(float(value) for value in sin_coeffs),
            cos_coeffs=tuple(float(value) for value in cos_coeffs),
        )

    @typing.overload
    def __call__(self, t: float) -> float:
        ...

    @typing.overload
    def __call__(self, t: ArrayT) -> ArrayT:
        ...

    def __call__(self, t: typing.Any) -> typing.Any:
        values = np.asarray(t, dtype=float)
        result = np.full(values.shape, self.constant)
        if self.degree:
            sin_coeffs, cos_coeffs = self._padded()
            k = np.arange(1, self.degree + 1, dtype=float)
            angles = np.multiply.outer(values, k)
            result = (
                result + np.sin(angles) @ sin_coeffs
            ) + np.cos(angles) @ cos_coeffs
        if np.ndim(t) == 0:
            return float(result)
        return result


def load_fourier_series(text: str) -> FourierSeries:
    """Parse a JSON document ``{"constant": c, "sin": [...], "cos": [...]}``.

    Raises
    ------
    InputError
        If the document is not valid.
    """
    try:
        return FourierSeries.model_validate_json(text)
    except pydantic.ValidationError as e:
        raise InputError(f"Invalid Fourier series document: {e}") from e


class Jet(typing.NamedTuple):
    """Position and velocity of a space curve at one or more parameters."""

    x: typing.Any
    y: typing.Any
    z: typing.Any
    dx: typing.Any
    dy: typing.Any
    dz: typing.Any


def eval_jet(f: FourierSeries, t: typing.Any) -> Jet:
    """Evaluate (x, y, z) = (-f, f', -f'') and its t-derivative.

    ``t`` may be a number or a numpy array.
    """
    values = [f.derivative(order)(t) for order in range(4)]
    return Jet(
        x=-values[0],
        y=values[1],
        z=-values[2],
        dx=-values[1],
        dy=values[2],
        dz=-values[3],
    )


@dataclasses.dataclass(frozen=True)
class SampledCurve:
    """A space curve (x, y, z) and its t-derivatives sampled on a grid.

    The middle coordinate is y for holonomic curves and v for Legendrian
    ones.
    """

    t: ArrayT
    x: ArrayT
    y: ArrayT
    z: ArrayT
    dx: ArrayT
    dy: ArrayT
    dz: ArrayT

    @classmethod
    def from_jet(cls, t: ArrayT, jet: Jet) -> "SampledCurve":
        return cls(t, *(np.asarray(value, dtype=float) for value in jet))

    def __len__(self) -> int:
        return len(self.t)

    def mask(self, keep: npt.NDArray[np.bool_]) -> "SampledCurve":
        """The samples where ``keep`` is true."""
        return SampledCurve(
            *(
                getattr(self, field.name)[keep]
                for field in dataclasses.fields(self)
            )
        )


def _grid(size: int) -> ArrayT:
    return np.arange(size, dtype=float) * (TWO_PI / size)


def sample_curve(
    f: FourierSeries, config: None | EngineConfig = None
) -> SampledCurve:
    """Sample the holonomic curve of ``f`` on ``config.grid_size``
    evenly spaced parameters."""
    config = EngineConfig() if config is None else config
    t = _grid(config.grid_size)
    return SampledCurve.from_jet(t, eval_jet(f, t))


def samples_csv(samples: SampledCurve) -> str:
    """Render samples as CSV with columns t, x, y, z."""
    buffer = io.StringIO()
    np.savetxt(
        buffer,
        np.column_stack([samples.t, samples.x, samples.y, samples.z]),
        delimiter=",",
        header="t,x,y,z",
        comments="",
        fmt="%.17g",
    )
    return buffer.getvalue()


def _circular_distance(a: float, b: float) -> float:
    d = abs(a - b) % TWO_PI
    return min(d, TWO_PI - d)


def zeros_on_cycle(
    f: FourierSeries, order: int = 0, config: None | EngineConfig = None
) -> tuple[float, ...]:
    """The zeros in [0, 2pi) of f or one of its derivatives.

    Parameters
    ----------
    f
        The series.
    order
        0 for the zeros of f, 1 for f', 2 for f''.
    config
        Grid size and tolerances; None means defaults.

    Returns
    -------
    zeros
        Sorted roots, refined by Brent's method.

    Raises
    ------
    DegenerateCurveError
        If the function vanishes identically or has a non-simple zero.
    """
    config = EngineConfig() if config is None else config
    g = f.derivative(order)
    if g.is_zero():
        raise DegenerateCurveError(f"derivative {order} of f is identically 0")
    slope = g.derivative()
    size = config.grid_size
    step = TWO_PI / size
    grid = _grid(size)
    values = g(grid)
    scale = float(np.max(np.abs(values)))
    slope_scale = max(float(np.max(np.abs(slope(grid)))), scale)

    roots = [float(value) for value in grid[values == 0]]
    following = np.roll(values, -1)
    for index in np.nonzero(values * following < 0)[0]:
        start = float(grid[index])
        roots.append(
            brentq(
                g,
                start,
                start + step,
                xtol=config.root_tolerance * 1e-2,
            )
            % TWO_PI
        )

    magnitude = np.abs(values)
    previous = np.roll(values, 1)
    probe = np.nonzero(
        (magnitude <= np.abs(previous))
        & (magnitude <= np.abs(following))
        & (values * previous > 0)
        & (values * following > 0)
        & (magnitude < TANGENTIAL_PROBE * scale)
    )[0]
    for index in probe:
        center = float(grid[index])
        result = minimize_scalar(
            lambda t: abs(g(t)),
            bounds=(center - step, center + step),
            method="bounded",
            options={"xatol": config.root_tolerance},
        )
        if result.fun < TANGENTIAL_ZERO * scale:
            raise DegenerateCurveError(
                f"tangential zero of derivative {order} near "
                f"t={result.x % TWO_PI:.12g}"
            )

    roots.sort()
    unique: list[float] = []
    for root in roots:
        if unique and root - unique[-1] < 1e-9:
            continue
        unique.append(root)
    if len(unique) > 1 and _circular_distance(unique[0], unique[-1]) < 1e-9:
        unique.pop()
    for root in unique:
        if abs(slope(root)) < SIMPLE_ROOT_SLOPE * slope_scale:
            raise DegenerateCurveError(
                f"non-simple zero of derivative {order} at t={root:.12g}"
            )
    return tuple(unique)


@dataclasses.dataclass(frozen=True)
class DoublePointScan:
    """Raw self-intersections of a closed plane curve.

    Attributes
    ----------
    pairs
        Parameter pairs (t1, t2), t1 < t2, sorted.
    failures
        Grid candidates on which Newton's method did not converge.
    triple_points
        Parameters shared by two or more pairs.
    """

    pairs: tuple[tuple[float, float], ...]
    failures: tuple[tuple[float, float], ...] = ()
    triple_points: tuple[float, ...] = ()


def _segment_crossings(
    u: ArrayT, w: ArrayT
) -> collections.abc.Iterator[tuple[int, int, float, float]]:
    """Crossings of non-adjacent segments of the closed polyline (u, w).

    Yields (i, j, s, r) with segment i at fraction s meeting segment j
    at fraction r, i < j.
    """
    n = len(u)
    du = np.roll(u, -1) - u
    dw = np.roll(w, -1) - w
    columns = np.arange(n)
    for start in range(0, n, SCAN_BLOCK):
        rows = np.arange(start, min(start + SCAN_BLOCK, n))
        offset_u = u[None, :] - u[rows, None]
        offset_w = w[None, :] - w[rows, None]
        row_du = du[rows, None]
        row_dw = dw[rows, None]
        denominator = row_du * dw[None, :] - row_dw * du[None, :]
        with np.errstate(divide="ignore", invalid="ignore"):
            s = (offset_u * dw[None, :] - offset_w * du[None, :]) / denominator
            r = (offset_u * row_dw - offset_w * row_du) / denominator
        hits = (
            (denominator != 0)
            & (s >= 0)
            & (s < 1)
            & (r >= 0)
            & (r < 1)
            & (columns[None, :] > rows[:, None] + 1)
            & ~((rows[:, None] == 0) & (columns[None, :] == n - 1))
        )
        for row, column in zip(*np.nonzero(hits)):
            yield (
                int(rows[row]),
                int(column),
                float(s[row, column]),
                float(r[row, column]),
            )


def _newton_pair(
    position: CurveFunctionT,
    velocity: CurveFunctionT,
    t1: float,
    t2: float,
    config: EngineConfig,
) -> None | tuple[float, float]:
    """Solve position(t1) = position(t2) starting from (t1, t2).

    The residual bound is relative once a coordinate exceeds 1.
    """
    t = np.array([t1, t2])
    for _ in range(config.newton_max_iterations):
        u, w = position(t)
        residual = np.array([u[0] - u[1], w[0] - w[1]])
        du, dw = velocity(t)
        jacobian = np.array([[du[0], -du[1]], [dw[0], -dw[1]]])
        try:
            correction = np.linalg.solve(jacobian, -residual)
        except np.linalg.LinAlgError:
            return None
        t = t + correction
        if not np.all(np.isfinite(t)):
            return None
        if np.max(np.abs(correction)) < config.root_tolerance:
            break
    u, w = position(t)
    scale = max(1.0, abs(u[0]), abs(w[0]))
    if math.hypot(u[0] - u[1], w[0] - w[1]) >= config.match_tolerance * scale:
        return None
    return float(t[0]), float(t[1])


def scan_self_intersections(
    position: CurveFunctionT,
    velocity: CurveFunctionT,
    config: None | EngineConfig = None,
) -> DoublePointScan:
    """Find the double points of a closed 2pi-periodic plane curve.

    Crossings of the sampled polyline seed a 2D Newton iteration on
    position(t1) - position(t2); converged pairs are reduced mod 2pi,
    ordered, cleared of near-diagonal solutions and deduplicated.

    Parameters
    ----------
    position
        Maps an array of parameters to the arrays of both coordinates.
    velocity
        The t-derivative of ``position``.
    config
        Grid size and tolerances; None means defaults.
    """
    config = EngineConfig() if config is None else config
    size = config.grid_size
    step = TWO_PI / size
    grid = _grid(size)
    u, w = position(grid)
    radius = config.dedupe_radius
    pairs: list[tuple[float, float]] = []
    failures: list[tuple[float, float]] = []
    for i, j, s, r in _segment_crossings(u, w):
        guess = (float(grid[i] + s * step), float(grid[j] + r * step))
        solved = _newton_pair(position, velocity, *guess, config)
        if solved is None:
            failures.append(guess)
            log.warning(
                "double point did not converge", t1=guess[0], t2=guess[1]
            )
            continue
        t1, t2 = sorted(value % TWO_PI for value in solved)
        if _circular_distance(t1, t2) < radius:
            continue
        if any(
            _circular_distance(t1, a) < radius
            and _circular_distance(t2, b) < radius
            or _circular_distance(t1, b) < radius
            and _circular_distance(t2, a) < radius
            for a, b in pairs
        ):
            continue
        pairs.append((t1, t2))
    pairs.sort()

    triple_points: list[float] = []
    for index, pair in enumerate(pairs):
        for other in pairs[index + 1 :]:
            for a in pair:
                for b in other:
                    if _circular_distance(a, b) < radius and not any(
                        _circular_distance(a, c) < radius
                        for c in triple_points
                    ):
                        triple_points.append(a)
    return DoublePointScan(
        pairs=tuple(pairs),
        failures=tuple(failures),
        triple_points=tuple(sorted(triple_points)),
    )


def _holonomic_projection(
    f: FourierSeries,
) -> tuple[CurveFunctionT, CurveFunctionT]:
    first = f.derivative(1)
    second = f.derivative(2)

    def position(t: ArrayT) -> tuple[ArrayT, ArrayT]:
        return -f(t), first(t)

    def velocity(t: ArrayT) -> tuple[ArrayT, ArrayT]:
        return -first(t), second(t)

    return position, velocity


class DoublePoint(pydantic.BaseModel):
    """A crossing of the xy projection, signed by the half-plane rule."""

    model_config = pydantic.ConfigDict(frozen=True)

    t1: float
    t2: float
    x: float
    y: float
    sign: int
    half_plane: typing.Literal["upper", "lower"]

    @property
    def xy(self) -> tuple[float, float]:
        return self.x, self.y


def _double_point(f: FourierSeries, t1: float, t2: float) -> DoublePoint:
    y = f.derivative(1)(t1)
    upper = y > 0
    return DoublePoint(
        t1=t1,
        t2=t2,
        x=-f(t1),
        y=y,
        sign=-1 if upper else 1,
        half_plane="upper" if upper else "lower",
    )


def double_points(
    f: FourierSeries, config: None | EngineConfig = None
) -> tuple[DoublePoint, ...]:
    """The double points of the xy projection (-f, f'), sorted by (t1, t2).

    Candidates where Newton's method fails are logged and skipped.
    """
    scan = scan_self_intersections(*_holonomic_projection(f), config)
    return tuple(_double_point(f, t1, t2) for t1, t2 in scan.pairs)


def crossing_sign(
    f: FourierSeries, dp: DoublePoint, config: None | EngineConfig = None
) -> int:
    """Sign of a crossing, by the half-plane rule checked against the
    over/under geometry.

    The rule gives -1 above the x axis and +1 below it. Independently,
    the branch with the larger z = -f'' is over, and the sign is that of
    the cross product of the over and under tangents.

    Raises
    ------
    CurveConditionError
        If the crossing is on the x axis or the branches meet in space.
    ToleranceError
        If the two computations disagree.
    """
    config = EngineConfig() if config is None else config
    jet1 = eval_jet(f, dp.t1)
    jet2 = eval_jet(f, dp.t2)
    if abs(jet1.y) <= config.axis_tolerance:
        raise CurveConditionError(
            f"double point ({dp.t1:.12g}, {dp.t2:.12g}) lies on the x axis"
        )
    if abs(jet1.z - jet2.z) <= config.transversality_tolerance:
        raise CurveConditionError(
            f"branches at ({dp.t1:.12g}, {dp.t2:.12g}) meet in space"
        )
    rule = -1 if jet1.y > 0 else 1
    over, under = (jet1, jet2) if jet1.z > jet2.z else (jet2, jet1)
    cross = over.dx * under.dy - over.dy * under.dx
    direct = 1 if cross > 0 else -1
    if direct != rule:
        raise ToleranceError(
            f"crossing ({dp.t1:.12g}, {dp.t2:.12g}): half-plane rule gives "
            f"{rule:+d}, over/under geometry gives {direct:+d}"
        )
    return rule


class ConditionResult(pydantic.BaseModel):
    passed: bool
    diagnostics: list[str] = pydantic.Field(default_factory=list)


class GenericityReport(pydantic.BaseModel):
    """Outcome of the four genericity conditions.

    1. the curve is embedded: no double point has matching z;
    2. no double point lies on the x axis;
    3. there are no triple points;
    4. f and f' have the same number of zeros on a cycle and the
       projection winds about a single point of the x axis.
    """

    condition1: ConditionResult
    condition2: ConditionResult
    condition3: ConditionResult
    condition4: ConditionResult
    zeros_f: None | int = None
    zeros_fprime: None | int = None
    braid_index: None | int = None
    axis_point: None | float = None
    double_point_count: int = 0
    warnings: list[str] = pydantic.Field(default_factory=list)

    @pydantic.computed_field  # type: ignore[misc]
    @property
    def all_pass(self) -> bool:
        return all(
            condition.passed
            for condition in (
                self.condition1,
                self.condition2,
                self.condition3,
                self.condition4,
            )
        )

    def failed_conditions(self) -> list[int]:
        return [
            index
            for index, condition in enumerate(
                (
                    self.condition1,
                    self.condition2,
                    self.condition3,
                    self.condition4,
                ),
                start=1,
            )
            if not condition.passed
        ]


def _count_zeros(
    f: FourierSeries, order: int, config: EngineConfig
) -> tuple[None | int, str]:
    try:
        return len(zeros_on_cycle(f, order, config)), ""
    except DegenerateCurveError as e:
        return None, str(e)


def genericity_report(
    f: FourierSeries, config: None | EngineConfig = None
) -> GenericityReport:
    """Check the four genericity conditions; failures are report entries,
    not exceptions."""
    config = EngineConfig() if config is None else config
    scan = scan_self_intersections(*_holonomic_projection(f), config)
    first = f.derivative(1)
    second = f.derivative(2)

    embedded: list[str] = []
    off_axis: list[str] = []
    for t1, t2 in scan.pairs:
        label = f"({t1:.12g}, {t2:.12g})"
        if abs(second(t1) - second(t2)) <= config.transversality_tolerance:
            embedded.append(f"branches at {label} meet in space")
        if abs(first(t1)) <= config.axis_tolerance:
            off_axis.append(f"double point {label} lies on the x axis")
    triples = [
        f"triple point at t={t:.12g}" for t in scan.triple_points
    ]

    zeros_f, note_f = _count_zeros(f, 0, config)
    zeros_fprime, note_fprime = _count_zeros(f, 1, config)
    counts: list[str] = [note for note in (note_f, note_fprime) if note]
    if not counts:
        if zeros_f == 0:
            counts.append("f has no zeros")
        elif zeros_f != zeros_fprime:
            counts.append(
                f"f has {zeros_f} zeros but f' has {zeros_fprime}"
            )
    axis_point = None
    if not counts:
        try:
            axis_point = braid_axis_point(f, config)
        except (DegenerateCurveError, NoSeparatingPointError) as e:
            counts.append(str(e))

    warnings = [
        f"Newton did not converge from ({t1:.12g}, {t2:.12g})"
        for t1, t2 in scan.failures
    ]
    report = GenericityReport(
        condition1=ConditionResult(passed=not embedded, diagnostics=embedded),
        condition2=ConditionResult(passed=not off_axis, diagnostics=off_axis),
        condition3=ConditionResult(passed=not triples, diagnostics=triples),
        condition4=ConditionResult(passed=not counts, diagnostics=counts),
        zeros_f=zeros_f,
        zeros_fprime=zeros_fprime,
        braid_index=None if counts else typing.cast(int, zeros_f) // 2,
        axis_point=axis_point,
        double_point_count=len(scan.pairs),
        warnings=warnings,
    )
    log.info(
        "genericity checked",
        failed=report.failed_conditions(),
        double_points=report.double_point_count,
        braid_index=report.braid_index,
    )
    return report


def braid_axis_point(
    f: FourierSeries, config: None | EngineConfig = None
) -> float:
    """A point c on the x axis separating the axis crossings with f'' < 0
    (left of c) from those with f'' > 0 (right of c).

    Returns
    -------
    c
        The midpoint of the gap between the two groups.

    Raises
    ------
    DegenerateCurveError
        If f' has no zeros or a non-simple zero.
    NoSeparatingPointError
        If the two groups interleave.
    """
    zeros = np.array(zeros_on_cycle(f, 1, config))
    if len(zeros) == 0:
        raise DegenerateCurveError(
            "f' has no zeros; the curve misses the x axis"
        )
    x = -f(zeros)
    curvature = f.derivative(2)(zeros)
    left = x[curvature < 0]
    right = x[curvature > 0]
    if len(left) == 0 or len(right) == 0:
        raise DegenerateCurveError("f'' has the same sign at all zeros of f'")
    if np.max(left) >= np.min(right):
        raise NoSeparatingPointError(
            f"axis crossings interleave: f''<0 at x up to "
            f"{np.max(left):.12g}, f''>0 at x from {np.min(right):.12g}"
        )
    return float((np.max(left) + np.min(right)) / 2)


def winding_rate(
    f: FourierSeries, c: float, config: None | EngineConfig = None
) -> float:
    """The minimum over the sample grid of (x - c) y' - y x', which is
    positive exactly when the projection winds anticlockwise about (c, 0)
    at every sample."""
    samples = sample_curve(f, config)
    rate = (samples.x - c) * samples.dy - samples.y * samples.dx
    return float(np.min(rate))


def _wrapped_angle(
    f: FourierSeries, c: float, phi: float
) -> collections.abc.Callable[[typing.Any], typing.Any]:
    first = f.derivative(1)

    def angle(t: typing.Any) -> typing.Any:
        theta = np.arctan2(first(t), -f(t) - c) - phi
        return (theta + math.pi) % TWO_PI - math.pi

    return angle


def _ray_radii(
    f: FourierSeries,
    c: float,
    phi: float,
    strands: int,
    config: EngineConfig,
) -> list[float]:
    """Distances from (c, 0) at which the projection meets the ray at
    angle phi."""
    first = f.derivative(1)
    angle = _wrapped_angle(f, c, phi)
    size = config.grid_size
    for _ in range(RAY_RETRIES + 1):
        grid = _grid(size)
        step = TWO_PI / size
        values = angle(grid)
        following = np.roll(values, -1)
        crossings = [float(t) for t in grid[values == 0]]
        brackets = np.nonzero(
            (values * following < 0) & (np.abs(values - following) < math.pi)
        )[0]
        for index in brackets:
            start = float(grid[index])
            crossings.append(
                brentq(
                    angle,
                    start,
                    start + step,
                    xtol=config.root_tolerance * 1e-2,
                )
            )
        if len(crossings) == strands:
            return [
                math.hypot(-f(t) - c, first(t)) for t in sorted(crossings)
            ]
        size *= 2
    raise StrandOrderError(
        f"ray at angle {phi:.12g} meets the curve {len(crossings)} times, "
        f"expected {strands}"
    )


def extract_braid(
    f: FourierSeries, config: None | EngineConfig = None
) -> BraidWord:
    """Read the closed braid off the xy projection.

    Crossings are visited in order of their polar angle about the braid
    axis point, starting from the positive x direction. The strands at a
    crossing are numbered outwards from the axis, and the crossing gives
    sigma_i^sign where i is the number of strands strictly inside it plus
    one.

    Raises
    ------
    CurveConditionError
        If a genericity condition fails.
    NoSeparatingPointError
        If there is no braid axis point.
    StrandOrderError
        If the strands at a crossing cannot be ordered.
    WindingError
        If the projection does not wind anticlockwise about the axis
        point at every sample.
    ToleranceError
        If the two crossing-sign computations disagree.
    """
    config = EngineConfig() if config is None else config
    report = genericity_report(f, config)
    if not report.all_pass:
        raise CurveConditionError(
            f"genericity conditions {report.failed_conditions()} fail"
        )
    strands = typing.cast(int, report.braid_index)
    c = typing.cast(float, report.axis_point)
    rate = winding_rate(f, c, config)
    if rate <= 0:
        raise WindingError(
            f"polar angle about ({c:.12g}, 0) is not increasing; "
            f"winding rate {rate:.6g}"
        )
    radius_tolerance = config.dedupe_radius
    crossings = []
    for dp in double_points(f, config):
        sign = crossing_sign(f, dp, config)
        phi = math.atan2(dp.y, dp.x - c) % TWO_PI
        r0 = math.hypot(dp.x - c, dp.y)
        radii = _ray_radii(f, c, phi, strands, config)
        inside = sum(1 for r in radii if r < r0 - radius_tolerance)
        at_crossing = sum(1 for r in radii if abs(r - r0) <= radius_tolerance)
        if at_crossing != 2:
            raise StrandOrderError(
                f"{at_crossing} strands at radius {r0:.12g} of the crossing "
                f"at angle {phi:.12g}"
            )
        crossings.append((phi, sign * (inside + 1)))
    crossings.sort()
    word = BraidWord(strands, tuple(letter for _, letter in crossings))
    log.info("braid extracted", strands=strands, word=str(word), axis=c)
    return word
