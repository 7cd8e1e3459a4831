import math
import random
import unittest

import numpy as np
import pytest

from holoknot.braid_core import BraidWord, exponent_sum
from holoknot.config import EngineConfig
from holoknot.curve_engine import (
    TWO_PI,
    FourierSeries,
    braid_axis_point,
    crossing_sign,
    double_points,
    eval_jet,
    extract_braid,
    genericity_report,
    load_fourier_series,
    sample_curve,
    samples_csv,
    scan_self_intersections,
    winding_rate,
    zeros_on_cycle,
)
from holoknot.errors import (
    CurveConditionError,
    DegenerateCurveError,
    InputError,
    NoSeparatingPointError,
    WindingError,
)
from holoknot.testutils import CATALOG

random.seed(41)

UNKNOT = CATALOG["unknot"]
NEGATIVE_LOOP = CATALOG["unknot_negative_loop"]
POSITIVE_LOOP = CATALOG["unknot_positive_loop"]
TREFOIL = CATALOG["trefoil"]
NO_AXIS = CATALOG["no_axis"]
# A simple closed curve, concave towards its axis point.
KIDNEY = FourierSeries(cos_coeffs=(1.0,), sin_coeffs=(0.0, 0.0, 0.2))


def cyclic_rotations(letters: tuple[int, ...]) -> set[tuple[int, ...]]:
    return {letters[i:] + letters[:i] for i in range(max(len(letters), 1))}


def test_fourier_series() -> None:
    f = FourierSeries(constant=0.5, sin_coeffs=(0.0, 2.0), cos_coeffs=(1.0,))
    assert f.degree == 2
    t = np.linspace(0, TWO_PI, 7)
    expected = 0.5 + 2 * np.sin(2 * t) + np.cos(t)
    np.testing.assert_allclose(f(t), expected, atol=1e-12)
    assert isinstance(f(0.3), float)
    assert f(0.0) == pytest.approx(1.5)

    first = f.derivative()
    np.testing.assert_allclose(
        first(t), 4 * np.cos(2 * t) - np.sin(t), atol=1e-12
    )
    assert f.derivative(0) is f
    with pytest.raises(InputError):
        f.derivative(-1)
    assert FourierSeries().is_zero()
    assert FourierSeries(constant=2.0).is_constant()
    assert not FourierSeries(constant=2.0).is_zero()


def test_derivatives_match_finite_differences() -> None:
    rng = np.random.default_rng(3)
    t = rng.uniform(0, TWO_PI, 1000)
    h = 1e-5
    for f in CATALOG.values():
        for order in (1, 2, 3):
            g = f.derivative(order - 1)
            difference = (g(t + h) - g(t - h)) / (2 * h)
            np.testing.assert_allclose(
                f.derivative(order)(t), difference, atol=1e-7 * 10**order
            )


def test_load_fourier_series() -> None:
    f = load_fourier_series('{"constant": 1, "sin": [0, 1], "cos": [2]}')
    assert f == FourierSeries(
        constant=1.0, sin_coeffs=(0.0, 1.0), cos_coeffs=(2.0,)
    )
    for bad_text in (
        "not json",
        '{"sin": ["a"]}',
        '{"sin": [1], "tan": [1]}',
        '{"cos": [NaN]}',
    ):
        with pytest.raises(InputError):
            load_fourier_series(bad_text)


def test_eval_jet() -> None:
    jet = eval_jet(UNKNOT, 0.0)
    assert (jet.x, jet.y, jet.z) == pytest.approx((-1.0, 0.0, 1.0))
    jet = eval_jet(UNKNOT, math.pi / 2)
    assert (jet.x, jet.y, jet.z) == pytest.approx(
        (0.0, -1.0, 0.0), abs=1e-12
    )

    t = np.linspace(0, TWO_PI, 50)
    for f in CATALOG.values():
        jet = eval_jet(f, t)
        # y = -dx/dt and z = -dy/dt.
        np.testing.assert_allclose(jet.dx, -jet.y, atol=1e-12)
        np.testing.assert_allclose(jet.z, -jet.dy, atol=1e-12)


def test_sample_curve_and_csv() -> None:
    config = EngineConfig(grid_size=64)
    samples = sample_curve(UNKNOT, config)
    assert len(samples) == 64
    assert samples.t[0] == 0
    np.testing.assert_allclose(samples.x, -np.cos(samples.t), atol=1e-12)
    text = samples_csv(samples)
    lines = text.splitlines()
    assert lines[0] == "t,x,y,z"
    assert len(lines) == 65
    assert [float(value) for value in lines[1].split(",")] == pytest.approx(
        [0.0, -1.0, 0.0, 1.0]
    )
    kept = samples.mask(samples.y > 0)
    assert len(kept) < len(samples)
    assert np.all(kept.y > 0)


def test_zeros_on_cycle() -> None:
    assert zeros_on_cycle(UNKNOT) == pytest.approx(
        (math.pi / 2, 3 * math.pi / 2), abs=1e-10
    )
    zeros = zeros_on_cycle(NEGATIVE_LOOP)
    assert zeros == pytest.approx(
        (math.pi / 2, 7 * math.pi / 6, 3 * math.pi / 2, 11 * math.pi / 6),
        abs=1e-10,
    )
    assert len(zeros_on_cycle(NEGATIVE_LOOP, 1)) == 4
    # sin t has a zero exactly on the first grid point.
    assert zeros_on_cycle(FourierSeries(sin_coeffs=(1.0,))) == pytest.approx(
        (0.0, math.pi), abs=1e-10
    )
    assert zeros_on_cycle(FourierSeries(constant=2.0, cos_coeffs=(1,))) == ()

    with pytest.raises(DegenerateCurveError):
        zeros_on_cycle(FourierSeries(constant=3.0), 1)
    # 1 + cos t touches zero at t = pi without crossing.
    with pytest.raises(DegenerateCurveError):
        zeros_on_cycle(FourierSeries(constant=1.0, cos_coeffs=(1.0,)))


def test_scan_self_intersections() -> None:
    # A figure eight crosses itself once, at t = pi - 0.3 and 2pi - 0.3.
    def position(t: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        return np.sin(t + 0.3), np.sin(2 * t + 0.6)

    def velocity(t: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        return np.cos(t + 0.3), 2 * np.cos(2 * t + 0.6)

    scan = scan_self_intersections(position, velocity, EngineConfig())
    (pair,) = scan.pairs
    assert pair == pytest.approx((math.pi - 0.3, TWO_PI - 0.3), abs=1e-8)
    assert scan.triple_points == ()
    assert scan.failures == ()

    # Three petals of r = cos 3u meet at the origin.
    def rose(t: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        u = t / 2 + 0.1
        r = np.cos(3 * u)
        return r * np.cos(u), r * np.sin(u)

    def rose_velocity(t: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        u = t / 2 + 0.1
        r = np.cos(3 * u)
        dr = -3 * np.sin(3 * u)
        return (
            (dr * np.cos(u) - r * np.sin(u)) / 2,
            (dr * np.sin(u) + r * np.cos(u)) / 2,
        )

    scan = scan_self_intersections(rose, rose_velocity)
    assert len(scan.pairs) == 3
    assert len(scan.triple_points) == 3


def test_double_points() -> None:
    assert double_points(UNKNOT) == ()

    (dp,) = double_points(NEGATIVE_LOOP)
    assert dp.t1 < dp.t2
    assert NEGATIVE_LOOP(dp.t1) == pytest.approx(NEGATIVE_LOOP(dp.t2))
    first = NEGATIVE_LOOP.derivative()
    assert first(dp.t1) == pytest.approx(first(dp.t2), abs=1e-8)
    assert dp.half_plane == "upper"
    assert dp.sign == -1
    assert dp.xy == (dp.x, dp.y)

    (dp,) = double_points(POSITIVE_LOOP)
    assert dp.half_plane == "lower"
    assert dp.sign == 1

    points = double_points(TREFOIL)
    assert len(points) == 3
    assert [dp.sign for dp in points] == [1, 1, 1]
    assert points == tuple(sorted(points, key=lambda dp: (dp.t1, dp.t2)))


def test_double_points_are_stable_under_refinement() -> None:
    coarse = double_points(TREFOIL, EngineConfig(grid_size=4096))
    fine = double_points(TREFOIL, EngineConfig(grid_size=8192))
    assert len(coarse) == len(fine)
    for a, b in zip(coarse, fine):
        assert (a.t1, a.t2) == pytest.approx((b.t1, b.t2), abs=1e-8)


def test_crossing_sign() -> None:
    for f, expected in (
        (NEGATIVE_LOOP, [-1]),
        (POSITIVE_LOOP, [1]),
        (TREFOIL, [1, 1, 1]),
    ):
        assert [crossing_sign(f, dp) for dp in double_points(f)] == expected
        for dp in double_points(f):
            assert (dp.sign == -1) == (f.derivative()(dp.t1) > 0)

    (dp,) = double_points(NEGATIVE_LOOP)
    on_axis = dp.model_copy(update={"t1": 0.0, "t2": math.pi})
    with pytest.raises(CurveConditionError):
        crossing_sign(UNKNOT, on_axis)


class GenericityTestCase(unittest.TestCase):
    def test_generic_curves(self) -> None:
        for name, braid_index, count in (
            ("unknot", 1, 0),
            ("unknot_negative_loop", 2, 1),
            ("unknot_positive_loop", 2, 1),
            ("trefoil", 2, 3),
        ):
            report = genericity_report(CATALOG[name])
            self.assertTrue(report.all_pass, name)
            self.assertEqual(report.failed_conditions(), [])
            self.assertEqual(report.braid_index, braid_index)
            self.assertEqual(report.zeros_f, 2 * braid_index)
            self.assertEqual(report.zeros_fprime, 2 * braid_index)
            self.assertEqual(report.double_point_count, count)
            assert report.axis_point is not None

    def test_no_axis_point(self) -> None:
        report = genericity_report(NO_AXIS)
        self.assertFalse(report.condition4.passed)
        self.assertIn(4, report.failed_conditions())
        self.assertFalse(report.all_pass)
        self.assertIsNone(report.braid_index)
        self.assertTrue(report.condition4.diagnostics)
        with self.assertRaises(NoSeparatingPointError):
            braid_axis_point(NO_AXIS)
        with self.assertRaises(CurveConditionError):
            extract_braid(NO_AXIS)

    def test_report_serializes(self) -> None:
        data = genericity_report(UNKNOT).model_dump()
        self.assertTrue(data["all_pass"])
        self.assertEqual(data["condition1"]["passed"], True)

    def test_no_zeros(self) -> None:
        report = genericity_report(FourierSeries(constant=2.0))
        self.assertFalse(report.condition4.passed)
        self.assertIsNone(report.zeros_fprime)


def test_braid_axis_point() -> None:
    c = braid_axis_point(UNKNOT)
    assert -1 < c < 1
    assert c == pytest.approx(0.0, abs=1e-9)
    c = braid_axis_point(TREFOIL)
    x = -TREFOIL(np.array(zeros_on_cycle(TREFOIL, 1)))
    assert x.min() < c < x.max()
    assert isinstance(winding_rate(TREFOIL, c), float)
    with pytest.raises(DegenerateCurveError):
        braid_axis_point(FourierSeries(constant=1.0))


def test_extract_braid() -> None:
    assert extract_braid(UNKNOT) == BraidWord(1)
    assert extract_braid(NEGATIVE_LOOP) == BraidWord(2, (-1,))
    assert extract_braid(POSITIVE_LOOP) == BraidWord(2, (1,))
    word = extract_braid(TREFOIL)
    assert word.strands == 2
    assert word.letters in cyclic_rotations((1, 1, 1))

    for f in (NEGATIVE_LOOP, POSITIVE_LOOP, TREFOIL):
        signs = [crossing_sign(f, dp) for dp in double_points(f)]
        assert exponent_sum(extract_braid(f)) == sum(signs)
        assert extract_braid(f).strands == len(zeros_on_cycle(f)) // 2


def test_extract_braid_needs_winding() -> None:
    for f in (UNKNOT, NEGATIVE_LOOP, POSITIVE_LOOP, TREFOIL):
        assert winding_rate(f, braid_axis_point(f)) > 0

    report = genericity_report(KIDNEY)
    assert report.all_pass
    assert report.braid_index == 1
    assert report.double_point_count == 0
    assert winding_rate(KIDNEY, braid_axis_point(KIDNEY)) < -0.1
    with pytest.raises(WindingError):
        extract_braid(KIDNEY)
