"""Tests for normalized curves, monotonicity verdicts and transition radii.

The battery at the bottom replays every monotonicity clause for the 2D disks in
the unit sphere and hyperbolic plane, and the higher-dimensional ones, on
256-point grids.
"""

from __future__ import annotations

import math

import numpy as np
import pytest

from steklov.config import DEFAULT_SCAN
from steklov.models.scan import Curve, CurvePoint, Normalizer, NormalizerFactor, TransitionKind, Verdict
from steklov.models.spectrum import Geometry, Problem
from steklov.services.scaling import (
    bisect_slope,
    dense_scan_argmin,
    factor_value,
    find_transition,
    monotonicity_report,
    normalized_curve,
    normalized_value,
    unimodal_bracket,
)
from steklov.utils.error_handler import BracketError, DomainError

SPHERE_GRID = (0.05, math.pi - 0.05)
HYPERBOLIC_GRID = (0.05, 10.0)

G = NormalizerFactor.GEODESIC_RADIUS
B = NormalizerFactor.BOUNDARY_RADIUS
S = NormalizerFactor.STEREOGRAPHIC
A = NormalizerFactor.AREA_FACTOR


def synthetic(func, lo=0.0, hi=2.0, samples=64) -> Curve:
    xs = np.linspace(lo, hi, samples)
    return Curve(points=[CurvePoint(x=float(x), value=float(func(x))) for x in xs])


def grid(geometry: Geometry, samples: int = 64) -> list:
    lo, hi = SPHERE_GRID if geometry == Geometry.SPHERE else HYPERBOLIC_GRID
    return [float(R) for R in np.linspace(lo, hi, samples)]


def verdict_of(geometry, n, problem, m, factor, samples=256) -> Verdict:
    normalizer = Normalizer.for_problem(factor, problem)
    curve = normalized_curve(geometry, n, problem, m, normalizer, grid(geometry, samples))
    assert not curve.gaps
    return monotonicity_report(curve).verdict


# =============================================================================
# Factors and curves
# =============================================================================


class TestNormalizedCurve:

    def test_factor_values(self) -> None:
        assert factor_value(G, Geometry.SPHERE, 1.0) == 1.0
        assert factor_value(B, Geometry.HYPERBOLIC, 1.0) == pytest.approx(math.sinh(1.0))
        assert factor_value(S, Geometry.SPHERE, 1.0) == pytest.approx(math.tan(0.5))
        assert factor_value(A, Geometry.HYPERBOLIC, 1.0) == pytest.approx(math.sinh(0.5))

    def test_boundary_normalized_sigma_is_constant(self) -> None:
        normalizer = Normalizer.for_problem(B, Problem.SIGMA)
        curve = normalized_curve(Geometry.SPHERE, 2, Problem.SIGMA, 1, normalizer, grid(Geometry.SPHERE, 40))
        assert len(curve.points) == 40
        for value in curve.values:
            assert value == pytest.approx(1.0, abs=1e-12)

    def test_stereographic_eta_zero_is_constant(self) -> None:
        normalizer = Normalizer.for_problem(S, Problem.ETA)
        curve = normalized_curve(Geometry.HYPERBOLIC, 2, Problem.ETA, 0, normalizer, grid(Geometry.HYPERBOLIC, 40))
        for value in curve.values:
            assert value == pytest.approx(1.0, abs=1e-12)

    def test_small_radius_limit(self) -> None:
        normalizer = Normalizer.for_problem(G, Problem.XI)
        value, _ = normalized_value(Geometry.SPHERE, 2, Problem.XI, 1, normalizer, 1e-3)
        assert value == pytest.approx(4.0, rel=1e-5)

    def test_power_must_match_problem(self) -> None:
        with pytest.raises(DomainError):
            normalized_curve(Geometry.SPHERE, 2, Problem.XI, 1, Normalizer(factor=G, power=1), [0.5, 1.0])

    @pytest.mark.parametrize("bad", [[1.0, 0.5], [0.5, 0.5], [0.5, math.pi], [-0.1, 1.0], []])
    def test_invalid_grid(self, bad) -> None:
        normalizer = Normalizer.for_problem(G, Problem.ETA)
        with pytest.raises(DomainError):
            normalized_curve(Geometry.SPHERE, 2, Problem.ETA, 1, normalizer, bad)

    def test_parallel_matches_serial(self) -> None:
        normalizer = Normalizer.for_problem(A, Problem.ETA)
        radii = grid(Geometry.SPHERE, 8)
        serial = normalized_curve(Geometry.SPHERE, 2, Problem.ETA, 1, normalizer, radii)
        parallel = normalized_curve(
            Geometry.SPHERE, 2, Problem.ETA, 1, normalizer, radii,
            scan=DEFAULT_SCAN.model_copy(update={"workers": 2}),
        )
        assert parallel == serial


# =============================================================================
# Verdicts
# =============================================================================


class TestMonotonicityReport:
    """Classification of synthetic and computed curves."""

    def test_constant_curve(self) -> None:
        report = monotonicity_report(synthetic(lambda x: 1.0))
        assert report.verdict == Verdict.NONMONOTONE_OTHER
        assert report.min_gap == 0.0

    def test_increasing(self) -> None:
        assert monotonicity_report(synthetic(lambda x: x * x, lo=0.1)).verdict == Verdict.INCREASING

    def test_decreasing(self) -> None:
        assert monotonicity_report(synthetic(lambda x: math.exp(-x))).verdict == Verdict.DECREASING

    def test_unimodal(self) -> None:
        curve = synthetic(lambda x: (x - 1.1) ** 2)
        report = monotonicity_report(curve)
        assert report.verdict == Verdict.UNIMODAL_MIN
        lo, hi = unimodal_bracket(curve, report)
        assert lo < 1.1 < hi

    def test_oscillating(self) -> None:
        report = monotonicity_report(synthetic(lambda x: math.sin(6.0 * x)))
        assert report.verdict == Verdict.NONMONOTONE_OTHER
        assert report.diagnostics

    def test_unimodal_maximum_is_other(self) -> None:
        assert monotonicity_report(synthetic(lambda x: -(x - 1.0) ** 2)).verdict == Verdict.NONMONOTONE_OTHER

    def test_too_few_samples(self) -> None:
        report = monotonicity_report(synthetic(lambda x: x, samples=10))
        assert report.verdict == Verdict.NONMONOTONE_OTHER
        assert report.samples == 10

    def test_explicit_margin_is_absolute(self) -> None:
        # Steps of about 0.03 vanish under a margin of 0.1
        curve = synthetic(lambda x: x)
        report = monotonicity_report(curve, margin=0.1)
        assert report.verdict == Verdict.NONMONOTONE_OTHER
        assert not report.relative_margin
        assert report.margin == 0.1

    def test_relative_margin_handles_wide_ranges(self) -> None:
        # Eight decades: a single absolute margin would swallow the early steps
        report = monotonicity_report(synthetic(lambda x: math.exp(9.0 * x)))
        assert report.verdict == Verdict.INCREASING
        assert report.relative_margin

    def test_bracket_of_monotone_curve(self) -> None:
        curve = synthetic(lambda x: x)
        with pytest.raises(BracketError):
            unimodal_bracket(curve, monotonicity_report(curve))

    def test_sphere_xi_boundary_normalized_decreases(self) -> None:
        assert verdict_of(Geometry.SPHERE, 2, Problem.XI, 1, B, samples=64) == Verdict.DECREASING

    def test_sphere_eta_area_normalized_turns(self) -> None:
        assert verdict_of(Geometry.SPHERE, 2, Problem.ETA, 1, A, samples=64) == Verdict.UNIMODAL_MIN


# =============================================================================
# Transitions
# =============================================================================


class TestTransitions:

    def test_bisect_parabola(self) -> None:
        point = bisect_slope(lambda x: (x - 0.3) ** 2, (0.0, 1.0), 1e-8, TransitionKind.RADIUS)
        assert point.location == pytest.approx(0.3, abs=1e-7)
        assert point.width <= 1e-8
        assert point.kind == TransitionKind.RADIUS

    def test_bisect_requires_sign_change(self) -> None:
        with pytest.raises(BracketError):
            bisect_slope(lambda x: x * x, (1.0, 2.0), 1e-6, TransitionKind.RADIUS)

    def test_dense_scan_argmin(self) -> None:
        assert dense_scan_argmin(lambda x: (x - 0.3) ** 2, 0.0, 1.0, 101) == pytest.approx(0.3, abs=1e-9)

    def test_dense_scan_needs_samples(self) -> None:
        with pytest.raises(DomainError):
            dense_scan_argmin(lambda x: x, 0.0, 1.0, 2)

    def test_sphere_eta_area_factor_transition(self) -> None:
        normalizer = Normalizer.for_problem(A, Problem.ETA)
        point = find_transition(Geometry.SPHERE, 2, Problem.ETA, 1, normalizer, (0.1, 3.0), tol=1e-6)
        assert point.width <= 1e-6

        def curve(R: float) -> float:
            return normalized_value(Geometry.SPHERE, 2, Problem.ETA, 1, normalizer, R)[0]

        assert point.location == pytest.approx(dense_scan_argmin(curve, 0.1, 3.0, 2000), abs=1e-4)

    def test_monotone_bracket_rejected(self) -> None:
        normalizer = Normalizer.for_problem(G, Problem.XI)
        with pytest.raises(BracketError):
            find_transition(Geometry.SPHERE, 2, Problem.XI, 1, normalizer, (0.5, 1.5))

    def test_bracket_outside_domain(self) -> None:
        normalizer = Normalizer.for_problem(A, Problem.ETA)
        with pytest.raises(DomainError):
            find_transition(Geometry.SPHERE, 2, Problem.ETA, 1, normalizer, (1.0, math.pi))

    @pytest.mark.slow
    @pytest.mark.parametrize("m, factor", [(2, G), (3, G), (3, A)])
    def test_hyperbolic_eta_transitions(self, m, factor) -> None:
        normalizer = Normalizer.for_problem(factor, Problem.ETA)
        point = find_transition(Geometry.HYPERBOLIC, 2, Problem.ETA, m, normalizer, HYPERBOLIC_GRID)

        def curve(R: float) -> float:
            return normalized_value(Geometry.HYPERBOLIC, 2, Problem.ETA, m, normalizer, R)[0]

        assert point.location == pytest.approx(dense_scan_argmin(curve, *HYPERBOLIC_GRID, 2000), abs=1e-4)


# =============================================================================
# Monotonicity battery
# =============================================================================

INCREASING, DECREASING, UNIMODAL = Verdict.INCREASING, Verdict.DECREASING, Verdict.UNIMODAL_MIN


def sphere_expected(problem: Problem, factor: NormalizerFactor, m: int) -> Verdict:
    if problem == Problem.SIGMA:
        return INCREASING
    if problem == Problem.XI:
        return DECREASING if factor == B else INCREASING
    if factor == B:
        return DECREASING
    if factor == A and m == 1:
        return UNIMODAL
    return INCREASING


def hyperbolic_expected(problem: Problem, factor: NormalizerFactor, m: int) -> Verdict:
    if problem == Problem.SIGMA:
        return DECREASING
    if problem == Problem.XI:
        return INCREASING if factor == B else DECREASING
    if factor == G:
        return INCREASING if m == 1 else UNIMODAL
    if factor == B:
        return INCREASING
    if factor == S:
        return DECREASING
    return INCREASING if m <= 2 else UNIMODAL


BATTERY = [
    (problem, factor, m)
    for problem in Problem
    for factor in NormalizerFactor
    for m in (1, 2, 3, 4, 5)
    # sigma sin R and sigma sinh R are constant in 2D
    if not (problem == Problem.SIGMA and factor == B)
]


@pytest.mark.slow
class TestMonotonicityBattery:
    """Every clause for 2D disks, m = 1..5, plus the higher-dimensional ones."""

    @pytest.mark.parametrize("problem, factor, m", BATTERY)
    def test_sphere(self, problem, factor, m) -> None:
        assert verdict_of(Geometry.SPHERE, 2, problem, m, factor) == sphere_expected(problem, factor, m)

    @pytest.mark.parametrize("problem, factor, m", BATTERY)
    def test_hyperbolic(self, problem, factor, m) -> None:
        assert verdict_of(Geometry.HYPERBOLIC, 2, problem, m, factor) == hyperbolic_expected(problem, factor, m)

    @pytest.mark.parametrize("geometry", [Geometry.SPHERE, Geometry.HYPERBOLIC])
    def test_sigma_boundary_normalized_is_constant(self, geometry) -> None:
        assert verdict_of(geometry, 2, Problem.SIGMA, 2, B) == Verdict.NONMONOTONE_OTHER

    @pytest.mark.parametrize("geometry, factor, expected", [
        (Geometry.SPHERE, G, DECREASING),
        (Geometry.SPHERE, B, DECREASING),
        (Geometry.SPHERE, A, DECREASING),
        (Geometry.HYPERBOLIC, G, INCREASING),
        (Geometry.HYPERBOLIC, B, INCREASING),
        (Geometry.HYPERBOLIC, A, INCREASING),
    ])
    def test_eta_zero_mode(self, geometry, factor, expected) -> None:
        assert verdict_of(geometry, 2, Problem.ETA, 0, factor) == expected

    @pytest.mark.parametrize("n", [3, 4, 5])
    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_higher_dimensional_sigma(self, n, m) -> None:
        assert verdict_of(Geometry.SPHERE, n, Problem.SIGMA, m, B) == INCREASING
        assert verdict_of(Geometry.HYPERBOLIC, n, Problem.SIGMA, m, B) == DECREASING

    @pytest.mark.parametrize("n", [3, 4, 5])
    @pytest.mark.parametrize("m", [0, 1, 2, 3])
    def test_higher_dimensional_eta(self, n, m) -> None:
        assert verdict_of(Geometry.HYPERBOLIC, n, Problem.ETA, m, B) == INCREASING
