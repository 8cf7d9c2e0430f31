"""Tests for warping functions and the curvature hypothesis checks.

Properties tested:
- Exact evaluators of the analytic and polynomial warps
- Domain handling (max_radius, evaluation outside [0, max_radius))
- Warp string grammar, including malformed input
- Ricci sign, convexity and concavity reports
- Oddness of polynomial warps and space-form consistency
"""

from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import concave_coeffs, manifold
from steklov.models.geometry import WarpKind
from steklov.services.warp import check_hypotheses, evaluate, make_manifold, make_warp, parse_warp
from steklov.utils.error_handler import DomainError, WarpSpecError


# =============================================================================
# Construction and evaluation
# =============================================================================


class TestMakeWarp:
    """Tests for make_warp and the exact evaluators."""

    def test_sphere_domain_and_values(self, sphere) -> None:
        assert sphere.max_radius == pytest.approx(math.pi)
        h, h1, h2 = evaluate(sphere, math.pi / 2)
        assert h == pytest.approx(1.0)
        assert h1 == pytest.approx(0.0, abs=1e-15)
        assert h2 == pytest.approx(-1.0)

    def test_hyperbolic_at_origin(self, hyperbolic) -> None:
        assert evaluate(hyperbolic, 0.0) == (0.0, 1.0, 0.0)
        assert hyperbolic.max_radius == math.inf

    def test_flat_space_form_is_euclidean(self) -> None:
        warp = make_warp(WarpKind.SPACE_FORM, (0.0,))
        assert evaluate(warp, 0.7) == (0.7, 1.0, 0.0)

    def test_polynomial_values(self) -> None:
        warp = make_warp(WarpKind.ODD_POLYNOMIAL, (-1.0 / 6.0,))
        h, h1, h2 = evaluate(warp, 1.0)
        assert h == pytest.approx(5.0 / 6.0)
        assert h1 == pytest.approx(0.5)
        assert h2 == pytest.approx(-1.0)
        assert evaluate(warp, 0.5)[2] == pytest.approx(-0.5)

    def test_polynomial_max_radius_is_first_zero_of_slope(self) -> None:
        # h' = 1 - 0.3 r^2 vanishes before h does
        warp = make_warp(WarpKind.ODD_POLYNOMIAL, (-0.1,))
        assert warp.max_radius == pytest.approx(math.sqrt(1.0 / 0.3), rel=1e-9)

    def test_polynomial_without_zero_is_unbounded(self) -> None:
        warp = make_warp(WarpKind.ODD_POLYNOMIAL, (0.0, 0.01))
        assert warp.max_radius == math.inf

    def test_polynomial_collapsing_at_origin_rejected(self) -> None:
        with pytest.raises(WarpSpecError):
            make_warp(WarpKind.ODD_POLYNOMIAL, (-1e13,))

    def test_unknown_kind_rejected(self) -> None:
        with pytest.raises(WarpSpecError):
            make_warp("torus")

    def test_space_form_needs_curvature(self) -> None:
        with pytest.raises(WarpSpecError):
            make_warp(WarpKind.SPACE_FORM, ())

    @pytest.mark.parametrize("r", [-0.1, math.pi, 4.0])
    def test_evaluate_outside_domain(self, sphere, r) -> None:
        with pytest.raises(DomainError):
            evaluate(sphere, r)

    def test_unit_space_forms_match_model_spaces(self, sphere, hyperbolic) -> None:
        positive = make_warp(WarpKind.SPACE_FORM, (1.0,))
        negative = make_warp(WarpKind.SPACE_FORM, (-1.0,))
        for r in np.linspace(0.0, 3.0, 31):
            for a, b in zip(positive.triple(float(r)), sphere.triple(float(r))):
                assert a == pytest.approx(b, abs=1e-15)
            for a, b in zip(negative.triple(float(r)), hyperbolic.triple(float(r))):
                assert a == pytest.approx(b, abs=1e-15)

    def test_sphere_satisfies_its_equation(self, sphere) -> None:
        for r in np.linspace(0.0, 3.0, 16):
            h, _, h2 = sphere.triple(float(r))
            assert h2 == -h

    @given(coeffs=concave_coeffs, r=st.floats(min_value=0.0, max_value=2.0))
    @settings(max_examples=50, deadline=None)
    def test_polynomial_warps_are_odd(self, coeffs, r) -> None:
        warp = make_warp(WarpKind.ODD_POLYNOMIAL, coeffs)
        h, h1, h2 = warp.triple(r)
        hm, h1m, h2m = warp.triple(-r)
        assert hm == pytest.approx(-h, abs=1e-15)
        assert h1m == pytest.approx(h1, abs=1e-15)
        assert h2m == pytest.approx(-h2, abs=1e-15)


# =============================================================================
# Warp strings
# =============================================================================


class TestParseWarp:
    """Tests for the warp string grammar."""

    @pytest.mark.parametrize("text, kind", [
        ("euclidean", WarpKind.EUCLIDEAN),
        ("sphere", WarpKind.SPHERE),
        ("hyperbolic", WarpKind.HYPERBOLIC),
        ("spaceform:K=-2", WarpKind.SPACE_FORM),
        ("poly:a3=-0.1", WarpKind.ODD_POLYNOMIAL),
    ])
    def test_kinds(self, text, kind) -> None:
        assert parse_warp(text).kind == kind

    def test_space_form_curvature(self) -> None:
        warp = parse_warp("spaceform:K=4")
        assert warp.curvature == 4.0
        assert warp.max_radius == pytest.approx(math.pi / 2)

    def test_missing_coefficients_are_zero(self) -> None:
        assert parse_warp("poly:a5=0.01").coeffs == (0.0, 0.01)
        assert parse_warp("poly:a3=-0.1,a5=0.01").coeffs == (-0.1, 0.01)

    @pytest.mark.parametrize("text", [
        "torus",
        "Sphere",
        "sphere:K=1",
        "spaceform",
        "spaceform:K=abc",
        "spaceform:R=1",
        "poly:a4=1",
        "poly:a1=1",
        "poly:a3",
    ])
    def test_malformed(self, text) -> None:
        with pytest.raises(WarpSpecError):
            parse_warp(text)

    @pytest.mark.parametrize("text", ["poly:a3=-0.1,a3=-0.2", "poly:a3=-0.1,a03=-0.2", "spaceform:K=1,K=2"])
    def test_duplicate_parameters_rejected(self, text) -> None:
        with pytest.raises(WarpSpecError, match="Duplicate"):
            parse_warp(text)

    @pytest.mark.parametrize("text", ["euclidean", "spaceform:K=-0.5", "poly:a3=-0.1,a5=-0.01"])
    def test_describe_round_trip(self, text) -> None:
        warp = parse_warp(text)
        assert parse_warp(warp.describe()) == warp


# =============================================================================
# Manifolds
# =============================================================================


class TestMakeManifold:

    def test_tau(self, sphere) -> None:
        assert make_manifold(3, 1.0, sphere).tau(2) == 6.0
        assert make_manifold(2, 1.0, sphere).tau(3) == 9.0

    @pytest.mark.parametrize("n, R", [(1, 1.0), (3, 0.0), (3, -1.0), (3, math.pi), (3, math.inf)])
    def test_invalid(self, sphere, n, R) -> None:
        with pytest.raises(DomainError):
            make_manifold(n, R, sphere)

    def test_rescaled_sphere_is_space_form(self) -> None:
        scaled = manifold("sphere", 3, 1.0).rescaled(2.0)
        assert scaled.R == 2.0
        assert scaled.warp.kind == WarpKind.SPACE_FORM
        assert scaled.warp.curvature == pytest.approx(0.25)

    def test_rescaled_polynomial_scales_warp(self, concave_poly) -> None:
        base = make_manifold(3, 0.8, concave_poly)
        scaled = base.rescaled(3.0)
        assert scaled.warp.h(3.0 * 0.5) == pytest.approx(3.0 * concave_poly.h(0.5))


# =============================================================================
# Hypothesis checks
# =============================================================================


class TestCheckHypotheses:
    """Curvature signs, convexity and concavity on sampled grids."""

    def test_sphere_cap(self) -> None:
        report = check_hypotheses(manifold("sphere", 3, math.pi / 3))
        assert report.ricci_nonneg
        assert not report.ricci_nonpos
        assert report.convex_boundary
        assert report.lemma1_holds

    def test_hyperbolic_ball(self) -> None:
        report = check_hypotheses(manifold("hyperbolic", 3, 1.0))
        assert not report.ricci_nonneg
        assert report.ricci_nonpos
        assert report.convex_boundary
        assert not report.lemma1_holds

    def test_euclidean_ball_is_both(self) -> None:
        report = check_hypotheses(manifold("euclidean", 4, 2.0))
        assert report.ricci_nonneg and report.ricci_nonpos
        assert report.convex_boundary and report.lemma1_holds
        assert report.worst_margin == 0.0
        assert report.max_slope_defect == 0.0

    def test_sphere_beyond_equator_not_convex(self) -> None:
        report = check_hypotheses(manifold("sphere", 3, 2.0))
        assert not report.convex_boundary
        assert not report.lemma1_holds

    def test_convex_polynomial_fails_concavity(self) -> None:
        report = check_hypotheses(manifold("poly", 3, 0.5, 0.1))
        assert not report.ricci_nonneg
        assert report.ricci_nonpos
        assert not report.lemma1_holds
        assert report.worst_margin < 0.0

    def test_slope_defect(self) -> None:
        report = check_hypotheses(manifold("sphere", 2, 1.0))
        assert report.max_slope_defect == pytest.approx(1.0 - math.cos(1.0))

    def test_grid_too_small(self) -> None:
        with pytest.raises(DomainError):
            check_hypotheses(manifold("sphere", 3, 1.0), grid_size=8)

    @given(coeffs=concave_coeffs, R=st.floats(min_value=0.2, max_value=0.9))
    @settings(max_examples=30, deadline=None)
    def test_concave_polynomials_pass_all_checks(self, coeffs, R) -> None:
        report = check_hypotheses(manifold("poly", 3, R, *coeffs))
        assert report.lemma1_holds
        assert report.ricci_nonneg
        assert report.convex_boundary
