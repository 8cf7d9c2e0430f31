"""Tests for the radial integrators.

Properties tested:
- Exactness on Euclidean balls (u = r^m)
- Known 2D solutions u = tan^m(r/2), tanh^m(r/2)
- Agreement of the linear and Riccati forms
- Scale invariance of the renormalized outputs
- Monotone growth of z under the concavity hypotheses
"""

from __future__ import annotations

import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import concave_coeffs, concave_radius, manifold
from steklov.config import DEFAULT_SOLVER
from steklov.services.radial import frobenius_start, integrate_coupled, integrate_u, integrate_z, riccati_profile
from steklov.utils.error_handler import DomainError


class TestIntegrateU:
    """Tests for the renormalized (u, u', I) integration."""

    def test_euclidean_slope(self) -> None:
        sol = integrate_u(manifold("euclidean", 3, 1.0), 2)
        assert sol.y_R == pytest.approx(2.0, rel=1e-8)
        assert sol.z_R == pytest.approx(2.0, rel=1e-8)
        assert sol.positive

    def test_positivity_flag_is_plain_bool(self) -> None:
        with warnings.catch_warnings():
            warnings.simplefilter("error", DeprecationWarning)
            sol = integrate_u(manifold("hyperbolic", 3, 2.0), 1)
        assert type(sol.positive) is bool

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    @pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
    @pytest.mark.parametrize("R", [0.5, 1.0, 2.0])
    def test_euclidean_exactness(self, n, m, R) -> None:
        sol = integrate_u(manifold("euclidean", n, R), m)
        assert sol.y_R == pytest.approx(m / R, rel=1e-8)
        # I / u(R)^2 = int_0^R r^{n-1} (r/R)^{2m} dr
        assert sol.integral_ratio == pytest.approx(R ** n / (n + 2 * m), rel=1e-8)

    def test_sphere_disk_weighted_integral(self) -> None:
        # u = tan(r/2): I / u(R)^2 = M(pi/2) = 2 ln 2 - 1
        sol = integrate_u(manifold("sphere", 2, math.pi / 2), 1)
        assert sol.integral_ratio == pytest.approx(2.0 * math.log(2.0) - 1.0, rel=1e-8)
        assert sol.y_R == pytest.approx(1.0, rel=1e-8)

    def test_hyperbolic_disk_slope(self) -> None:
        sol = integrate_u(manifold("hyperbolic", 2, 1.0), 3)
        assert sol.z_R == pytest.approx(3.0, rel=1e-8)

    def test_initial_scale_cancels(self) -> None:
        base = manifold("sphere", 3, 1.2)
        plain = integrate_u(base, 2)
        scaled = integrate_u(base, 2, initial_scale=1e3)
        assert scaled.y_R == pytest.approx(plain.y_R, rel=1e-12)
        assert scaled.integral_ratio == pytest.approx(plain.integral_ratio, rel=1e-12)

    def test_start_radius_insensitivity(self) -> None:
        base = manifold("sphere", 3, 1.0)
        finer = DEFAULT_SOLVER.model_copy(update={"r0_fraction": 5e-6})
        a = integrate_u(base, 2)
        b = integrate_u(base, 2, config=finer)
        assert b.y_R == pytest.approx(a.y_R, rel=1e-8)
        assert b.integral_ratio == pytest.approx(a.integral_ratio, rel=1e-8)

    def test_renormalizes_fast_growth(self) -> None:
        base = manifold("hyperbolic", 3, 6.0)
        sol = integrate_u(base, 30)
        assert sol.positive
        assert sol.log_scale > 0.0
        assert math.isfinite(sol.y_R)
        assert sol.z_R == pytest.approx(integrate_z(base, 30), rel=1e-7)

    def test_error_estimate_grows_with_steps(self) -> None:
        sol = integrate_u(manifold("sphere", 3, 1.0), 1)
        assert sol.steps > 0
        assert sol.est_error == pytest.approx(DEFAULT_SOLVER.rtol * math.sqrt(sol.steps))

    def test_mode_zero_rejected(self) -> None:
        with pytest.raises(DomainError):
            integrate_u(manifold("sphere", 3, 1.0), 0)

    @pytest.mark.parametrize("rtol", [1e-5, 0.0, -1e-10])
    def test_loose_tolerance_rejected(self, rtol) -> None:
        with pytest.raises(DomainError):
            integrate_u(manifold("sphere", 3, 1.0), 1, rtol=rtol)


class TestFrobeniusStart:

    def test_two_dimensions_has_no_correction(self) -> None:
        r0, z0, y0 = frobenius_start(manifold("sphere", 2, 1.0), 3)
        assert r0 == pytest.approx(1e-5)
        assert z0 == 3.0
        assert y0 == pytest.approx(3.0 / math.sin(r0))

    def test_correction_sign_follows_curvature(self) -> None:
        _, z_sphere, _ = frobenius_start(manifold("sphere", 3, 1.0), 2)
        _, z_hyper, _ = frobenius_start(manifold("hyperbolic", 3, 1.0), 2)
        assert z_sphere > 2.0 > z_hyper

    def test_start_radius_floor(self) -> None:
        r0, _, _ = frobenius_start(manifold("euclidean", 3, 1e-4), 1)
        assert r0 == 1e-8


class TestRiccati:
    """Tests for z = h u'/u from the Riccati equation."""

    def test_euclidean_constant(self) -> None:
        assert integrate_z(manifold("euclidean", 5, 3.0), 1) == pytest.approx(1.0, rel=1e-12)

    def test_two_dimensional_constant(self) -> None:
        assert integrate_z(manifold("sphere", 2, 1.0), 2) == pytest.approx(2.0, rel=1e-12)

    def test_agrees_with_linear_form(self) -> None:
        base = manifold("sphere", 3, math.pi / 3)
        assert integrate_z(base, 1) == pytest.approx(integrate_u(base, 1).z_R, rel=1e-8)

    @given(
        coeffs=concave_coeffs,
        R=concave_radius,
        n=st.integers(min_value=2, max_value=5),
        m=st.integers(min_value=1, max_value=4),
    )
    @settings(max_examples=25, deadline=None)
    def test_linear_and_riccati_agree(self, coeffs, R, n, m) -> None:
        base = manifold("poly", n, R, *coeffs)
        z_linear = integrate_u(base, m).z_R
        z_riccati = integrate_z(base, m)
        assert abs(z_linear - z_riccati) <= 1e-7 * max(1.0, abs(z_riccati))

    @pytest.mark.parametrize("kind, params", [("sphere", ()), ("poly", (-0.1, -0.01))])
    def test_z_nondecreasing_under_concavity(self, kind, params) -> None:
        base = manifold(kind, 3, 0.9, *params)
        radii = np.linspace(0.01, 0.9, 60)
        profile = riccati_profile(base, 2, radii)
        assert min(profile) >= 2.0 - 1e-8
        assert all(b - a >= -1e-9 for a, b in zip(profile, profile[1:]))

    def test_profile_radii_must_increase(self) -> None:
        with pytest.raises(DomainError):
            riccati_profile(manifold("sphere", 3, 1.0), 1, [0.5, 0.2])

    def test_profile_radii_inside_domain(self) -> None:
        with pytest.raises(DomainError):
            riccati_profile(manifold("sphere", 3, 1.0), 1, [0.5, 1.5])


class TestCoupled:

    def test_euclidean_particular_solution(self) -> None:
        # u = (r/r0)^m, psi_p = u r^2/(4m+2n)
        n, m, R = 3, 1, 1.0
        sol = integrate_coupled(manifold("euclidean", n, R), m)
        assert sol.psi_R / sol.u_R == pytest.approx(R ** 2 / (4 * m + 2 * n), rel=1e-8)
        assert sol.dpsi_R / sol.u_R == pytest.approx((m + 2) * R / (4 * m + 2 * n), rel=1e-8)

    def test_mode_zero_allowed(self) -> None:
        sol = integrate_coupled(manifold("sphere", 2, 1.0), 0)
        assert sol.u_R == pytest.approx(1.0)
        assert sol.du_R == pytest.approx(0.0, abs=1e-12)
