"""Shared fixtures and hypothesis strategies for the steklov test suite."""

from __future__ import annotations

import math

import pytest
from hypothesis import strategies as st

from steklov.models.geometry import ManifoldSpec, WarpKind, WarpSpec
from steklov.services.warp import make_manifold, make_warp


def manifold(kind: str, n: int, R: float, *params: float) -> ManifoldSpec:
    """Shorthand for make_manifold(n, R, make_warp(kind, params))."""
    return make_manifold(n, R, make_warp(kind, params))


@pytest.fixture
def euclidean() -> WarpSpec:
    return make_warp(WarpKind.EUCLIDEAN)


@pytest.fixture
def sphere() -> WarpSpec:
    return make_warp(WarpKind.SPHERE)


@pytest.fixture
def hyperbolic() -> WarpSpec:
    return make_warp(WarpKind.HYPERBOLIC)


@pytest.fixture
def concave_poly() -> WarpSpec:
    """h = r - r^3/10 - r^5/100: h'' < 0 and 0 < h' <= 1 on [0, 1]."""
    return make_warp(WarpKind.ODD_POLYNOMIAL, (-0.1, -0.01))


# On R <= 0.9 these satisfy h'' <= 0 and 0 < h' <= 1, i.e. Ric >= 0 with convex boundary
concave_coeffs = st.tuples(
    st.floats(min_value=-0.3, max_value=0.0, allow_nan=False),
    st.floats(min_value=-0.02, max_value=0.0, allow_nan=False),
)
concave_radius = st.floats(min_value=0.2, max_value=0.9, allow_nan=False)
sphere_radius = st.floats(min_value=0.1, max_value=math.pi - 0.1, allow_nan=False)
