"""Steklov eigenvalues on warped-product manifolds [0,R] x S^{n-1}.

This package contains:
- Warping functions and curvature hypothesis checks
- Radial ODE and Riccati integrators
- sigma, xi and eta eigenvalues (numerical and closed forms)
- Normalized-spectrum scans, transitions and curvature families
- Sharp-bound verification and a randomized harness
"""

# Version management
__version__ = "0.1.0"

# Set up logging early
from steklov.utils.logging import setup_logging
setup_logging()

# Expose the main entry points for convenient imports
from steklov.config import Config
from steklov.models.geometry import ManifoldSpec, WarpKind, WarpSpec
from steklov.models.spectrum import EigenResult, Geometry, MethodChoice, Problem
from steklov.services.bounds import fuzz_bounds, verify_eta_bounds, verify_eta_ratio, verify_xi_bounds
from steklov.services.eigen import eigenvalue, eta, sigma, xi
from steklov.services.warp import check_hypotheses, make_manifold, make_warp, parse_warp

# Define public API
__all__ = [
    'Config',
    'ManifoldSpec',
    'WarpKind',
    'WarpSpec',
    'EigenResult',
    'Geometry',
    'MethodChoice',
    'Problem',
    'check_hypotheses',
    'make_manifold',
    'make_warp',
    'parse_warp',
    'eigenvalue',
    'sigma',
    'xi',
    'eta',
    'verify_xi_bounds',
    'verify_eta_bounds',
    'verify_eta_ratio',
    'fuzz_bounds',
    'get_version',
]


def get_version() -> str:
    """Return the current package version."""
    return __version__
