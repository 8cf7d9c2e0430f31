"""Eigenvalues of geodesic disks in the 2D space forms M_K as functions of K.

A disk of area A (or radius rho) in M_K is a rescaled unit-curvature disk of
radius Theta(K):

    fixed area:    Theta = 2 arcsin sqrt(K A / 4 pi)    (K > 0)
                   Theta = 2 arsinh sqrt(-K A / 4 pi)   (K < 0)
    fixed radius:  Theta = sqrt|K| rho

and eig(K) = |K|^{p/2} eig(+-1; Theta), with p = 3 for xi and 1 otherwise.
"""

import math
from functools import partial
from typing import Optional, Sequence, Tuple

import numpy as np

from steklov.config import DEFAULT_SCAN, DEFAULT_SOLVER, ScanConfig, SolverConfig
from steklov.models.scan import (
    Constraint,
    Curve,
    CurveGap,
    CurvatureFamily,
    CurvePoint,
    MonotonicityReport,
    TransitionKind,
    Verdict,
)
from steklov.models.spectrum import Geometry, Problem
from steklov.services.eigen import FLAT_CURVATURE, euclidean_closed_form, space_form_2d
from steklov.services.scaling import bisect_slope, monotonicity_report, unimodal_bracket
from steklov.utils.error_handler import BracketError, DomainError, SteklovError
from steklov.utils.logging import get_logger
from steklov.utils.parallel import ordered_map

logger = get_logger(__name__)

GRID_EDGE = 0.99


def curvature_bound(constraint: Constraint, size: float) -> float:
    """4 pi / A for fixed area, (pi / rho)^2 for fixed radius."""
    if Constraint(constraint) == Constraint.FIXED_AREA:
        return 4.0 * math.pi / size
    return (math.pi / size) ** 2


def _check_curvature(constraint: Constraint, size: float, K: float) -> None:
    if not size > 0.0:
        raise DomainError(f"Family size must be positive, got {size}", extra={"size": size})
    bound = curvature_bound(constraint, size)
    if not math.isfinite(K) or K >= bound:
        raise DomainError(
            f"K={K} outside the admissible range (-inf, {bound}) of this {Constraint(constraint).value} family",
            extra={"K": K, "bound": bound}
        )


def euclidean_radius(constraint: Constraint, size: float) -> float:
    """Radius of the flat disk in the family: sqrt(A / pi) or rho."""
    if Constraint(constraint) == Constraint.FIXED_AREA:
        return math.sqrt(size / math.pi)
    return size


def theta_of_K(constraint: Constraint, size: float, K: float) -> float:
    """Radius of the comparison disk in the unit sphere (K > 0) or hyperbolic plane (K < 0).

    At K = 0 the flat disk's radius is returned instead.

    Raises:
        DomainError: For K at or above the curvature bound
    """
    _check_curvature(constraint, size, K)
    if K == 0.0:
        return euclidean_radius(constraint, size)
    if Constraint(constraint) == Constraint.FIXED_RADIUS:
        return math.sqrt(abs(K)) * size
    x = math.sqrt(abs(K) * size / (4.0 * math.pi))
    return 2.0 * math.asin(x) if K > 0 else 2.0 * math.asinh(x)


def radius_of_K(constraint: Constraint, size: float, K: float) -> float:
    """Geodesic radius of the disk in M_K."""
    _check_curvature(constraint, size, K)
    if abs(K) < FLAT_CURVATURE:
        return euclidean_radius(constraint, size)
    return theta_of_K(constraint, size, K) / math.sqrt(abs(K))


def eigen_of_K(family: CurvatureFamily, K: float, solver: SolverConfig = DEFAULT_SOLVER) -> float:
    """The family's eigenvalue on the disk of curvature K."""
    constraint, size = family.constraint, family.size
    _check_curvature(constraint, size, K)
    if abs(K) < FLAT_CURVATURE:
        return euclidean_closed_form(2, family.problem, family.m, euclidean_radius(constraint, size))
    geometry = Geometry.SPHERE if K > 0 else Geometry.HYPERBOLIC
    power = 3 if family.problem == Problem.XI else 1
    theta = theta_of_K(constraint, size, K)
    return math.sqrt(abs(K)) ** power * space_form_2d(geometry, family.problem, family.m, theta, solver)


def curvature_grid(family: CurvatureFamily, samples: int, K_range: Optional[Tuple[float, float]] = None) -> list:
    """Uniform K grid; by default from -3 times the bound to 99% of it."""
    if samples < 2:
        raise DomainError("A curvature grid needs at least 2 samples", extra={"samples": samples})
    bound = family.curvature_bound
    lo, hi = K_range or family.K_range or (-3.0 * bound, GRID_EDGE * bound)
    if not lo < hi < bound:
        raise DomainError(f"K range ({lo}, {hi}) must be ordered and stay below {bound}")
    return [float(K) for K in np.linspace(lo, hi, samples)]


def _curvature_point(K: float, family: CurvatureFamily, solver: SolverConfig):
    try:
        return K, eigen_of_K(family, K, solver), None
    except SteklovError as e:
        return K, None, e.message


def curvature_curve(
    family: CurvatureFamily,
    K_grid: Sequence[float],
    solver: SolverConfig = DEFAULT_SOLVER,
    scan: ScanConfig = DEFAULT_SCAN,
) -> Curve:
    """Sample the family on K_grid (strictly increasing), recording failed points as gaps."""
    grid = [float(K) for K in K_grid]
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise DomainError("Curvature grid must be strictly increasing")
    if grid and grid[-1] >= family.curvature_bound:
        raise DomainError(f"Curvature grid must stay below {family.curvature_bound}")

    curve = Curve()
    worker = partial(_curvature_point, family=family, solver=solver)
    for K, value, error in ordered_map(worker, grid, scan.workers):
        if error is None:
            curve.points.append(CurvePoint(x=K, value=value, est_error=solver.quad_rtol * abs(value)))
        else:
            logger.warning(f"Gap at K={K}: {error}")
            curve.gaps.append(CurveGap(x=K, error=error))
    return curve


def curvature_monotonicity(
    family: CurvatureFamily,
    K_grid: Sequence[float],
    margin: Optional[float] = None,
    tol: float = 1e-6,
    solver: SolverConfig = DEFAULT_SOLVER,
    scan: ScanConfig = DEFAULT_SCAN,
    curve: Optional[Curve] = None,
) -> MonotonicityReport:
    """Verdict on the K-curve; unimodal curves also get their critical curvature.

    A curve already sampled on K_grid can be passed in to skip re-evaluation.
    """
    if curve is None:
        curve = curvature_curve(family, K_grid, solver, scan)
    report = monotonicity_report(curve, margin, scan)
    if report.verdict != Verdict.UNIMODAL_MIN:
        return report

    try:
        transition = bisect_slope(
            lambda K: eigen_of_K(family, K, solver),
            unimodal_bracket(curve, report, scan),
            tol,
            TransitionKind.CURVATURE,
            scan,
        )
    except BracketError as e:
        return report.model_copy(update={"diagnostics": report.diagnostics + [e.message]})
    return report.model_copy(update={"transition": transition})
