"""Normalized eigenvalue curves on geodesic disks of the unit sphere and hyperbolic space.

A normalized curve is R -> eig(R) * factor(R)^power. Verdicts are taken from
consecutive differences against a margin: a curve is called strictly increasing
when every difference exceeds it. By default the margin is relative to the two
values compared, so curves spanning many decades are judged evenly. This verifies
monotonicity on the grid, it does not prove it.
"""

import math
from functools import partial
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from steklov.config import DEFAULT_SCAN, DEFAULT_SOLVER, ScanConfig, SolverConfig
from steklov.models.scan import (
    Curve,
    CurveGap,
    CurvePoint,
    MonotonicityReport,
    Normalizer,
    NormalizerFactor,
    TransitionKind,
    TransitionPoint,
    Verdict,
)
from steklov.models.spectrum import Geometry, MethodChoice, Problem
from steklov.services.eigen import eigenvalue
from steklov.services.warp import make_manifold, make_warp
from steklov.utils.error_handler import BracketError, DomainError, SteklovError
from steklov.utils.logging import get_logger
from steklov.utils.parallel import ordered_map

logger = get_logger(__name__)


def factor_value(factor: NormalizerFactor, geometry: Geometry, R: float) -> float:
    """R, sin R, tan(R/2) or sin(R/2); the sinh/tanh variants on hyperbolic space."""
    factor, geometry = NormalizerFactor(factor), Geometry(geometry)
    if factor == NormalizerFactor.GEODESIC_RADIUS:
        return R
    sphere = geometry == Geometry.SPHERE
    if factor == NormalizerFactor.BOUNDARY_RADIUS:
        return math.sin(R) if sphere else math.sinh(R)
    if factor == NormalizerFactor.STEREOGRAPHIC:
        return math.tan(0.5 * R) if sphere else math.tanh(0.5 * R)
    return math.sin(0.5 * R) if sphere else math.sinh(0.5 * R)


def normalized_value(
    geometry: Geometry,
    n: int,
    problem: Problem,
    m: int,
    normalizer: Normalizer,
    R: float,
    method: MethodChoice = MethodChoice.AUTO,
    solver: SolverConfig = DEFAULT_SOLVER,
) -> Tuple[float, float]:
    """(eig * factor^power, est_error) at one radius."""
    manifold = make_manifold(n, R, make_warp(Geometry(geometry).value))
    result = eigenvalue(problem, manifold, m, method, config=solver)
    scale = factor_value(normalizer.factor, geometry, R) ** normalizer.power
    return result.value * scale, result.est_error * abs(result.value * scale)


def _curve_point(R: float, **kwargs) -> Tuple[float, Optional[float], Optional[float], Optional[str]]:
    try:
        value, err = normalized_value(R=R, **kwargs)
        return R, value, err, None
    except SteklovError as e:
        return R, None, None, e.message


def check_grid(geometry: Geometry, grid: Sequence[float], upper: Optional[float] = None) -> List[float]:
    """Validate a strictly increasing radius grid inside the geometry's domain."""
    grid = [float(x) for x in grid]
    if not grid:
        raise DomainError("Empty radius grid")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise DomainError("Radius grid must be strictly increasing")
    upper = upper if upper is not None else (math.pi if Geometry(geometry) == Geometry.SPHERE else math.inf)
    if grid[0] <= 0.0 or grid[-1] >= upper:
        raise DomainError(
            f"Radius grid must lie inside (0, {upper})",
            extra={"first": grid[0], "last": grid[-1]}
        )
    return grid


def normalized_curve(
    geometry: Geometry,
    n: int,
    problem: Problem,
    m: int,
    normalizer: Normalizer,
    R_grid: Sequence[float],
    method: MethodChoice = MethodChoice.AUTO,
    solver: SolverConfig = DEFAULT_SOLVER,
    scan: ScanConfig = DEFAULT_SCAN,
) -> Curve:
    """Evaluate the normalized curve on R_grid, in grid order.

    Points whose eigenvalue fails are recorded as gaps instead of aborting the scan.
    """
    geometry, problem = Geometry(geometry), Problem(problem)
    if not normalizer.matches(problem):
        raise DomainError(
            f"Normalizer power {normalizer.power} does not match {problem.value}",
            extra={"power": normalizer.power, "problem": problem.value}
        )
    grid = check_grid(geometry, R_grid)
    worker = partial(
        _curve_point,
        geometry=geometry, n=n, problem=problem, m=m,
        normalizer=normalizer, method=method, solver=solver,
    )

    curve = Curve()
    for R, value, err, error in ordered_map(worker, grid, scan.workers):
        if error is None:
            curve.points.append(CurvePoint(x=R, value=value, est_error=err))
        else:
            logger.warning(f"Gap at R={R}: {error}")
            curve.gaps.append(CurveGap(x=R, error=error))
    return curve


def _margins(values: np.ndarray, margin: Optional[float], scan: ScanConfig) -> np.ndarray:
    if margin is not None:
        return np.full(values.size - 1, float(margin))
    return scan.rel_margin * np.maximum(np.abs(values[:-1]), np.abs(values[1:]))


def _signs(diffs: np.ndarray, margins: np.ndarray) -> np.ndarray:
    return np.where(diffs > margins, 1, np.where(diffs < -margins, -1, 0))


def monotonicity_report(
    curve: Curve,
    margin: Optional[float] = None,
    scan: ScanConfig = DEFAULT_SCAN,
) -> MonotonicityReport:
    """Classify a sampled curve as increasing, decreasing, unimodal_min or other.

    An explicit margin is absolute; the default is rel_margin * max(|v_i|, |v_i+1|)
    for each difference. A run of sub-margin differences is tolerated only where a
    unimodal curve turns from decreasing to increasing.
    """
    xs = np.asarray(curve.xs, dtype=float)
    values = np.asarray(curve.values, dtype=float)
    samples = int(values.size)
    diagnostics = [f"{len(curve.gaps)} grid points failed"] if curve.gaps else []

    if samples < scan.min_samples:
        diagnostics.append(f"Only {samples} samples; at least {scan.min_samples} are required")
        return MonotonicityReport(
            verdict=Verdict.NONMONOTONE_OTHER,
            samples=samples,
            min_gap=0.0,
            margin=margin or 0.0,
            diagnostics=diagnostics,
        )

    relative = margin is None
    margins = _margins(values, margin, scan)
    diffs = np.diff(values)
    min_gap = float(np.min(np.abs(diffs)))
    signs = _signs(diffs, margins)
    margin = float(np.max(margins))

    verdict = Verdict.NONMONOTONE_OTHER
    if np.all(signs == 1):
        verdict = Verdict.INCREASING
    elif np.all(signs == -1):
        verdict = Verdict.DECREASING
    else:
        bracket = _unimodal_bracket(xs, signs)
        if bracket is not None:
            verdict = Verdict.UNIMODAL_MIN
            diagnostics.append(f"Slope changes sign from - to + inside [{bracket[0]:.6g}, {bracket[1]:.6g}]")
        else:
            changes = int(np.count_nonzero(np.diff(signs[signs != 0])))
            flat = int(np.count_nonzero(signs == 0))
            diagnostics.append(f"{changes} sign changes and {flat} differences within the margin {margin:.3e}")

    report = MonotonicityReport(
        verdict=verdict,
        samples=samples,
        min_gap=min_gap,
        margin=margin,
        relative_margin=relative,
        diagnostics=diagnostics,
    )
    logger.info(f"Monotonicity verdict: {verdict.value} over {samples} samples")
    return report


def _unimodal_bracket(xs: np.ndarray, signs: np.ndarray) -> Optional[Tuple[float, float]]:
    """Bracket of the minimum when signs read -,...,-,0,...,0,+,...,+ ; else None."""
    positive = np.nonzero(signs == 1)[0]
    negative = np.nonzero(signs == -1)[0]
    if positive.size == 0 or negative.size == 0:
        return None
    last_down, first_up = int(negative[-1]), int(positive[0])
    if last_down > first_up:
        return None
    if not (np.all(signs[:last_down + 1] == -1) and np.all(signs[first_up:] == 1)):
        return None
    return float(xs[last_down]), float(xs[first_up + 1])


def unimodal_bracket(
    curve: Curve,
    report: MonotonicityReport,
    scan: ScanConfig = DEFAULT_SCAN,
) -> Tuple[float, float]:
    """Grid bracket of the minimum of a curve reported unimodal_min."""
    if report.verdict != Verdict.UNIMODAL_MIN:
        raise BracketError(f"Curve is {report.verdict.value}, not unimodal")
    xs = np.asarray(curve.xs, dtype=float)
    values = np.asarray(curve.values, dtype=float)
    margins = _margins(values, None if report.relative_margin else report.margin, scan)
    signs = _signs(np.diff(values), margins)
    return _unimodal_bracket(xs, signs)


def central_slope(func: Callable[[float], float], x: float, scan: ScanConfig = DEFAULT_SCAN) -> float:
    h = scan.fd_step(x)
    return (func(x + h) - func(x - h)) / (2.0 * h)


def bisect_slope(
    func: Callable[[float], float],
    bracket: Tuple[float, float],
    tol: float,
    kind: TransitionKind,
    scan: ScanConfig = DEFAULT_SCAN,
) -> TransitionPoint:
    """Bisect on the sign of the central-difference slope of func.

    Raises:
        BracketError: When the slope has the same sign at both ends
    """
    lo, hi = sorted(float(b) for b in bracket)
    s_lo, s_hi = central_slope(func, lo, scan), central_slope(func, hi, scan)
    if np.sign(s_lo) == np.sign(s_hi) or s_lo == 0.0 or s_hi == 0.0:
        raise BracketError(
            f"Slope does not change sign on [{lo}, {hi}]",
            extra={"bracket": [lo, hi], "slopes": [s_lo, s_hi]}
        )

    for _ in range(scan.max_bisections):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        s_mid = central_slope(func, mid, scan)
        if s_mid == 0.0:
            lo = hi = mid
            break
        if np.sign(s_mid) == np.sign(s_lo):
            lo, s_lo = mid, s_mid
        else:
            hi = mid
    else:
        logger.warning(f"Bisection stopped after {scan.max_bisections} steps at width {hi - lo:.3e}")

    location = 0.5 * (lo + hi)
    point = TransitionPoint(
        location=location,
        bracket=(lo, hi),
        kind=kind,
        residual=abs(central_slope(func, location, scan)),
    )
    logger.info(f"Transition ({kind.value}) at {location:.10g}, residual {point.residual:.3e}")
    return point


def find_transition(
    geometry: Geometry,
    n: int,
    problem: Problem,
    m: int,
    normalizer: Normalizer,
    bracket: Tuple[float, float],
    tol: float = 1e-6,
    method: MethodChoice = MethodChoice.AUTO,
    solver: SolverConfig = DEFAULT_SOLVER,
    scan: ScanConfig = DEFAULT_SCAN,
) -> TransitionPoint:
    """Critical radius where the normalized curve's slope changes sign.

    Raises:
        DomainError: When the bracket (plus the slope stencil) leaves the domain
        BracketError: When the slope has the same sign at both ends
    """
    geometry = Geometry(geometry)
    lo, hi = sorted(bracket)
    check_grid(geometry, [lo - scan.fd_step(lo), hi + scan.fd_step(hi)])

    def curve(R: float) -> float:
        return normalized_value(geometry, n, problem, m, normalizer, R, method, solver)[0]

    return bisect_slope(curve, (lo, hi), tol, TransitionKind.RADIUS, scan)


def dense_scan_argmin(
    func: Callable[[float], float],
    lo: float,
    hi: float,
    samples: int = 10_000,
) -> float:
    """Argmin of func over a uniform scan of [lo, hi], refined by the parabola
    through the best sample and its neighbours."""
    if samples < 3:
        raise DomainError("dense_scan_argmin needs at least 3 samples", extra={"samples": samples})
    xs = np.linspace(lo, hi, samples)
    values = np.array([func(float(x)) for x in xs])
    i = int(np.argmin(values))
    if i == 0 or i == samples - 1:
        return float(xs[i])

    x0, x1, x2 = xs[i - 1], xs[i], xs[i + 1]
    f0, f1, f2 = values[i - 1], values[i], values[i + 1]
    num = (x1 - x0) ** 2 * (f1 - f2) - (x1 - x2) ** 2 * (f1 - f0)
    den = (x1 - x0) * (f1 - f2) - (x1 - x2) * (f1 - f0)
    if den == 0.0:
        return float(x1)
    return float(x1 - 0.5 * num / den)
