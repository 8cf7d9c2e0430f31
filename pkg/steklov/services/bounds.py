"""Sharp warped-product bounds for xi_(m) and eta_(m), with a randomized harness.

Which inequalities apply depends on the curvature regime found by
check_hypotheses: Ric >= 0 with convex boundary, Ric <= 0 with convex boundary,
or neither (no bounds reported). Euclidean warps satisfy both and are treated as
Ric >= 0, where every bound is an equality.
"""

from functools import partial
from typing import Iterable, List, Optional, Tuple

import numpy as np

from steklov.config import DEFAULT_FUZZ, DEFAULT_HYPOTHESIS, DEFAULT_SOLVER, FuzzConfig, HypothesisConfig, SolverConfig
from steklov.models.bounds import BoundKind, BoundsReport, FuzzTrial, OpenQuestionProbe, Regime
from steklov.models.geometry import HypothesisReport, ManifoldSpec, WarpKind
from steklov.models.spectrum import Geometry, MethodChoice
from steklov.services.eigen import eta, xi
from steklov.services.warp import check_hypotheses, make_manifold, make_warp
from steklov.utils.error_handler import DomainError, SamplingError, WarpSpecError
from steklov.utils.logging import get_logger
from steklov.utils.parallel import ordered_map

logger = get_logger(__name__)

Bounds = Tuple[Optional[float], Optional[float]]


def regime_of(hypotheses: HypothesisReport) -> Regime:
    if not hypotheses.convex_boundary:
        return Regime.NOT_APPLICABLE
    if hypotheses.ricci_nonneg:
        return Regime.RIC_NONNEG
    if hypotheses.ricci_nonpos:
        return Regime.RIC_NONPOS
    return Regime.NOT_APPLICABLE


def _report(
    kind: BoundKind,
    manifold: ManifoldSpec,
    m: int,
    regime: Regime,
    value: float,
    bounds: Bounds,
    hypotheses: HypothesisReport,
    fuzz: FuzzConfig,
    hyp_config: HypothesisConfig,
) -> BoundsReport:
    lower, upper = bounds
    lower_slack = value - lower if lower is not None else None
    upper_slack = upper - value if upper is not None else None
    slacks = [s for s in (lower_slack, upper_slack) if s is not None]
    tight = bool(slacks) and all(abs(s) <= fuzz.slack_tol * abs(value) for s in slacks)
    euclidean = hypotheses.max_slope_defect <= hyp_config.euclid_tol

    report = BoundsReport(
        kind=kind,
        manifold=manifold,
        m=m,
        regime=regime,
        value=value,
        lower=lower,
        upper=upper,
        lower_slack=lower_slack,
        upper_slack=upper_slack,
        hypotheses=hypotheses,
        equality_flag=tight and euclidean,
    )
    if report.violated(fuzz.slack_tol):
        logger.warning(
            f"Bound violated: {kind.value} m={m} on {manifold.warp.describe()} n={manifold.n} "
            f"R={manifold.R}: value={value:.12e} lower={lower} upper={upper}"
        )
    elif tight and not euclidean:
        logger.warning(f"Bound {kind.value} m={m} is tight on a non-Euclidean warp {manifold.warp.describe()}")
    return report


def xi_bounds(n: int, m: int, h: float, h1: float, regime: Regime) -> Bounds:
    """(lower, upper) for xi_(m); None where the regime gives no bound."""
    base = m * m * (n + 2 * m)
    if regime == Regime.RIC_NONNEG:
        if n == 2:
            return base * h1 / h ** 3, base / h ** 3
        if n == 3:
            return base * h1 / h ** 3, None
        return base / h ** 3, None
    if regime == Regime.RIC_NONPOS:
        if n == 2:
            return base / h ** 3, base * h1 / h ** 3
        if n == 3:
            return None, base * h1 / h ** 3
        return None, base / h ** 3
    return None, None


def eta_bounds(n: int, m: int, h: float, h1: float, regime: Regime) -> Bounds:
    """(lower, upper) for eta_(m); None where the regime gives no bound."""
    base = n + 2 * m
    if regime == Regime.RIC_NONNEG:
        return base * h1 / h, base / h
    if regime == Regime.RIC_NONPOS:
        if n == 3 and m >= 1:
            return None, base * h1 / h
        return base / h, base * h1 / h
    return None, None


def verify_xi_bounds(
    manifold: ManifoldSpec,
    m: int,
    method: MethodChoice = MethodChoice.AUTO,
    fuzz: FuzzConfig = DEFAULT_FUZZ,
    hyp_config: HypothesisConfig = DEFAULT_HYPOTHESIS,
    solver: SolverConfig = DEFAULT_SOLVER,
) -> BoundsReport:
    """xi_(m) against its dimension-dependent sharp bounds."""
    if m < 1:
        raise DomainError(f"xi bounds need m >= 1, got {m}", extra={"m": m})
    hypotheses = check_hypotheses(manifold, config=hyp_config)
    regime = regime_of(hypotheses)
    value = xi(manifold, m, method, config=solver).value
    h, h1 = manifold.warp.h_and_slope(manifold.R)
    bounds = xi_bounds(manifold.n, m, h, h1, regime)
    return _report(BoundKind.XI, manifold, m, regime, value, bounds, hypotheses, fuzz, hyp_config)


def verify_eta_bounds(
    manifold: ManifoldSpec,
    m: int,
    method: MethodChoice = MethodChoice.AUTO,
    fuzz: FuzzConfig = DEFAULT_FUZZ,
    hyp_config: HypothesisConfig = DEFAULT_HYPOTHESIS,
    solver: SolverConfig = DEFAULT_SOLVER,
) -> BoundsReport:
    """eta_(m) against (n+2m) h'/h and (n+2m)/h, ordered by regime."""
    if m < 0:
        raise DomainError(f"eta bounds need m >= 0, got {m}", extra={"m": m})
    hypotheses = check_hypotheses(manifold, config=hyp_config)
    regime = regime_of(hypotheses)
    value = eta(manifold, m, method, config=solver).value
    h, h1 = manifold.warp.h_and_slope(manifold.R)
    bounds = eta_bounds(manifold.n, m, h, h1, regime)
    return _report(BoundKind.ETA, manifold, m, regime, value, bounds, hypotheses, fuzz, hyp_config)


def verify_eta_ratio(
    manifold: ManifoldSpec,
    m: int,
    method: MethodChoice = MethodChoice.AUTO,
    fuzz: FuzzConfig = DEFAULT_FUZZ,
    hyp_config: HypothesisConfig = DEFAULT_HYPOTHESIS,
    solver: SolverConfig = DEFAULT_SOLVER,
) -> BoundsReport:
    """eta_(m+1)/eta_(m) >= (n+2m+2)/(n+2m); only stated for Ric >= 0."""
    if m < 0:
        raise DomainError(f"eta ratio needs m >= 0, got {m}", extra={"m": m})
    hypotheses = check_hypotheses(manifold, config=hyp_config)
    regime = regime_of(hypotheses)
    value = eta(manifold, m + 1, method, config=solver).value / eta(manifold, m, method, config=solver).value
    n = manifold.n
    lower = (n + 2 * m + 2) / (n + 2 * m) if regime == Regime.RIC_NONNEG else None
    if regime != Regime.RIC_NONNEG:
        regime = Regime.NOT_APPLICABLE
    return _report(BoundKind.ETA_RATIO, manifold, m, regime, value, (lower, None), hypotheses, fuzz, hyp_config)


def verify_wang_xia(
    manifold: ManifoldSpec,
    method: MethodChoice = MethodChoice.AUTO,
    fuzz: FuzzConfig = DEFAULT_FUZZ,
    hyp_config: HypothesisConfig = DEFAULT_HYPOTHESIS,
    solver: SolverConfig = DEFAULT_SOLVER,
) -> BoundsReport:
    """xi_(1) >= (n+2) h'(R)/h(R)^3 under Ric >= 0 and convex boundary.

    This is the warped-product form of xi_1 >= (n+2)/(n-1) c lambda_1 with
    boundary principal curvature c = h'/h and lambda_1 = (n-1)/h^2.
    """
    hypotheses = check_hypotheses(manifold, config=hyp_config)
    regime = regime_of(hypotheses)
    if regime != Regime.RIC_NONNEG:
        regime = Regime.NOT_APPLICABLE
    value = xi(manifold, 1, method, config=solver).value
    h, h1 = manifold.warp.h_and_slope(manifold.R)
    lower = (manifold.n + 2) * h1 / h ** 3 if regime == Regime.RIC_NONNEG else None
    return _report(BoundKind.WANG_XIA, manifold, 1, regime, value, (lower, None), hypotheses, fuzz, hyp_config)


def verify_space_form_estimates(
    geometry: Geometry,
    m: int,
    R: float,
    fuzz: FuzzConfig = DEFAULT_FUZZ,
    hyp_config: HypothesisConfig = DEFAULT_HYPOTHESIS,
    solver: SolverConfig = DEFAULT_SOLVER,
) -> BoundsReport:
    """Two-sided xi_(m) estimates on unit-curvature disks in 2D.

    sphere:      m^2(m+1) / (4 sin^3(R/2)) < xi_(m) < 2 m^2(m+1) / sin^3 R
    hyperbolic:  2 m^2(m+1) / sinh^3 R < xi_(m) < m^2(m+1) / (4 sinh^3(R/2))
    """
    geometry = Geometry(geometry)
    if m < 1:
        raise DomainError(f"xi estimates need m >= 1, got {m}", extra={"m": m})
    manifold = make_manifold(2, R, make_warp(geometry.value))
    hypotheses = check_hypotheses(manifold, config=hyp_config)
    value = xi(manifold, m, config=solver).value
    c = m * m * (m + 1)
    if geometry == Geometry.SPHERE:
        regime = Regime.RIC_NONNEG
        bounds = (c / (4.0 * np.sin(0.5 * R) ** 3), 2.0 * c / np.sin(R) ** 3)
    else:
        regime = Regime.RIC_NONPOS
        bounds = (2.0 * c / np.sinh(R) ** 3, c / (4.0 * np.sinh(0.5 * R) ** 3))
    bounds = (float(bounds[0]), float(bounds[1]))
    return _report(BoundKind.SPACE_FORM_2D, manifold, m, regime, value, bounds, hypotheses, fuzz, hyp_config)


def all_bound_checks(
    manifold: ManifoldSpec,
    m_max: int,
    fuzz: FuzzConfig = DEFAULT_FUZZ,
    hyp_config: HypothesisConfig = DEFAULT_HYPOTHESIS,
    solver: SolverConfig = DEFAULT_SOLVER,
) -> List[BoundsReport]:
    """xi bounds for 1..m_max, eta bounds and ratios for 0..m_max, and the Wang-Xia bound."""
    reports = [verify_xi_bounds(manifold, m, fuzz=fuzz, hyp_config=hyp_config, solver=solver) for m in range(1, m_max + 1)]
    reports += [verify_eta_bounds(manifold, m, fuzz=fuzz, hyp_config=hyp_config, solver=solver) for m in range(0, m_max + 1)]
    reports += [verify_eta_ratio(manifold, m, fuzz=fuzz, hyp_config=hyp_config, solver=solver) for m in range(0, m_max + 1)]
    reports.append(verify_wang_xia(manifold, fuzz=fuzz, hyp_config=hyp_config, solver=solver))
    return reports


def sample_admissible_warp(
    n: int,
    rng: np.random.Generator,
    fuzz: FuzzConfig = DEFAULT_FUZZ,
    hyp_config: HypothesisConfig = DEFAULT_HYPOTHESIS,
) -> Tuple[ManifoldSpec, int]:
    """Rejection-sample h = r + a3 r^3 + a5 r^5 and R until h'' <= 0 and 0 < h' <= 1, Ric >= 0
    and convexity hold. Returns the manifold and the number of draws.

    Raises:
        SamplingError: When the budget of max_attempts draws runs out
    """
    for attempt in range(1, fuzz.max_attempts + 1):
        a3 = rng.uniform(*fuzz.a3_range)
        a5 = rng.uniform(*fuzz.a5_range)
        R = rng.uniform(*fuzz.radius_range)
        try:
            warp = make_warp(WarpKind.ODD_POLYNOMIAL, (a3, a5))
        except WarpSpecError:
            continue
        if not R < warp.max_radius:
            continue
        manifold = make_manifold(n, R, warp)
        hyp = check_hypotheses(manifold, config=hyp_config)
        if hyp.lemma1_holds and hyp.convex_boundary and hyp.ricci_nonneg:
            return manifold, attempt
    raise SamplingError(
        f"No admissible warp in {fuzz.max_attempts} draws",
        extra={"attempts": fuzz.max_attempts, "acceptance_rate": 0.0}
    )


def _fuzz_trial(
    index: int,
    n: int,
    m_max: int,
    seed: int,
    fuzz: FuzzConfig,
    hyp_config: HypothesisConfig,
    solver: SolverConfig,
) -> FuzzTrial:
    rng = np.random.default_rng([seed, index])
    try:
        manifold, attempts = sample_admissible_warp(n, rng, fuzz, hyp_config)
    except SamplingError as e:
        e.extra["trial"] = index
        raise
    reports = all_bound_checks(manifold, m_max, fuzz, hyp_config, solver)
    logger.debug(f"Trial {index}: {manifold.warp.describe()} R={manifold.R} after {attempts} draws")
    return FuzzTrial(index=index, warp=manifold.warp, R=manifold.R, attempts=attempts, reports=reports)


def fuzz_bounds(
    n: int,
    m_max: int,
    trials: int,
    seed: int,
    workers: int = 1,
    fuzz: FuzzConfig = DEFAULT_FUZZ,
    hyp_config: HypothesisConfig = DEFAULT_HYPOTHESIS,
    solver: SolverConfig = DEFAULT_SOLVER,
) -> List[FuzzTrial]:
    """Run every bound check on `trials` random admissible polynomial warps.

    Trial i draws from default_rng([seed, i]), so results do not depend on
    the number of workers.
    """
    if trials < 0:
        raise DomainError(f"trials must be >= 0, got {trials}", extra={"trials": trials})
    if m_max < 1:
        raise DomainError(f"m_max must be >= 1, got {m_max}", extra={"m_max": m_max})
    if n < 2:
        raise DomainError(f"n must be >= 2, got {n}", extra={"n": n})

    worker = partial(_fuzz_trial, n=n, m_max=m_max, seed=seed, fuzz=fuzz, hyp_config=hyp_config, solver=solver)
    results = ordered_map(worker, range(trials), workers)

    draws = sum(t.attempts for t in results)
    violations = sum(len(t.violations(fuzz.slack_tol)) for t in results)
    if results:
        logger.info(
            f"Fuzzed {trials} warps (n={n}, acceptance {trials / draws:.1%}): {violations} violations"
        )
    return results


def probe_open_question(trials: Iterable[FuzzTrial]) -> OpenQuestionProbe:
    """Tally xi_(m) against m^2(n+2m)/h^3(R) over the xi reports of n = 3 trials."""
    ratios = []
    for trial in trials:
        for report in trial.reports:
            manifold = report.manifold
            if report.kind != BoundKind.XI or manifold.n != 3:
                continue
            h = manifold.warp.h(manifold.R)
            ratios.append(report.value * h ** 3 / (report.m ** 2 * (manifold.n + 2 * report.m)))

    ratios = np.asarray(ratios, dtype=float)
    probe = OpenQuestionProbe(
        n=3,
        samples=int(ratios.size),
        above=int(np.count_nonzero(ratios > 1.0)),
        below=int(np.count_nonzero(ratios < 1.0)),
        min_ratio=float(ratios.min()) if ratios.size else None,
        max_ratio=float(ratios.max()) if ratios.size else None,
    )
    logger.info(f"Open-question probe: {probe.model_dump()}")
    return probe
