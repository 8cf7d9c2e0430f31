"""Steklov eigenvalues sigma_(m), xi_(m), eta_(m) of a warped product.

With u_m the radial solution of radial.integrate_u and I = int_0^R h^{n-1} u_m^2:

    sigma_(m) = u'(R)/u(R)
    xi_(m)    = h^{n-1}(R) u'(R)^2 / I
    eta_(m)   = h^{n-1}(R) u(R)^2 / I,      eta_(0) = h^{n-1}(R) / int_0^R h^{n-1}

All three only use scale-free ratios of the radial data, so renormalization cancels.
Euclidean balls and 2D space-form disks have closed forms; ``auto`` prefers them.
"""

import math
import warnings
from typing import Callable, Dict, Optional, Tuple

from pydantic import ValidationError
from scipy.integrate import IntegrationWarning, quad

from steklov.config import DEFAULT_SOLVER, SolverConfig
from steklov.models.geometry import ManifoldSpec, WarpKind
from steklov.models.spectrum import EigenResult, Geometry, Method, MethodChoice, Problem
from steklov.services.radial import integrate_coupled, integrate_u
from steklov.utils.error_handler import DomainError, QuadratureError, SolverError
from steklov.utils.logging import get_logger

logger = get_logger(__name__)

FLAT_CURVATURE = 1e-12
AGREEMENT_TOL = 1e-6


def _geometry_functions(geometry: Geometry) -> Tuple[Callable[[float], float], Callable[[float], float]]:
    """(h, t) of the unit model space: h = sin or sinh, t = tan(r/2) or tanh(r/2)."""
    if geometry == Geometry.SPHERE:
        return math.sin, lambda r: math.tan(0.5 * r)
    return math.sinh, lambda r: math.tanh(0.5 * r)


def _check_radius(geometry: Geometry, R: float) -> None:
    if not R > 0.0 or (geometry == Geometry.SPHERE and R >= math.pi):
        raise DomainError(
            f"R={R} outside the {geometry.value} domain",
            extra={"geometry": geometry.value, "R": R}
        )


def quadrature(func: Callable[[float], float], a: float, b: float, config: SolverConfig = DEFAULT_SOLVER) -> float:
    """Adaptive Gauss-Kronrod integral of func over [a, b] to quad_rtol.

    Raises:
        QuadratureError: When QUADPACK reports non-convergence
    """
    with warnings.catch_warnings():
        warnings.simplefilter("error", IntegrationWarning)
        try:
            value, abserr = quad(func, a, b, epsabs=0.0, epsrel=config.quad_rtol, limit=200)
        except IntegrationWarning as e:
            raise QuadratureError(
                f"Quadrature did not converge on [{a}, {b}]: {e}",
                extra={"a": a, "b": b}
            )
    logger.debug(f"quad on [{a:.6g}, {b:.6g}] = {value:.15e} (abserr {abserr:.2e})")
    return value


def euclidean_closed_form(n: int, problem: Problem, m: int, R: float) -> float:
    """Eigenvalues of the Euclidean ball of radius R."""
    if problem == Problem.SIGMA:
        return m / R
    if problem == Problem.XI:
        return m * m * (n + 2 * m) / R ** 3
    return (n + 2 * m) / R


def _normalized_m_integral(geometry: Geometry, m: int, R: float, config: SolverConfig) -> float:
    """M(R) / t(R)^{2m}; the normalization keeps the integrand at most sin/sinh."""
    h, t = _geometry_functions(geometry)
    t_R = t(R)
    return quadrature(lambda r: (t(r) / t_R) ** (2 * m) * h(r), 0.0, R, config)


def m_integral(geometry: Geometry, m: int, R: float, config: SolverConfig = DEFAULT_SOLVER) -> float:
    """M(R) = int_0^R t(r)^{2m} h(r) dr for the unit sphere or hyperbolic plane."""
    _check_radius(geometry, R)
    _, t = _geometry_functions(geometry)
    return t(R) ** (2 * m) * _normalized_m_integral(geometry, m, R, config)


def m1_closed_form(geometry: Geometry, R: float) -> float:
    """Exact M(R) for m = 1."""
    _check_radius(geometry, R)
    if geometry == Geometry.SPHERE:
        return -4.0 * math.log(math.cos(0.5 * R)) + math.cos(R) - 1.0
    return math.cosh(R) - 1.0 - 4.0 * math.log(math.cosh(0.5 * R))


def closed_form_2d(
    geometry: Geometry,
    problem: Problem,
    m: int,
    R: float,
    config: SolverConfig = DEFAULT_SOLVER,
) -> float:
    """xi_(m) or eta_(m) of the unit-curvature geodesic disk of radius R.

    In 2D u_m = t(r)^m, so xi_(m) = m^2 t(R)^{2m} / (h(R) M(R)) and
    eta_(m) = h(R) t(R)^{2m} / M(R).
    """
    if problem not in (Problem.XI, Problem.ETA):
        raise DomainError(f"No 2D quadrature formula for {problem.value}")
    if m < 1:
        raise DomainError(f"closed_form_2d needs m >= 1, got {m}", extra={"m": m})
    _check_radius(geometry, R)
    h, _ = _geometry_functions(geometry)
    normalized = _normalized_m_integral(geometry, m, R, config)
    if problem == Problem.XI:
        return m * m / (h(R) * normalized)
    return h(R) / normalized


def space_form_2d(
    geometry: Geometry,
    problem: Problem,
    m: int,
    R: float,
    config: SolverConfig = DEFAULT_SOLVER,
) -> float:
    """Any of the three eigenvalues of the unit-curvature disk, m >= 0."""
    _check_radius(geometry, R)
    h, t = _geometry_functions(geometry)
    if problem == Problem.SIGMA:
        return m / h(R)
    if problem == Problem.ETA and m == 0:
        # cot(R/2) or coth(R/2)
        return 1.0 / t(R)
    return closed_form_2d(geometry, problem, m, R, config)


def _closed_route(manifold: ManifoldSpec) -> Optional[Method]:
    warp = manifold.warp
    if warp.kind == WarpKind.EUCLIDEAN:
        return Method.CLOSED_FORM_EUCLIDEAN
    if warp.kind == WarpKind.ODD_POLYNOMIAL:
        return None
    if abs(warp.effective_curvature) < FLAT_CURVATURE:
        return Method.CLOSED_FORM_EUCLIDEAN
    if manifold.n == 2:
        return Method.CLOSED_FORM_2D
    return None


def _closed_value(route: Method, problem: Problem, manifold: ManifoldSpec, m: int, config: SolverConfig) -> float:
    if route == Method.CLOSED_FORM_EUCLIDEAN:
        return euclidean_closed_form(manifold.n, problem, m, manifold.R)
    # 2D space form of curvature K: eig(K; R) = |K|^{p/2} eig(+-1; sqrt|K| R)
    K = manifold.warp.effective_curvature
    k = math.sqrt(abs(K))
    geometry = Geometry.SPHERE if K > 0 else Geometry.HYPERBOLIC
    power = 3 if problem == Problem.XI else 1
    return k ** power * space_form_2d(geometry, problem, m, k * manifold.R, config)


def _result(problem: Problem, m: int, value: float, method: Method, manifold: ManifoldSpec, est_error: float) -> EigenResult:
    try:
        return EigenResult(
            problem=problem, m=m, value=value, method=method, manifold=manifold, est_error=est_error
        )
    except ValidationError as e:
        raise SolverError(
            f"Computed {problem.value}_({m}) is not admissible: {e.errors()[0]['msg']}",
            extra={"value": value, "method": method.value, "warp": manifold.warp.describe(), "R": manifold.R}
        )


def weight_integral(manifold: ManifoldSpec, config: SolverConfig = DEFAULT_SOLVER) -> float:
    """int_0^R h^{n-1} dr, the volume of M up to the area of S^{n-1}."""
    n, warp = manifold.n, manifold.warp
    return quadrature(lambda r: warp.h(r) ** (n - 1), 0.0, manifold.R, config)


def eta0_quadrature(manifold: ManifoldSpec, config: SolverConfig = DEFAULT_SOLVER) -> float:
    """eta_(0) = h^{n-1}(R) / int_0^R h^{n-1} dr = |boundary| / |M|."""
    return manifold.warp.h(manifold.R) ** (manifold.n - 1) / weight_integral(manifold, config)


def _ode_value(problem: Problem, manifold: ManifoldSpec, m: int, rtol: Optional[float], config: SolverConfig) -> Tuple[float, float]:
    if problem == Problem.ETA and m == 0:
        return eta0_quadrature(manifold, config), config.quad_rtol
    sol = integrate_u(manifold, m, rtol=rtol, config=config)
    if problem == Problem.SIGMA:
        return sol.y_R, sol.est_error
    boundary = manifold.warp.h(manifold.R) ** (manifold.n - 1)
    if problem == Problem.XI:
        return boundary * sol.y_R ** 2 / sol.integral_ratio, 3.0 * sol.est_error
    return boundary / sol.integral_ratio, sol.est_error


def _coupled_ends(manifold: ManifoldSpec, m: int, rtol: Optional[float], config: SolverConfig):
    sol = integrate_coupled(manifold, m, rtol=rtol, config=config)
    logger.debug(f"Coupled system for m={m}: {sol.model_dump()}")
    return sol


def xi_coupled_crosscheck(
    manifold: ManifoldSpec,
    m: int,
    rtol: Optional[float] = None,
    config: SolverConfig = DEFAULT_SOLVER,
) -> float:
    """xi_(m) = -u'(R)/psi(R) where L psi = u_m and psi'(R) = 0.

    psi = psi_p + c u_m with c fixed by the Neumann condition at R.

    Raises:
        QuadratureError: When u_m'(R) = 0 leaves c undetermined
    """
    if m < 1:
        raise DomainError(f"xi needs m >= 1, got {m}", extra={"m": m})
    sol = _coupled_ends(manifold, m, rtol, config)
    if sol.du_R == 0.0:
        raise QuadratureError("Degenerate superposition: u'(R) = 0", extra={"m": m, "R": manifold.R})
    c = -sol.dpsi_R / sol.du_R
    psi_R = sol.psi_R + c * sol.u_R
    if psi_R == 0.0:
        raise QuadratureError("Degenerate superposition: psi(R) = 0", extra={"m": m, "R": manifold.R})
    return -sol.du_R / psi_R


def eta_coupled_crosscheck(
    manifold: ManifoldSpec,
    m: int,
    rtol: Optional[float] = None,
    config: SolverConfig = DEFAULT_SOLVER,
) -> float:
    """eta_(m) = u(R)/psi'(R) where L psi = u_m and psi(R) = 0.

    For m = 0 the homogeneous solution is the constant 1.

    Raises:
        QuadratureError: When u_m(R) = 0 leaves c undetermined
    """
    if m < 0:
        raise DomainError(f"eta needs m >= 0, got {m}", extra={"m": m})
    sol = _coupled_ends(manifold, m, rtol, config)
    if sol.u_R == 0.0:
        raise QuadratureError("Degenerate superposition: u(R) = 0", extra={"m": m, "R": manifold.R})
    c = -sol.psi_R / sol.u_R
    dpsi_R = sol.dpsi_R + c * sol.du_R
    if dpsi_R == 0.0:
        raise QuadratureError("Degenerate superposition: psi'(R) = 0", extra={"m": m, "R": manifold.R})
    return sol.u_R / dpsi_R


def _coupled_value(problem: Problem, manifold: ManifoldSpec, m: int, rtol: Optional[float], config: SolverConfig) -> Tuple[float, float]:
    if problem == Problem.SIGMA:
        raise DomainError("The coupled fourth-order systems only give xi and eta")
    if problem == Problem.XI:
        value = xi_coupled_crosscheck(manifold, m, rtol, config)
    else:
        value = eta_coupled_crosscheck(manifold, m, rtol, config)
    rtol = config.rtol if rtol is None else rtol
    return value, rtol * 10.0


def eigenvalue(
    problem: Problem,
    manifold: ManifoldSpec,
    m: int,
    method: MethodChoice = MethodChoice.AUTO,
    rtol: Optional[float] = None,
    config: SolverConfig = DEFAULT_SOLVER,
) -> EigenResult:
    """Compute sigma_(m), xi_(m) or eta_(m) by the requested route.

    Raises:
        DomainError: For inadmissible m or an unavailable method
        SolverError / QuadratureError: From the numerical routes
    """
    problem, method = Problem(problem), MethodChoice(method)
    minimum = 1 if problem == Problem.XI else 0
    if m < minimum:
        raise DomainError(f"{problem.value} needs m >= {minimum}, got {m}", extra={"m": m})

    if problem == Problem.SIGMA and m == 0:
        return _result(problem, 0, 0.0, _closed_route(manifold) or Method.ODE, manifold, 0.0)

    route = _closed_route(manifold)
    if problem == Problem.SIGMA and manifold.n == 2 and route is None:
        # z = m solves the 2D Riccati equation for every warp
        route = Method.CLOSED_FORM_2D

    if method == MethodChoice.CLOSED and route is None:
        raise DomainError(
            f"No closed form for {manifold.warp.describe()} in dimension {manifold.n}",
            extra={"warp": manifold.warp.describe(), "n": manifold.n}
        )

    if method in (MethodChoice.AUTO, MethodChoice.CLOSED) and route is not None:
        if problem == Problem.SIGMA and route == Method.CLOSED_FORM_2D:
            value = m / manifold.warp.h(manifold.R)
        else:
            value = _closed_value(route, problem, manifold, m, config)
        est_error = config.quad_rtol if route == Method.CLOSED_FORM_2D else 0.0
        return _result(problem, m, value, route, manifold, est_error)

    if method == MethodChoice.COUPLED:
        value, est_error = _coupled_value(problem, manifold, m, rtol, config)
        return _result(problem, m, value, Method.COUPLED, manifold, est_error)

    value, est_error = _ode_value(problem, manifold, m, rtol, config)
    return _result(problem, m, value, Method.ODE, manifold, est_error)


def sigma(manifold: ManifoldSpec, m: int, method: MethodChoice = MethodChoice.AUTO, config: SolverConfig = DEFAULT_SOLVER) -> EigenResult:
    """sigma_(m) = u_m'(R)/u_m(R); sigma_(0) = 0."""
    return eigenvalue(Problem.SIGMA, manifold, m, method, config=config)


def xi(manifold: ManifoldSpec, m: int, method: MethodChoice = MethodChoice.AUTO, config: SolverConfig = DEFAULT_SOLVER) -> EigenResult:
    """xi_(m), m >= 1."""
    return eigenvalue(Problem.XI, manifold, m, method, config=config)


def eta(manifold: ManifoldSpec, m: int, method: MethodChoice = MethodChoice.AUTO, config: SolverConfig = DEFAULT_SOLVER) -> EigenResult:
    """eta_(m), m >= 0."""
    return eigenvalue(Problem.ETA, manifold, m, method, config=config)


def compare_methods(problem: Problem, manifold: ManifoldSpec, m: int, config: SolverConfig = DEFAULT_SOLVER) -> Dict[Method, float]:
    """Every applicable route's value; logs a warning when two disagree by more than 1e-6."""
    problem = Problem(problem)
    values: Dict[Method, float] = {}
    for choice in (MethodChoice.CLOSED, MethodChoice.ODE, MethodChoice.COUPLED):
        if choice == MethodChoice.COUPLED and problem == Problem.SIGMA:
            continue
        try:
            result = eigenvalue(problem, manifold, m, choice, config=config)
        except DomainError:
            continue
        values[result.method] = result.value

    reference = next(iter(values.values()), None)
    for method, value in values.items():
        if reference and abs(value - reference) > AGREEMENT_TOL * abs(reference):
            logger.warning(
                f"Method disagreement for {problem.value}_({m}) on {manifold.warp.describe()} "
                f"n={manifold.n} R={manifold.R}: {method.value}={value:.12e} vs {reference:.12e}"
            )
    return values
