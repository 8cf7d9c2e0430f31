"""Integration of the singular radial equation and its Riccati form.

    u'' + (n-1) h'/h u' - tau_m / h^2 u = 0,   u(0) = 0,
    z'  = -(z^2 + (n-2) h' z - tau_m) / h,     z = h u'/u,  z(0) = m.

r = 0 is a regular singular point, so every integration starts at
r0 = max(1e-8, 1e-5 R) from Frobenius data u ~ r^m. Writing h = r + a r^3 + ...,
the Riccati solution is z = m + c r^2 + O(r^4) with
c = -(n-2) m h'''(0) / (2(2m+n)); h'''(0) is read off as h''(r0)/r0 because h''
is odd. The start error is then O(r0^4) relative.
"""

import math
from functools import lru_cache
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import solve_ivp

from steklov.config import DEFAULT_SOLVER, SolverConfig
from steklov.models.geometry import ManifoldSpec
from steklov.models.spectrum import CoupledSolution, RadialSolution
from steklov.utils.error_handler import DomainError, SolverError
from steklov.utils.logging import get_logger

logger = get_logger(__name__)

STEPPER = "DOP853"


def _check_mode(m: int, minimum: int = 1) -> None:
    if m < minimum:
        raise DomainError(
            f"Mode index m={m} is not allowed here (m >= {minimum})",
            extra={"m": m}
        )


def _tolerances(config: SolverConfig, rtol: Optional[float], atol: Optional[float]) -> Tuple[float, float]:
    rtol = config.rtol if rtol is None else rtol
    atol = config.atol if atol is None else atol
    if not (0.0 < rtol <= 1e-6):
        raise DomainError(f"rtol must lie in (0, 1e-6], got {rtol}", extra={"rtol": rtol})
    if atol <= 0.0:
        raise DomainError(f"atol must be positive, got {atol}", extra={"atol": atol})
    return rtol, atol


def frobenius_start(manifold: ManifoldSpec, m: int, config: SolverConfig = DEFAULT_SOLVER) -> Tuple[float, float, float]:
    """Start radius r0 together with z(r0) and y(r0) = z(r0)/h(r0)."""
    n = manifold.n
    r0 = config.start_radius(manifold.R)
    h, _, h2 = manifold.warp.triple(r0)
    c = -(n - 2) * m * (h2 / r0) / (2.0 * (2 * m + n))
    z0 = m + c * r0 * r0
    return r0, z0, z0 / h


def _overflow_event(threshold: float, components: int) -> Callable:
    def overflow(r, y):
        return max(abs(v) for v in y[:components]) - threshold

    overflow.terminal = True
    overflow.direction = 1
    return overflow


def _run_renormalized(
    rhs: Callable,
    r_start: float,
    R: float,
    state: Sequence[float],
    scaled: Sequence[int],
    rtol: float,
    atol: float,
    config: SolverConfig,
) -> Tuple[np.ndarray, float, int]:
    """Integrate to R, rescaling when the solution exceeds the threshold.

    ``scaled`` gives the power of the scale factor each component carries
    (1 for u-like components, 2 for the weighted integral).
    """
    event = _overflow_event(config.renorm_threshold, sum(1 for p in scaled if p == 1))
    state = np.asarray(state, dtype=float)
    powers = np.asarray(scaled, dtype=float)
    r = r_start
    log_scale = 0.0
    steps = 0
    for _ in range(config.max_renormalizations):
        sol = solve_ivp(rhs, (r, R), state, method=STEPPER, rtol=rtol, atol=atol, events=event)
        steps += max(sol.t.size - 1, 0)
        if sol.status == -1:
            r_reached = float(sol.t[-1]) if sol.t.size else r
            raise SolverError(
                f"Radial integration failed at r={r_reached}: {sol.message}",
                extra={"r_reached": r_reached, "R": R}
            )
        if sol.status == 1 and sol.t_events[0].size:
            r = float(sol.t_events[0][0])
            state = np.asarray(sol.y_events[0][0], dtype=float)
            s = float(np.max(np.abs(state[powers == 1])))
            state = state / s ** powers
            log_scale += math.log(s)
            logger.debug(f"Renormalized at r={r:.6g} by {s:.3e}")
            continue
        return sol.y[:, -1], log_scale, steps
    raise SolverError(
        "Too many renormalizations in radial integration",
        extra={"r_reached": r, "R": R}
    )


@lru_cache(maxsize=4096)
def _integrate_u(
    manifold: ManifoldSpec,
    m: int,
    rtol: float,
    atol: float,
    config: SolverConfig,
    initial_scale: float,
) -> RadialSolution:
    n, R, warp = manifold.n, manifold.R, manifold.warp
    tau = manifold.tau(m)
    r0, _, y0 = frobenius_start(manifold, m, config)

    def rhs(r, y):
        h, h1 = warp.h_and_slope(r)
        u, du, _ = y
        return [du, -(n - 1) * h1 / h * du + tau / (h * h) * u, h ** (n - 1) * u * u]

    # Weight over [0, r0] with u = (r/r0)^m and h ~ r
    head = r0 ** n / (n + 2 * m)
    s = initial_scale
    state = [s, s * y0, s * s * head]
    (u, du, integral), log_scale, steps = _run_renormalized(
        rhs, r0, R, state, (1, 1, 2), rtol, atol, config
    )

    positive = bool(u > 0.0 and du > 0.0 and integral > 0.0)
    if not positive:
        logger.warning(
            f"Radial solution not positive at R for {warp.describe()} n={n} R={R} m={m}: "
            f"u={u:.3e} u'={du:.3e} I={integral:.3e}"
        )
    y_R = du / u
    h_R = warp.h(R)
    return RadialSolution(
        u_R=u,
        du_R=du,
        integral=integral,
        log_scale=log_scale,
        y_R=y_R,
        z_R=h_R * y_R,
        steps=steps,
        est_error=rtol * math.sqrt(max(steps, 1)),
        positive=positive,
    )


def integrate_u(
    manifold: ManifoldSpec,
    m: int,
    rtol: Optional[float] = None,
    atol: Optional[float] = None,
    config: SolverConfig = DEFAULT_SOLVER,
    initial_scale: float = 1.0,
) -> RadialSolution:
    """Integrate (u, u', I) with I' = h^{n-1} u^2 from r0 to R.

    Args:
        manifold: Geometry (n, R, h)
        m: Mode index, m >= 1
        rtol: Relative tolerance, 0 < rtol <= 1e-6 (default from config)
        atol: Absolute tolerance (default from config)
        initial_scale: Multiplier of the start data; results are scale free

    Raises:
        DomainError: For m < 1 or out-of-range tolerances
        SolverError: When the stepper cannot reach R
    """
    _check_mode(m)
    rtol, atol = _tolerances(config, rtol, atol)
    return _integrate_u(manifold, m, rtol, atol, config, float(initial_scale))


def _solve_riccati(
    manifold: ManifoldSpec,
    m: int,
    rtol: float,
    atol: float,
    config: SolverConfig,
    t_eval: Optional[np.ndarray] = None,
):
    n, R, warp = manifold.n, manifold.R, manifold.warp
    tau = manifold.tau(m)
    r0, z0, _ = frobenius_start(manifold, m, config)

    def rhs(r, z):
        h, h1 = warp.h_and_slope(r)
        return [-(z[0] * z[0] + (n - 2) * h1 * z[0] - tau) / h]

    def blowup(r, z):
        return abs(z[0]) - config.blowup

    blowup.terminal = True

    sol = solve_ivp(rhs, (r0, R), [z0], method=STEPPER, rtol=rtol, atol=atol, events=blowup, t_eval=t_eval)
    if sol.status == 1:
        r_hit = float(sol.t_events[0][0])
        raise SolverError(
            f"Riccati solution blew up at r={r_hit}; h may vanish or the warp is inadmissible",
            extra={"r_reached": r_hit, "R": R}
        )
    if sol.status == -1:
        r_reached = float(sol.t[-1]) if sol.t.size else r0
        raise SolverError(
            f"Riccati integration failed at r={r_reached}: {sol.message}",
            extra={"r_reached": r_reached, "R": R}
        )
    return sol


def integrate_z(
    manifold: ManifoldSpec,
    m: int,
    rtol: Optional[float] = None,
    config: SolverConfig = DEFAULT_SOLVER,
) -> float:
    """z_m(R) from the Riccati equation started at z(r0) ~ m.

    Raises:
        SolverError: On blow-up |z| > 1e12 or stepper failure
    """
    _check_mode(m)
    rtol, atol = _tolerances(config, rtol, None)
    sol = _solve_riccati(manifold, m, rtol, atol, config)
    return float(sol.y[0, -1])


def riccati_profile(
    manifold: ManifoldSpec,
    m: int,
    radii: Sequence[float],
    rtol: Optional[float] = None,
    config: SolverConfig = DEFAULT_SOLVER,
) -> List[float]:
    """z_m sampled at increasing radii inside (r0, R]."""
    _check_mode(m)
    rtol, atol = _tolerances(config, rtol, None)
    r0 = config.start_radius(manifold.R)
    radii = np.asarray(radii, dtype=float)
    if radii.size == 0 or np.any(np.diff(radii) <= 0) or radii[0] < r0 or radii[-1] > manifold.R:
        raise DomainError("Profile radii must increase inside [r0, R]", extra={"r0": r0, "R": manifold.R})
    sol = _solve_riccati(manifold, m, rtol, atol, config, t_eval=radii)
    return [float(z) for z in sol.y[0]]


@lru_cache(maxsize=1024)
def _integrate_coupled(
    manifold: ManifoldSpec,
    m: int,
    rtol: float,
    atol: float,
    config: SolverConfig,
) -> CoupledSolution:
    n, R, warp = manifold.n, manifold.R, manifold.warp
    tau = manifold.tau(m)
    r0, _, y0 = frobenius_start(manifold, m, config)

    def rhs(r, y):
        h, h1 = warp.h_and_slope(r)
        u, du, p, dp = y
        drift = (n - 1) * h1 / h
        potential = tau / (h * h)
        return [du, -drift * du + potential * u, dp, -drift * dp + potential * p + u]

    # L(r^{m+2}) = (4m + 2n) r^m for h = r
    weight = 4 * m + 2 * n
    state = [1.0, y0, r0 * r0 / weight, (m + 2) * r0 / weight]
    (u, du, p, dp), log_scale, steps = _run_renormalized(
        rhs, r0, R, state, (1, 1, 1, 1), rtol, atol, config
    )
    return CoupledSolution(u_R=u, du_R=du, psi_R=p, dpsi_R=dp, log_scale=log_scale, steps=steps)


def integrate_coupled(
    manifold: ManifoldSpec,
    m: int,
    rtol: Optional[float] = None,
    atol: Optional[float] = None,
    config: SolverConfig = DEFAULT_SOLVER,
) -> CoupledSolution:
    """Integrate u_m together with a particular solution of L psi = u_m.

    For m = 0 the homogeneous solution is the constant 1 and psi_p ~ r^2/(2n),
    which is the system with psi'(0) = 0.
    """
    _check_mode(m, minimum=0)
    rtol, atol = _tolerances(config, rtol, atol)
    return _integrate_coupled(manifold, m, rtol, atol, config)
