"""Warping functions: construction, evaluation and curvature hypothesis checks.

Curvature convention: for g = dr^2 + h^2 g_S on [0,R] x S^{n-1} the Ricci
tensor is diagonal with radial component -(n-1) h''/h and tangential component
-h''/h + (n-2)(1-h'^2)/h^2. The sign checks below test the two terms
-h''/h and (1-h'^2)/h^2 separately, which fixes the sign of both components.
For n = 2 only -h''/h (the Gauss curvature) is checked.
"""

import math
import re
from typing import Iterable, Optional, Sequence, Tuple, Union

import numpy as np
from numpy.polynomial import polynomial as P
from pydantic import ValidationError
from scipy.optimize import bisect

from steklov.config import DEFAULT_HYPOTHESIS, HypothesisConfig
from steklov.models.geometry import HypothesisReport, ManifoldSpec, WarpKind, WarpSpec, _poly_coefficients
from steklov.utils.error_handler import DomainError, WarpSpecError
from steklov.utils.logging import get_logger

logger = get_logger(__name__)

POLY_SEARCH_LIMIT = 1e3
POLY_SEARCH_TOL = 1e-12
_POLY_SCAN = np.geomspace(1e-6, POLY_SEARCH_LIMIT, 4096)


def _poly_max_radius(coeffs: Tuple[float, ...]) -> float:
    """First zero of min(h, h') in (0, 1e3], or +inf when there is none."""
    c, c1, _ = _poly_coefficients(coeffs)

    def positivity(r: float) -> float:
        return min(float(P.polyval(r, c)), float(P.polyval(r, c1)))

    values = np.minimum(P.polyval(_POLY_SCAN, c), P.polyval(_POLY_SCAN, c1))
    bad = np.nonzero(values <= 0.0)[0]
    if bad.size == 0:
        return math.inf
    i = int(bad[0])
    hi = float(_POLY_SCAN[i])
    if values[i] == 0.0:
        return hi
    lo = float(_POLY_SCAN[i - 1]) if i > 0 else 0.0
    if lo == 0.0:
        raise WarpSpecError(
            "Polynomial warp loses positivity immediately after r=0",
            extra={"coeffs": list(coeffs)}
        )
    return float(bisect(positivity, lo, hi, xtol=POLY_SEARCH_TOL))


def make_warp(kind: Union[WarpKind, str], params: Sequence[float] = ()) -> WarpSpec:
    """Build a WarpSpec.

    Args:
        kind: Warp family (or its string value)
        params: (K,) for a space form, (a3, a5, ...) for an odd polynomial

    Raises:
        WarpSpecError: For unknown kinds or malformed parameters
    """
    try:
        kind = WarpKind(kind)
    except ValueError:
        raise WarpSpecError(f"Unknown warp kind: {kind}")

    params = tuple(float(p) for p in params)
    try:
        if kind in (WarpKind.EUCLIDEAN, WarpKind.HYPERBOLIC):
            return WarpSpec(kind=kind)
        if kind == WarpKind.SPHERE:
            return WarpSpec(kind=kind, max_radius=math.pi)
        if kind == WarpKind.SPACE_FORM:
            if len(params) != 1:
                raise WarpSpecError("A space-form warp takes exactly one parameter K")
            K = params[0]
            if not math.isfinite(K):
                raise WarpSpecError(f"Curvature K must be finite, got {K}")
            max_radius = math.pi / math.sqrt(K) if K > 0 else math.inf
            return WarpSpec(kind=kind, curvature=K, max_radius=max_radius)

        # Odd polynomial h(r) = r + a3 r^3 + a5 r^5 + ...
        if any(not math.isfinite(a) for a in params):
            raise WarpSpecError("Polynomial coefficients must be finite", extra={"coeffs": list(params)})
        _, c1, _ = _poly_coefficients(params)
        if P.polyval(0.0, c1) != 1.0:
            raise WarpSpecError("Polynomial warp must satisfy h'(0) = 1", extra={"coeffs": list(params)})
        return WarpSpec(kind=kind, coeffs=params, max_radius=_poly_max_radius(params))
    except ValidationError as e:
        raise WarpSpecError(f"Invalid warp: {e.errors()[0]['msg']}")


_WARP_PATTERN = re.compile(r"^(?P<kind>[a-z]+)(?::(?P<args>.*))?$")
_POLY_ARG = re.compile(r"^a(?P<index>\d+)$")


def parse_warp(text: str) -> WarpSpec:
    """Parse ``euclidean | sphere | hyperbolic | spaceform:K=<real> | poly:a3=<real>[,a5=<real>,...]``."""
    match = _WARP_PATTERN.match(text.strip())
    if not match:
        raise WarpSpecError(f"Cannot parse warp '{text}'")
    kind, args = match.group("kind"), match.group("args")

    if kind in ("euclidean", "sphere", "hyperbolic"):
        if args:
            raise WarpSpecError(f"Warp '{kind}' takes no parameters")
        return make_warp(kind)

    assignments = {}
    for item in (args or "").split(","):
        key, sep, value = item.partition("=")
        if not sep:
            raise WarpSpecError(f"Expected name=value in warp '{text}'")
        key = key.strip()
        if key in assignments:
            raise WarpSpecError(f"Duplicate parameter '{key}' in warp '{text}'")
        try:
            assignments[key] = float(value)
        except ValueError:
            raise WarpSpecError(f"Not a number: '{value}' in warp '{text}'")

    if kind == "spaceform":
        if set(assignments) != {"K"}:
            raise WarpSpecError("spaceform expects exactly K=<real>")
        return make_warp(WarpKind.SPACE_FORM, (assignments["K"],))

    if kind == "poly":
        indices = {}
        for key, value in assignments.items():
            m = _POLY_ARG.match(key)
            index = int(m.group("index")) if m else 0
            if index < 3 or index % 2 == 0:
                raise WarpSpecError(f"Polynomial coefficients are a3, a5, ...; got '{key}'")
            if index in indices:
                raise WarpSpecError(f"Duplicate coefficient '{key}' in warp '{text}'")
            indices[index] = value
        top = max(indices)
        coeffs = tuple(indices.get(k, 0.0) for k in range(3, top + 1, 2))
        return make_warp(WarpKind.ODD_POLYNOMIAL, coeffs)

    raise WarpSpecError(f"Unknown warp kind '{kind}'")


def make_manifold(n: int, R: float, warp: WarpSpec) -> ManifoldSpec:
    """Validated ManifoldSpec; domain violations become DomainError."""
    try:
        return ManifoldSpec(n=n, R=R, warp=warp)
    except ValidationError as e:
        raise DomainError(
            f"Invalid manifold: {e.errors()[0]['msg']}",
            extra={"n": n, "R": R, "warp": warp.describe()}
        )


def evaluate(warp: WarpSpec, r: float) -> Tuple[float, float, float]:
    """(h(r), h'(r), h''(r)) from the exact evaluators.

    Raises:
        DomainError: When r is outside [0, max_radius)
    """
    if not (0.0 <= r < warp.max_radius):
        raise DomainError(
            f"r={r} outside the warp domain [0, {warp.max_radius})",
            extra={"r": r, "warp": warp.describe()}
        )
    return warp.triple(r)


def _samples(manifold: ManifoldSpec, grid_size: int) -> Iterable[Tuple[float, float, float, float]]:
    for r in np.linspace(0.0, manifold.R, grid_size):
        r = float(r)
        yield (r,) + manifold.warp.triple(r)


def check_hypotheses(
    manifold: ManifoldSpec,
    grid_size: Optional[int] = None,
    config: HypothesisConfig = DEFAULT_HYPOTHESIS,
) -> HypothesisReport:
    """Sample [0, R] uniformly and report curvature signs, convexity and the concavity conditions.

    Reports only; never raises for failing hypotheses.
    """
    grid_size = grid_size or config.grid_size
    if grid_size < 16:
        raise DomainError("check_hypotheses needs at least 16 samples", extra={"grid_size": grid_size})
    tol = config.tol
    higher_dim = manifold.n >= 3

    nonneg = nonpos = concave = True
    worst = math.inf
    slope_defect = 0.0
    for r, h, h1, h2 in _samples(manifold, grid_size):
        slope_defect = max(slope_defect, abs(h1 - 1.0))
        concavity_slacks = (-h2, h1, 1.0 - h1)
        concave = concave and -h2 >= -tol and h1 > 0.0 and 1.0 - h1 >= -tol
        worst = min(worst, *concavity_slacks)
        if r == 0.0:
            continue
        gauss = -h2 / h
        ricci_terms = (gauss, (1.0 - h1 * h1) / (h * h)) if higher_dim else (gauss,)
        nonneg = nonneg and all(t >= -tol for t in ricci_terms)
        nonpos = nonpos and all(t <= tol for t in ricci_terms)
        worst = min(worst, *ricci_terms)

    _, h1_R, _ = manifold.warp.triple(manifold.R)
    report = HypothesisReport(
        ricci_nonneg=nonneg,
        ricci_nonpos=nonpos,
        convex_boundary=h1_R > 0.0,
        lemma1_holds=concave,
        worst_margin=worst,
        max_slope_defect=slope_defect,
    )
    logger.debug(f"Hypotheses for {manifold.warp.describe()} n={manifold.n} R={manifold.R}: {report.model_dump()}")
    return report
