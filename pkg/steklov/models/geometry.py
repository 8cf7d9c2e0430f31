import math
from enum import Enum
from functools import lru_cache
from typing import Tuple

import numpy as np
from numpy.polynomial import polynomial as P
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class WarpKind(str, Enum):
    """Families of warping functions."""
    EUCLIDEAN = "euclidean"
    SPHERE = "sphere"
    HYPERBOLIC = "hyperbolic"
    SPACE_FORM = "spaceform"
    ODD_POLYNOMIAL = "poly"


@lru_cache(maxsize=256)
def _poly_coefficients(coeffs: Tuple[float, ...]) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Power-basis coefficients of h, h' and h'' for h(r) = r + sum a_{2k+1} r^{2k+1}."""
    c = np.zeros(2 * len(coeffs) + 2)
    c[1] = 1.0
    for k, a in enumerate(coeffs, start=1):
        c[2 * k + 1] = a
    c1 = P.polyder(c)
    c2 = P.polyder(c1)
    return c, c1, c2


class WarpSpec(BaseModel):
    """A warping function h with exact evaluators for h, h' and h''.

    ``curvature`` is only meaningful for ``spaceform``; ``coeffs`` holds
    (a3, a5, ...) for ``poly``.
    """
    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={
            "example": {"kind": "poly", "coeffs": [-0.1666666, 0.0083333], "max_radius": 1.5707}
        }
    )

    kind: WarpKind = Field(..., description="Warp family")
    curvature: float = Field(0.0, description="Curvature K of a space-form warp")
    coeffs: Tuple[float, ...] = Field((), description="Odd coefficients a3, a5, ... of a polynomial warp")
    max_radius: float = Field(math.inf, gt=0.0, description="Supremum of radii where h > 0 and h' > 0")

    @field_validator('curvature')
    def curvature_must_be_finite(cls, v):
        if not math.isfinite(v):
            raise ValueError("Curvature must be finite")
        return v

    @field_validator('coeffs')
    def coeffs_must_be_finite(cls, v):
        for a in v:
            if not math.isfinite(a):
                raise ValueError(f"Coefficient {a} is not finite")
        return v

    @model_validator(mode='after')
    def coeffs_only_for_polynomials(self):
        if self.coeffs and self.kind != WarpKind.ODD_POLYNOMIAL:
            raise ValueError("Only polynomial warps carry coefficients")
        return self

    @property
    def effective_curvature(self) -> float:
        """Constant curvature of the analytic kinds (0 for polynomials)."""
        if self.kind == WarpKind.SPHERE:
            return 1.0
        if self.kind == WarpKind.HYPERBOLIC:
            return -1.0
        if self.kind == WarpKind.SPACE_FORM:
            return self.curvature
        return 0.0

    @property
    def is_space_form(self) -> bool:
        return self.kind != WarpKind.ODD_POLYNOMIAL

    def triple(self, r: float) -> Tuple[float, float, float]:
        """(h, h', h'') at r, without domain checks."""
        if self.kind == WarpKind.EUCLIDEAN:
            return r, 1.0, 0.0
        if self.kind == WarpKind.SPHERE:
            s = math.sin(r)
            return s, math.cos(r), -s
        if self.kind == WarpKind.HYPERBOLIC:
            s = math.sinh(r)
            return s, math.cosh(r), s
        if self.kind == WarpKind.SPACE_FORM:
            K = self.curvature
            if K > 0.0:
                k = math.sqrt(K)
                s = math.sin(k * r)
                return s / k, math.cos(k * r), -k * s
            if K < 0.0:
                k = math.sqrt(-K)
                s = math.sinh(k * r)
                return s / k, math.cosh(k * r), k * s
            return r, 1.0, 0.0
        c, c1, c2 = _poly_coefficients(self.coeffs)
        return float(P.polyval(r, c)), float(P.polyval(r, c1)), float(P.polyval(r, c2))

    def h(self, r: float) -> float:
        return self.triple(r)[0]

    def h_and_slope(self, r: float) -> Tuple[float, float]:
        """(h, h') at r; the pair the radial right-hand sides need."""
        h, h1, _ = self.triple(r)
        return h, h1

    def describe(self) -> str:
        """Warp string in the CLI grammar."""
        if self.kind == WarpKind.SPACE_FORM:
            return f"spaceform:K={self.curvature!r}"
        if self.kind == WarpKind.ODD_POLYNOMIAL:
            terms = ",".join(f"a{2 * k + 1}={a!r}" for k, a in enumerate(self.coeffs, start=1))
            return f"poly:{terms}"
        return self.kind.value


class ManifoldSpec(BaseModel):
    """Warped product [0,R] x S^{n-1} with metric dr^2 + h(r)^2 g_S."""
    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=2, description="Dimension")
    R: float = Field(..., gt=0.0, description="Boundary radius")
    warp: WarpSpec = Field(..., description="Warping function")

    @field_validator('R')
    def radius_must_be_finite(cls, v):
        if not math.isfinite(v):
            raise ValueError("Boundary radius must be finite")
        return v

    @model_validator(mode='after')
    def boundary_inside_warp_domain(self):
        if self.R >= self.warp.max_radius:
            raise ValueError(
                f"R={self.R} must stay below the warp's max radius {self.warp.max_radius}"
            )
        return self

    def tau(self, m: int) -> float:
        """Spherical-harmonic eigenvalue tau_m = m(n-2+m) on S^{n-1}."""
        return float(m * (self.n - 2 + m))

    def rescaled(self, c: float) -> "ManifoldSpec":
        """The manifold (n, cR, c*h(r/c)), i.e. the metric c^2 g.

        Only space forms have a closed rescaling inside this family:
        c*h_K(r/c) = h_{K/c^2}(r), and c*p(r/c) keeps odd polynomials odd.
        """
        warp = self.warp
        if warp.kind == WarpKind.EUCLIDEAN:
            new_warp = warp
        elif warp.kind == WarpKind.ODD_POLYNOMIAL:
            coeffs = tuple(a / c ** (2 * k) for k, a in enumerate(warp.coeffs, start=1))
            new_warp = WarpSpec(kind=warp.kind, coeffs=coeffs, max_radius=warp.max_radius * c)
        else:
            K = warp.effective_curvature / c ** 2
            new_warp = WarpSpec(
                kind=WarpKind.SPACE_FORM,
                curvature=K,
                max_radius=math.pi / math.sqrt(K) if K > 0 else math.inf,
            )
        return ManifoldSpec(n=self.n, R=self.R * c, warp=new_warp)


class HypothesisReport(BaseModel):
    """Sign checks of curvature and of h'' <= 0, 0 < h' <= 1 on [0, R]."""
    ricci_nonneg: bool = Field(..., description="-h''/h >= 0 and (n>=3) (1-h'^2)/h^2 >= 0 on the grid")
    ricci_nonpos: bool = Field(..., description="-h''/h <= 0 and (n>=3) (1-h'^2)/h^2 <= 0 on the grid")
    convex_boundary: bool = Field(..., description="h'(R) > 0")
    lemma1_holds: bool = Field(..., description="h'' <= 0 and 0 < h' <= 1 on [0, R]")
    worst_margin: float = Field(..., description="Most negative slack of the nonnegative-curvature checks")
    max_slope_defect: float = Field(0.0, description="max |h' - 1| on the grid")
