import math
from enum import Enum
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from steklov.models.spectrum import Problem


class NormalizerFactor(str, Enum):
    """Geometric factors of a geodesic disk.

    Sphere / hyperbolic values: R; sin R / sinh R; tan(R/2) / tanh(R/2);
    sin(R/2) / sinh(R/2).
    """
    GEODESIC_RADIUS = "geodesic_radius"
    BOUNDARY_RADIUS = "boundary_radius"
    STEREOGRAPHIC = "stereographic"
    AREA_FACTOR = "area_factor"


# CLI names of the factors
FACTOR_ALIASES = {
    "R": NormalizerFactor.GEODESIC_RADIUS,
    "sinR": NormalizerFactor.BOUNDARY_RADIUS,
    "tanHalf": NormalizerFactor.STEREOGRAPHIC,
    "sinHalf": NormalizerFactor.AREA_FACTOR,
}


class Normalizer(BaseModel):
    """factor(R)^power multiplying an eigenvalue curve."""
    model_config = ConfigDict(frozen=True)

    factor: NormalizerFactor
    power: int = Field(..., ge=1, le=3)

    @field_validator('power')
    def power_is_one_or_three(cls, v):
        if v not in (1, 3):
            raise ValueError("Normalizer power is 1 (sigma, eta) or 3 (xi)")
        return v

    @classmethod
    def for_problem(cls, factor: NormalizerFactor, problem: Problem) -> "Normalizer":
        return cls(factor=factor, power=3 if problem == Problem.XI else 1)

    def matches(self, problem: Problem) -> bool:
        return (self.power == 3) == (problem == Problem.XI)


class Verdict(str, Enum):
    INCREASING = "increasing"
    DECREASING = "decreasing"
    UNIMODAL_MIN = "unimodal_min"
    NONMONOTONE_OTHER = "nonmonotone_other"


class TransitionKind(str, Enum):
    RADIUS = "radius"
    CURVATURE = "curvature"


class TransitionPoint(BaseModel):
    """Located critical radius or curvature where the slope changes sign."""
    location: float
    bracket: Tuple[float, float]
    kind: TransitionKind
    residual: float = Field(..., ge=0.0, description="|slope| at the returned location")

    @field_validator('bracket')
    def bracket_must_be_ordered(cls, v):
        if not v[0] <= v[1]:
            raise ValueError(f"Bracket {v} is not ordered")
        return v

    @property
    def width(self) -> float:
        return self.bracket[1] - self.bracket[0]


class MonotonicityReport(BaseModel):
    """Verdict on a sampled curve.

    Strictness is checked on consecutive differences against a margin, either
    absolute or relative to the two values compared: this verifies, it does not
    prove.
    """
    verdict: Verdict
    samples: int = Field(..., ge=0)
    min_gap: float = Field(..., ge=0.0, description="Smallest consecutive |difference|")
    margin: float = Field(..., ge=0.0, description="Largest margin a difference had to exceed")
    relative_margin: bool = Field(False, description="Margin was rel_margin * max(|v_i|, |v_i+1|) per difference")
    transition: Optional[TransitionPoint] = None
    diagnostics: List[str] = Field(default_factory=list)


class CurvePoint(BaseModel):
    """One sample of a normalized eigenvalue curve; abscissa is R or K."""
    x: float
    value: float
    est_error: float = 0.0


class CurveGap(BaseModel):
    """A grid point whose eigenvalue computation failed."""
    x: float
    error: str


class Curve(BaseModel):
    """Sampled curve in grid order, with failed points recorded separately."""
    points: List[CurvePoint] = Field(default_factory=list)
    gaps: List[CurveGap] = Field(default_factory=list)

    @property
    def xs(self) -> List[float]:
        return [p.x for p in self.points]

    @property
    def values(self) -> List[float]:
        return [p.value for p in self.points]


class Constraint(str, Enum):
    FIXED_AREA = "fixed_area"
    FIXED_RADIUS = "fixed_radius"


class CurvatureFamily(BaseModel):
    """Geodesic disks in the 2D space forms M_K at fixed area A or fixed radius rho."""
    model_config = ConfigDict(frozen=True)

    constraint: Constraint
    size: float = Field(..., gt=0.0, description="Area A (fixed_area) or radius rho (fixed_radius)")
    problem: Problem
    m: int = Field(..., ge=0)
    K_range: Optional[Tuple[float, float]] = None

    @property
    def curvature_bound(self) -> float:
        """Supremum of admissible curvatures: 4 pi / A or (pi / rho)^2."""
        if self.constraint == Constraint.FIXED_AREA:
            return 4.0 * math.pi / self.size
        return (math.pi / self.size) ** 2

    @model_validator(mode='after')
    def range_inside_domain(self):
        if self.problem == Problem.XI and self.m == 0:
            raise ValueError("xi_(0) = 0 is excluded")
        if self.K_range is not None:
            lo, hi = self.K_range
            if not lo < hi:
                raise ValueError(f"K range {self.K_range} is empty")
            if hi >= self.curvature_bound:
                raise ValueError(
                    f"K range must stay below {self.curvature_bound} for this {self.constraint.value} family"
                )
        return self
