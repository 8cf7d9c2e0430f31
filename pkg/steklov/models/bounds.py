from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, Field

from steklov.models.geometry import HypothesisReport, ManifoldSpec, WarpSpec


class Regime(str, Enum):
    """Curvature regime deciding which inequalities apply."""
    RIC_NONNEG = "ric_nonneg"
    RIC_NONPOS = "ric_nonpos"
    NOT_APPLICABLE = "not_applicable"


class BoundKind(str, Enum):
    XI = "xi"
    ETA = "eta"
    ETA_RATIO = "eta_ratio"
    WANG_XIA = "wang_xia"
    SPACE_FORM_2D = "space_form_2d"


class BoundsReport(BaseModel):
    """An eigenvalue (or ratio) placed against its sharp bounds."""
    kind: BoundKind
    manifold: ManifoldSpec
    m: int = Field(..., ge=0)
    regime: Regime
    value: float
    lower: Optional[float] = None
    upper: Optional[float] = None
    lower_slack: Optional[float] = Field(None, description="value - lower")
    upper_slack: Optional[float] = Field(None, description="upper - value")
    hypotheses: HypothesisReport
    equality_flag: bool = Field(False, description="Every applicable slack within tolerance")

    @property
    def slacks(self) -> List[float]:
        return [s for s in (self.lower_slack, self.upper_slack) if s is not None]

    def violated(self, rel_tol: float) -> bool:
        """True when some slack is more negative than -rel_tol * |value|."""
        return any(s < -rel_tol * abs(self.value) for s in self.slacks)


class FuzzTrial(BaseModel):
    """One accepted random warp with all bound checks run on it."""
    index: int = Field(..., ge=0)
    warp: WarpSpec
    R: float
    attempts: int = Field(..., ge=1, description="Samples drawn before acceptance")
    reports: List[BoundsReport] = Field(default_factory=list)

    def violations(self, rel_tol: float) -> List[BoundsReport]:
        return [r for r in self.reports if r.violated(rel_tol)]


class OpenQuestionProbe(BaseModel):
    """Where xi_(m) sits relative to m^2(n+2m)/h^3(R) across sampled warps.

    Exploratory output only.
    """
    n: int
    samples: int = Field(0, ge=0)
    above: int = Field(0, ge=0, description="xi_(m) > m^2(n+2m)/h^3")
    below: int = Field(0, ge=0, description="xi_(m) < m^2(n+2m)/h^3")
    min_ratio: Optional[float] = Field(None, description="Smallest xi_(m) h^3 / (m^2(n+2m))")
    max_ratio: Optional[float] = Field(None, description="Largest xi_(m) h^3 / (m^2(n+2m))")
