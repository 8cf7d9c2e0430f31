from enum import Enum
from pathlib import Path
from typing import Any, Dict, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from steklov.models.bounds import BoundKind
from steklov.models.scan import Constraint
from steklov.models.spectrum import Geometry, MethodChoice, Problem


class Command(str, Enum):
    EIG = "eig"
    SCAN = "scan"
    CRITICAL = "critical"
    CURVATURE = "curvature"
    BOUNDS = "bounds"
    FUZZ = "fuzz"


class OutputFormat(str, Enum):
    JSON = "json"
    CSV = "csv"


class RunConfig(BaseModel):
    """Every input of one CLI run; echoed back in the JSON output.

    Fields a command does not use stay None and are left out of the echo.
    """
    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={
            "example": {
                "command": "eig", "warp": "euclidean", "n": 3, "R": 1.0,
                "problem": "xi", "m": 1, "method": "auto", "out": "json"
            }
        }
    )

    command: Command
    out: OutputFormat = OutputFormat.JSON
    rtol: Optional[float] = Field(None, gt=0.0, le=1e-6, description="ODE relative tolerance")
    workers: int = Field(1, ge=1, description="Processes for grid evaluation")
    report: Optional[Path] = Field(None, description="Where to write the JSON report of a CSV run")

    # Geometry
    warp: Optional[str] = Field(None, description="Warp string, e.g. poly:a3=-0.1")
    geometry: Optional[Geometry] = None
    n: Optional[int] = Field(None, ge=2)
    R: Optional[float] = Field(None, gt=0.0)

    # Eigenvalue selection
    problem: Optional[Problem] = None
    m: Optional[int] = Field(None, ge=0)
    method: MethodChoice = MethodChoice.AUTO

    # Scans and transitions
    normalizer: Optional[str] = Field(None, description="R | sinR | tanHalf | sinHalf")
    power: Optional[int] = None
    r_min: Optional[float] = Field(None, gt=0.0)
    r_max: Optional[float] = Field(None, gt=0.0)
    samples: Optional[int] = Field(None, ge=2)
    margin: Optional[float] = Field(None, ge=0.0)
    lo: Optional[float] = None
    hi: Optional[float] = None
    tol: Optional[float] = Field(None, gt=0.0)
    oracle: Optional[int] = Field(None, ge=0, description="Dense-scan samples for the argmin oracle")

    # Curvature families
    constraint: Optional[Constraint] = None
    size: Optional[float] = Field(None, gt=0.0)
    k_min: Optional[float] = None
    k_max: Optional[float] = None

    # Bounds and fuzzing
    kind: Optional[BoundKind] = None
    m_max: Optional[int] = Field(None, ge=1)
    trials: Optional[int] = Field(None, ge=0)
    seed: Optional[int] = None
    probe: bool = False

    @field_validator('power')
    def power_is_one_or_three(cls, v):
        if v is not None and v not in (1, 3):
            raise ValueError("power must be 1 or 3")
        return v

    @model_validator(mode='after')
    def ranges_are_ordered(self):
        if self.r_min is not None and self.r_max is not None and not self.r_min < self.r_max:
            raise ValueError("--r-min must be below --r-max")
        if self.lo is not None and self.hi is not None and not self.lo < self.hi:
            raise ValueError("--lo must be below --hi")
        if self.k_min is not None and self.k_max is not None and not self.k_min < self.k_max:
            raise ValueError("--k-min must be below --k-max")
        return self

    def echo(self) -> Dict[str, Any]:
        """The configuration as plain JSON-ready values, unset fields omitted."""
        return self.model_dump(mode="json", exclude_none=True)
