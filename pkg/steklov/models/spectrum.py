from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, model_validator

from steklov.models.geometry import ManifoldSpec


class Problem(str, Enum):
    """The three Steklov problems: second order, type-one and type-two fourth order."""
    SIGMA = "sigma"
    XI = "xi"
    ETA = "eta"


class Method(str, Enum):
    """How an eigenvalue was actually computed."""
    ODE = "ode"
    CLOSED_FORM_2D = "closed_form_2d"
    CLOSED_FORM_EUCLIDEAN = "closed_form_euclidean"
    COUPLED = "coupled"


class MethodChoice(str, Enum):
    """Requested computation route; ``auto`` picks a closed form when one applies."""
    AUTO = "auto"
    ODE = "ode"
    CLOSED = "closed"
    COUPLED = "coupled"


class Geometry(str, Enum):
    """Unit-curvature model spaces used by the 2D closed forms and scans."""
    SPHERE = "sphere"
    HYPERBOLIC = "hyperbolic"


class RadialSolution(BaseModel):
    """Endpoint data of the radial solution u_m, in renormalized units."""
    model_config = ConfigDict(frozen=True)

    u_R: float = Field(..., description="u_m(R) after rescaling")
    du_R: float = Field(..., description="u_m'(R) after rescaling")
    integral: float = Field(..., description="int_0^R h^{n-1} u_m^2 dr, same scaling")
    log_scale: float = Field(0.0, description="Accumulated log of renormalization factors")
    y_R: float = Field(..., description="u'(R)/u(R)")
    z_R: float = Field(..., description="h(R) u'(R)/u(R)")
    steps: int = Field(..., ge=0, description="Accepted stepper steps")
    est_error: float = Field(..., ge=0.0, description="Heuristic relative error estimate")
    positive: bool = Field(True, description="u, u' and the integral stayed positive at R")

    @property
    def integral_ratio(self) -> float:
        """Scale-free I/u(R)^2."""
        return self.integral / self.u_R ** 2


class CoupledSolution(BaseModel):
    """Endpoint data of (u_m, psi_p): homogeneous and particular radial solutions."""
    model_config = ConfigDict(frozen=True)

    u_R: float
    du_R: float
    psi_R: float = Field(..., description="Particular solution of L psi = u_m at R")
    dpsi_R: float
    log_scale: float = 0.0
    steps: int = Field(..., ge=0)


class EigenResult(BaseModel):
    """One eigenvalue sigma_(m), xi_(m) or eta_(m) with its provenance."""
    model_config = ConfigDict(frozen=True)

    problem: Problem
    m: int = Field(..., ge=0)
    value: float
    method: Method
    manifold: ManifoldSpec
    est_error: float = Field(0.0, ge=0.0)

    @model_validator(mode='after')
    def value_sign_matches_problem(self):
        if self.problem == Problem.SIGMA and self.m == 0:
            if self.value != 0.0:
                raise ValueError("sigma_(0) is exactly 0")
        elif not self.value > 0.0:
            raise ValueError(f"{self.problem.value}_({self.m}) must be positive, got {self.value}")
        return self
