"""Configuration settings for the steklov package."""

from pathlib import Path
from typing import Optional, Tuple

from pydantic import BaseModel, Field, field_validator, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class LogConfig(BaseModel):
    """Logging configuration."""
    file: Optional[Path] = Field(
        None,
        description="Log file path (no file logging when unset)"
    )
    format: str = Field(
        "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        description="Log format string"
    )
    level: str = Field("WARNING", description="Console logging level")
    colored: bool = Field(
        True,
        description="Enable colored console output"
    )
    rotation: str = Field(
        "monthly",  # 'daily', 'weekly', 'monthly'
        description="Log rotation frequency"
    )
    backup_count: int = Field(
        3,
        description="Number of backup log files to keep"
    )


class SolverConfig(BaseModel):
    """Tolerances and thresholds of the radial integrators and quadratures."""
    model_config = {"frozen": True}

    rtol: float = Field(1e-10, gt=0.0, le=1e-6, description="Relative tolerance of the ODE stepper")
    atol: float = Field(1e-13, gt=0.0, description="Absolute tolerance of the ODE stepper")
    renorm_threshold: float = Field(
        1e100,
        gt=1.0,
        description="Rescale (u, u', I) once max(|u|, |u'|) exceeds this value"
    )
    r0_floor: float = Field(1e-8, gt=0.0, description="Smallest admissible start radius")
    r0_fraction: float = Field(1e-5, gt=0.0, lt=1.0, description="Start radius as a fraction of R")
    blowup: float = Field(1e12, gt=0.0, description="Riccati blow-up threshold for |z|")
    quad_rtol: float = Field(1e-12, gt=0.0, description="Relative tolerance of adaptive quadrature")
    max_renormalizations: int = Field(10_000, ge=1, description="Guard against endless restarts")

    def start_radius(self, R: float) -> float:
        """Start point r0 = max(floor, fraction * R) of the singular integrations."""
        return max(self.r0_floor, self.r0_fraction * R)


class HypothesisConfig(BaseModel):
    """Sampling parameters of the curvature and concavity checks."""
    model_config = {"frozen": True}

    tol: float = Field(1e-10, ge=0.0, description="Absolute slack allowed at each sample")
    grid_size: int = Field(256, ge=16, description="Uniform samples on [0, R]")
    euclid_tol: float = Field(1e-9, ge=0.0, description="max|h'-1| below which a warp counts as Euclidean")


class ScanConfig(BaseModel):
    """Parameters of normalized-curve scans and transition searches."""
    model_config = {"frozen": True}

    rel_margin: float = Field(1e-9, ge=0.0, description="Margin relative to the larger of two compared values")
    min_samples: int = Field(32, ge=3, description="Minimum curve length for a verdict")
    fd_floor: float = Field(1e-5, gt=0.0, description="Lower bound of the finite-difference step")
    fd_fraction: float = Field(1e-4, gt=0.0, description="Finite-difference step relative to the abscissa")
    sphere_edge: float = Field(0.05, gt=0.0, description="Distance kept from R = pi on the sphere")
    max_bisections: int = Field(200, ge=1, description="Bisection iteration cap")
    workers: int = Field(1, ge=1, description="Processes used for grid evaluation")

    def fd_step(self, x: float) -> float:
        """Central-difference step h = max(floor, fraction * |x|)."""
        return max(self.fd_floor, self.fd_fraction * abs(x))


class FuzzConfig(BaseModel):
    """Ranges of the random odd-polynomial warps used by the bounds harness."""
    model_config = {"frozen": True}

    a3_range: Tuple[float, float] = Field((-0.3, 0.0), description="Uniform range of a3")
    a5_range: Tuple[float, float] = Field((-0.05, 0.05), description="Uniform range of a5")
    radius_range: Tuple[float, float] = Field((0.2, 2.0), description="Uniform range of the candidate R")
    max_attempts: int = Field(400, ge=1, description="Rejection budget per trial")
    slack_tol: float = Field(1e-8, ge=0.0, description="Relative slack tolerated before a violation")

    @field_validator('a3_range', 'a5_range', 'radius_range')
    def range_must_be_ordered(cls, v):
        if v[0] > v[1]:
            raise ValueError(f"Range {v} is not ordered")
        return v

    @model_validator(mode='after')
    def radius_must_be_positive(self):
        if self.radius_range[0] <= 0.0:
            raise ValueError("Radius range must be positive")
        return self


class Config(BaseSettings):
    """Package configuration with environment variable support.

    Only logging is read from the environment; numerical defaults are fixed so
    a run is fully determined by its command-line arguments.
    """
    model_config = SettingsConfigDict(
        env_prefix="STEKLOV_",
        env_nested_delimiter="__",
        case_sensitive=False,
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    log: LogConfig = Field(default_factory=LogConfig)


# Create config instance
config = Config()

DEFAULT_SOLVER = SolverConfig()
DEFAULT_HYPOTHESIS = HypothesisConfig()
DEFAULT_SCAN = ScanConfig()
DEFAULT_FUZZ = FuzzConfig()
