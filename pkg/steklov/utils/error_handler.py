"""Centralized error handling for the package."""

from typing import Any, Dict, Optional

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_FAILURE = 3


class SteklovError(Exception):
    """Base exception class for steklov computations."""

    label = "Steklov Error"

    def __init__(
        self,
        message: str,
        exit_code: int = EXIT_FAILURE,
        extra: Optional[Dict[str, Any]] = None
    ):
        super().__init__(message)
        self.message = message
        self.exit_code = exit_code
        self.extra = extra or {}


class UsageError(SteklovError):
    """Raised when command-line input cannot be turned into a run configuration."""

    label = "Usage Error"

    def __init__(self, message: str, extra: Optional[Dict[str, Any]] = None):
        super().__init__(message=message, exit_code=EXIT_USAGE, extra=extra)


class DomainError(SteklovError):
    """Raised when an input lies outside the domain of an operation."""

    label = "Domain Error"

    def __init__(self, message: str, extra: Optional[Dict[str, Any]] = None):
        super().__init__(message=message, exit_code=EXIT_FAILURE, extra=extra)


class WarpSpecError(DomainError):
    """Raised for malformed or inadmissible warping functions."""

    label = "Warp Error"


class SolverError(SteklovError):
    """Raised when an ODE integration fails (step underflow, blow-up)."""

    label = "Solver Error"

    def __init__(self, message: str, extra: Optional[Dict[str, Any]] = None):
        super().__init__(message=message, exit_code=EXIT_FAILURE, extra=extra)


class QuadratureError(SteklovError):
    """Raised when adaptive quadrature fails or a superposition degenerates."""

    label = "Numeric Error"

    def __init__(self, message: str, extra: Optional[Dict[str, Any]] = None):
        super().__init__(message=message, exit_code=EXIT_FAILURE, extra=extra)


class BracketError(SteklovError):
    """Raised when a bracket does not enclose a sign change of the slope."""

    label = "Bracket Error"

    def __init__(self, message: str, extra: Optional[Dict[str, Any]] = None):
        super().__init__(message=message, exit_code=EXIT_FAILURE, extra=extra)


class SamplingError(SteklovError):
    """Raised when rejection sampling of admissible warps runs out of budget."""

    label = "Sampling Error"

    def __init__(self, message: str, extra: Optional[Dict[str, Any]] = None):
        super().__init__(message=message, exit_code=EXIT_FAILURE, extra=extra)


class InternalError(SteklovError):
    """An unexpected exception raised while a command ran."""

    label = "Internal Error"

    def __init__(self, message: str, extra: Optional[Dict[str, Any]] = None):
        super().__init__(message=message, exit_code=EXIT_FAILURE, extra=extra)


def error_payload(exc: SteklovError) -> Dict[str, Any]:
    """Structured JSON error object for a failed run."""
    return {
        "error": exc.label,
        "message": exc.message,
        "extra": exc.extra,
    }
