"""Default numerical tolerances and the package exception types."""
from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    hermiticity: float = 1e-12
    # SIC / fiducial checks
    exact: float = 1e-10
    ingested: float = 1e-7
    # frame checks
    frame_exact: float = 1e-9
    frame_ingested: float = 1e-6
    psd: float = 1e-10
    trace_preserving: float = 1e-9
    jacobi: float = 1e-13
    match: float = 1e-6
    support: float = 1e-10
    closed_form: float = 1e-9


TOL = Tolerances()


class ValidationError(ValueError):
    """An object failed a structural check (hermiticity, trace, frame, SIC, ...)."""


class NotASicError(ValidationError):
    pass


class FiducialParseError(ValueError):
    """Malformed fiducial file."""
