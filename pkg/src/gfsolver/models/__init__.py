"""Data models for gfsolver."""

from gfsolver.models.enums import (
    BoundaryKind,
    Direction,
    Integrator,
    Scheme,
    SourceQuadrature,
    StopReason,
    SystemId,
)
from gfsolver.models.schemas import (
    ConvergenceReport,
    ErrorNorms,
    MeshLevel,
    ReconstructionConfig,
    RunConfig,
    RunSummary,
    TimeConfig,
)

__all__ = [
    "SystemId",
    "Direction",
    "Scheme",
    "Integrator",
    "BoundaryKind",
    "SourceQuadrature",
    "StopReason",
    "TimeConfig",
    "ReconstructionConfig",
    "RunConfig",
    "ErrorNorms",
    "MeshLevel",
    "ConvergenceReport",
    "RunSummary",
]
