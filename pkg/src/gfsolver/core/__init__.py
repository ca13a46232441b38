"""Core configuration, errors, logging and the grid."""

from gfsolver.core.config import Settings, get_settings
from gfsolver.core.exceptions import (
    BoundaryError,
    ConfigurationError,
    GFSolverError,
    GridError,
    InadmissibleStateError,
    ReferenceUnavailableError,
    SolverAbortError,
)
from gfsolver.core.mesh import Grid, build_grid, corner_normal

__all__ = [
    "Settings",
    "get_settings",
    "GFSolverError",
    "ConfigurationError",
    "GridError",
    "ReferenceUnavailableError",
    "BoundaryError",
    "InadmissibleStateError",
    "SolverAbortError",
    "Grid",
    "build_grid",
    "corner_normal",
]
