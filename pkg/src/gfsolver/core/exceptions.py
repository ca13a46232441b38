"""Custom exceptions for gfsolver."""

from typing import Any


class GFSolverError(Exception):
    """Base exception for gfsolver."""

    def __init__(self, message: str, code: str = "GFS_ERROR") -> None:
        self.message = message
        self.code = code
        super().__init__(self.message)

    def to_dict(self) -> dict:
        """Convert exception to dictionary for JSON reports."""
        return {
            "error": True,
            "code": self.code,
            "message": self.message,
        }


class ConfigurationError(GFSolverError):
    """Invalid run configuration or command-line usage."""

    def __init__(self, message: str, key: str | None = None, code: str = "GFS_CONFIG") -> None:
        super().__init__(message, code)
        self.key = key

    def to_dict(self) -> dict:
        result = super().to_dict()
        if self.key:
            result["key"] = self.key
        return result


class GridError(ConfigurationError):
    """Grid cannot be built from the given extents or counts."""

    def __init__(self, message: str) -> None:
        super().__init__(message, code="GFS_GRID")


class ReferenceUnavailableError(ConfigurationError):
    """Exact solution requested for a case that has none."""

    def __init__(self, case: str) -> None:
        message = f"Case '{case}' has no closed-form reference solution"
        super().__init__(message, key="case", code="GFS_NO_REFERENCE")
        self.case = case

    def to_dict(self) -> dict:
        result = super().to_dict()
        result["case"] = self.case
        return result


class BoundaryError(GFSolverError):
    """Boundary specification is inconsistent."""

    def __init__(self, message: str, side: str | None = None) -> None:
        super().__init__(message, "GFS_BOUNDARY")
        self.side = side

    def to_dict(self) -> dict:
        result = super().to_dict()
        if self.side:
            result["side"] = self.side
        return result


class InadmissibleStateError(GFSolverError):
    """State outside the admissible set (non-positive density/depth/energy, non-finite)."""

    def __init__(
        self,
        reason: str,
        cell: tuple[int, ...] | None = None,
        state: Any = None,
    ) -> None:
        where = f" at cell {cell}" if cell is not None else ""
        super().__init__(f"Inadmissible state{where}: {reason}", "GFS_INADMISSIBLE")
        self.reason = reason
        self.cell = cell
        self.state = None if state is None else [float(v) for v in state]

    def to_dict(self) -> dict:
        result = super().to_dict()
        result["reason"] = self.reason
        if self.cell is not None:
            result["cell"] = list(self.cell)
        if self.state is not None:
            result["state"] = self.state
        return result


class SolverAbortError(GFSolverError):
    """Time integration stopped on an inadmissible or non-finite field."""

    def __init__(
        self,
        message: str,
        step: int,
        time: float,
        cell: tuple[int, ...] | None = None,
    ) -> None:
        super().__init__(message, "GFS_SOLVER_ABORT")
        self.step = step
        self.time = time
        self.cell = cell

    def to_dict(self) -> dict:
        result = super().to_dict()
        result["step"] = self.step
        result["time"] = self.time
        if self.cell is not None:
            result["cell"] = list(self.cell)
        return result
