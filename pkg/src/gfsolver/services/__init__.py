"""Services for gfsolver."""

from gfsolver.services.solver import Solver

__all__ = ["Solver"]
