"""Run drivers."""

from gfsolver.tools.convergence import run_convergence
from gfsolver.tools.run import run_single

__all__ = ["run_single", "run_convergence"]
