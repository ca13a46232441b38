"""gfsolver - global-flux and finite-volume solvers for 2D hyperbolic systems."""

__version__ = "0.1.0"
