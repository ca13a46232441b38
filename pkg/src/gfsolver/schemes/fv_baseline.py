"""Dimension-by-dimension Rusanov finite-volume schemes (first and second order)."""

import numpy as np

from gfsolver.core.exceptions import ConfigurationError
from gfsolver.core.mesh import Grid
from gfsolver.models.enums import BoundaryKind, Direction
from gfsolver.models.schemas import ReconstructionConfig
from gfsolver.physics.systems import ShallowWater, SystemModel
from gfsolver.schemes.boundary import BoundarySpec


def minmod3(a: np.ndarray | float, b: np.ndarray | float, c: np.ndarray | float) -> np.ndarray:
    """Smallest of three values if all positive, largest if all negative, else zero."""
    a, b, c = np.asarray(a, float), np.asarray(b, float), np.asarray(c, float)
    positive = (a > 0) & (b > 0) & (c > 0)
    negative = (a < 0) & (b < 0) & (c < 0)
    return np.where(
        positive,
        np.minimum(np.minimum(a, b), c),
        np.where(negative, np.maximum(np.maximum(a, b), c), 0.0),
    )


def limited_slope(
    q_m: np.ndarray, q_0: np.ndarray, q_p: np.ndarray, dx: float, theta: float
) -> np.ndarray:
    """
    Generalized minmod slope, componentwise.

    Args:
        q_m: Left neighbour state(s)
        q_0: Cell state(s)
        q_p: Right neighbour state(s)
        dx: Cell size
        theta: Limiter parameter in [1, 2]

    Returns:
        minmod3(theta (q_p - q_0)/dx, (q_p - q_m)/(2 dx), theta (q_0 - q_m)/dx)
    """
    if not dx > 0:
        raise ConfigurationError(f"Cell size must be positive, got {dx}")
    return minmod3(
        theta * (q_p - q_0) / dx,
        (q_p - q_m) / (2.0 * dx),
        theta * (q_0 - q_m) / dx,
    )


def rusanov_flux(
    system: SystemModel,
    q_left: np.ndarray,
    q_right: np.ndarray,
    direction: Direction | str,
) -> np.ndarray:
    """
    Local Lax-Friedrichs interface flux.

    The penalty speed is the larger of the two one-sided maximum wave speeds.

    Raises:
        InadmissibleStateError: Either trace is inadmissible
    """
    f_left = system.physical_flux(q_left, direction)
    f_right = system.physical_flux(q_right, direction)
    speed = np.maximum(system.max_wave_speed(q_left), system.max_wave_speed(q_right))
    return 0.5 * (f_left + f_right) - 0.5 * speed[..., None] * (q_right - q_left)


def _slopes(
    grid: Grid, q: np.ndarray, bc: BoundarySpec, axis: int, theta: float
) -> np.ndarray:
    """Limited slopes on interior cells and the first ghost layer along ``axis``."""
    g = grid.ghost
    h = grid.dx if axis == 0 else grid.dy
    n = grid.nx if axis == 0 else grid.ny
    lo_side, hi_side = ("west", "east") if axis == 0 else ("south", "north")

    qa = np.moveaxis(q, axis, 0)
    # cells g-1 .. g+n in padded indexing
    slope = limited_slope(qa[g - 2 : g + n], qa[g - 1 : g + n + 1], qa[g : g + n + 2], h, theta)
    if getattr(bc, lo_side).kind is not BoundaryKind.PERIODIC:
        slope[0] = 0.0
    if getattr(bc, hi_side).kind is not BoundaryKind.PERIODIC:
        slope[-1] = 0.0
    return np.moveaxis(slope, 0, axis)


def _flux_divergence(
    grid: Grid,
    system: SystemModel,
    q: np.ndarray,
    bc: BoundarySpec,
    recon: ReconstructionConfig,
    direction: Direction,
) -> np.ndarray:
    g = grid.ghost
    axis = direction.axis
    h = grid.dx if axis == 0 else grid.dy

    # interior rows of the transverse direction only
    if axis == 0:
        band = q[g - 1 : g + grid.nx + 1, g : g + grid.ny]
    else:
        band = q[g : g + grid.nx, g - 1 : g + grid.ny + 1]

    if recon.order == 2:
        slope = _slopes(grid, q, bc, axis, recon.theta)
        if axis == 0:
            slope = slope[:, g : g + grid.ny]
        else:
            slope = slope[g : g + grid.nx]
        half = 0.5 * h * slope
    else:
        half = np.zeros_like(band)

    band = np.moveaxis(band, axis, 0)
    half = np.moveaxis(half, axis, 0)
    # traces at interfaces k + 1/2 between band cells k and k + 1, k = 0 .. n
    q_left = band[:-1] + half[:-1]
    q_right = band[1:] - half[1:]
    flux = rusanov_flux(system, q_left, q_right, direction)
    div = (flux[1:] - flux[:-1]) / h
    return np.moveaxis(div, 0, axis)


def _bathymetry_source(
    grid: Grid, system: ShallowWater, q: np.ndarray, bathymetry: np.ndarray
) -> np.ndarray:
    """Cell-centered -g h grad b with central differences of b."""
    g = grid.ghost
    b = grid.halo(bathymetry, 1)
    db_dx = (b[2:, 1:-1] - b[:-2, 1:-1]) / (2.0 * grid.dx)
    db_dy = (b[1:-1, 2:] - b[1:-1, :-2]) / (2.0 * grid.dy)
    interior = q[g : g + grid.nx, g : g + grid.ny]
    return system.bathymetry_source(interior, db_dx, db_dy)


def fv_semidiscrete_update(
    grid: Grid,
    system: SystemModel,
    q: np.ndarray,
    bc: BoundarySpec,
    recon: ReconstructionConfig,
    *,
    bathymetry: np.ndarray | None = None,
) -> np.ndarray:
    """
    Semi-discrete finite-volume rate of the interior cells.

    Order 1 uses piecewise-constant traces, order 2 limited linear traces of the
    conservative variables. Order 2 reads two ghost layers; slopes in ghost cells next to
    non-periodic sides are zero.

    Args:
        grid: Grid of the run (ghost width 2 for order 2)
        system: PDE system
        q: Padded state field with ghosts filled
        bc: Boundary specification
        recon: Reconstruction order and limiter parameter
        bathymetry: Padded bathymetry (shallow water)

    Returns:
        Rate array of shape ``(nx, ny, n_eq)``

    Raises:
        ConfigurationError: Order 2 on a grid with fewer than two ghost layers
        InadmissibleStateError: A reconstructed trace is inadmissible
    """
    if recon.order == 2 and grid.ghost < 2:
        raise ConfigurationError("Second-order reconstruction needs a ghost width of 2")

    rate = -_flux_divergence(grid, system, q, bc, recon, Direction.X)
    rate -= _flux_divergence(grid, system, q, bc, recon, Direction.Y)
    if bathymetry is not None and isinstance(system, ShallowWater):
        rate += _bathymetry_source(grid, system, q, bathymetry)
    return rate
