"""Error norms, convergence orders, conservation audits and flow diagnostics."""

import math
from collections.abc import Sequence

import numpy as np

from gfsolver.core.exceptions import ConfigurationError, GridError
from gfsolver.core.mesh import Grid
from gfsolver.models.enums import SystemId
from gfsolver.models.schemas import ErrorNorms
from gfsolver.physics.systems import Euler, SystemModel


def _interior(grid: Grid, q: np.ndarray) -> np.ndarray:
    q = np.asarray(q, dtype=float)
    if q.shape[:2] == (grid.nx, grid.ny):
        return q
    if q.shape[:2] == grid.padded_shape:
        return grid.interior(q)
    raise GridError(f"Field shape {q.shape[:2]} does not fit grid ({grid.nx}, {grid.ny})")


def error_norms(
    q: np.ndarray,
    reference: np.ndarray,
    grid: Grid,
    components: Sequence[str] | None = None,
) -> list[ErrorNorms]:
    """
    Discrete L2 and L-infinity errors per component.

    ``L2 = sqrt(dx dy sum (q - ref)^2)``, ``Linf = max |q - ref|``, over interior cells.

    Args:
        q: Numerical field (interior or padded)
        reference: Reference field on the same grid
        grid: Grid of both fields
        components: Component names (defaults to ``c0, c1, ...``)

    Raises:
        GridError: Either field does not fit the grid or they differ in components
    """
    diff_q = _interior(grid, q)
    diff_ref = _interior(grid, reference)
    if diff_q.shape != diff_ref.shape:
        raise GridError(f"Field shapes differ: {diff_q.shape} vs {diff_ref.shape}")
    diff = diff_q - diff_ref
    n_eq = diff.shape[-1]
    names = list(components) if components is not None else [f"c{k}" for k in range(n_eq)]

    l2 = np.sqrt(grid.cell_area * np.sum(diff**2, axis=(0, 1)))
    linf = np.max(np.abs(diff), axis=(0, 1))
    return [
        ErrorNorms(component=names[k], l2=float(l2[k]), linf=float(linf[k])) for k in range(n_eq)
    ]


def observed_order(e_coarse: float, e_fine: float, ratio: float = 2.0) -> float | None:
    """
    Observed order ``log(e_coarse / e_fine) / log(ratio)``.

    Returns None when either error is zero (nothing to measure).

    Example:
        >>> observed_order(0.4, 0.1)
        2.0
    """
    if e_coarse <= 0.0 or e_fine <= 0.0:
        return None
    return math.log(e_coarse / e_fine) / math.log(ratio)


def conserved_totals(q: np.ndarray, grid: Grid) -> np.ndarray:
    """Domain integral ``dx dy sum q`` per component."""
    return grid.cell_area * np.sum(_interior(grid, q), axis=(0, 1))


def conservation_audit(totals: Sequence[np.ndarray] | np.ndarray) -> np.ndarray:
    """
    Largest relative drift ``|S(t) - S(0)| / max(|S(0)|, 1)`` per component.

    Args:
        totals: Conserved totals per record, first record at t = 0

    Returns:
        Drift per component (zeros for fewer than two records)
    """
    arr = np.asarray(totals, dtype=float)
    if arr.ndim != 2 or arr.shape[0] < 2:
        return np.zeros(arr.shape[-1] if arr.ndim else 0)
    base = arr[0]
    return np.max(np.abs(arr - base), axis=0) / np.maximum(np.abs(base), 1.0)


def acoustic_energy(q: np.ndarray, grid: Grid, system: SystemModel | None = None) -> float:
    """
    Discrete acoustic energy ``dx dy sum (u^2 + v^2 + p^2) / 2``.

    Raises:
        ConfigurationError: The field is not an acoustics field
    """
    if system is not None and system.system_id is not SystemId.ACOUSTICS:
        raise ConfigurationError(
            f"Acoustic energy needs the acoustics system, got {system.system_id.value}"
        )
    field = _interior(grid, q)
    if field.shape[-1] != 3:
        raise ConfigurationError(f"Acoustics fields have 3 components, got {field.shape[-1]}")
    return float(0.5 * grid.cell_area * np.sum(field**2))


def energy_history_admissible(
    times: Sequence[float], energies: Sequence[float], max_speed: float
) -> bool:
    """
    Relaxed discrete energy monotonicity.

    The semi-discrete energy never grows; explicit steps may add ``O(dt^2)``. Each step
    must satisfy ``E(t + dt) <= E(t) + C dt^2 E(t)`` with
    ``C = 2 max_speed^2 (steps per unit time)``.
    """
    t = np.asarray(times, dtype=float)
    e = np.asarray(energies, dtype=float)
    if t.size < 2:
        return True
    span = t[-1] - t[0]
    if span <= 0.0:
        return True
    c = 2.0 * max_speed**2 * (t.size - 1) / span
    dt = np.diff(t)
    bound = e[:-1] + c * dt**2 * e[:-1]
    # relative roundoff slack for energies that are constant to machine precision
    slack = 8.0 * np.finfo(float).eps * np.abs(e[:-1])
    return bool(np.all(e[1:] <= bound + slack))


def max_mach(q: np.ndarray, system: SystemModel) -> float:
    """Largest local Mach number ``|v| / c`` of an Euler field."""
    if not isinstance(system, Euler):
        raise ConfigurationError("Mach number needs the Euler system")
    q = np.asarray(q, dtype=float)
    speed = np.hypot(q[..., 1], q[..., 2]) / q[..., 0]
    return float(np.max(speed / system.sound_speed(q)))


def scaled_momentum_error(
    q: np.ndarray, reference: np.ndarray, component: int = 1
) -> float:
    """``max |m - m_ref| / max |m_ref|`` for momentum component ``component``."""
    q = np.asarray(q, dtype=float)
    reference = np.asarray(reference, dtype=float)
    scale = float(np.max(np.abs(reference[..., component])))
    if scale == 0.0:
        raise ConfigurationError("Reference momentum vanishes; nothing to scale by")
    return float(np.max(np.abs(q[..., component] - reference[..., component])) / scale)


def reflection_asymmetry(q: np.ndarray, system: SystemModel) -> float:
    """
    L-infinity distance between a square field and its x <-> y reflection.

    The reflection transposes the cell indices and swaps the momentum components.
    """
    q = np.asarray(q, dtype=float)
    if q.shape[0] != q.shape[1]:
        raise GridError(f"Reflection needs a square field, got {q.shape[:2]}")
    mirrored = system.swap_axes(np.swapaxes(q, 0, 1))
    return float(np.max(np.abs(q - mirrored)))
