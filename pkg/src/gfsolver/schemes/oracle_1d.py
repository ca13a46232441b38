"""Standalone periodic 1D schemes used as test oracles for the 2D discretizations.

Nothing here is reachable from the command line. The formulas are written out directly
rather than reusing the 2D code, so agreement between both is a genuine check.
"""

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from gfsolver.core.constants import ALPHA_FLOOR
from gfsolver.models.enums import Direction
from gfsolver.physics.systems import SystemModel


class Line1D(BaseModel):
    """A periodic row of cells with full 2D state vectors."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    dx: float = Field(..., gt=0.0, description="Cell size along the line")
    q: np.ndarray = Field(..., description="States, shape (N, n_eq)")

    @field_validator("q", mode="before")
    @classmethod
    def _as_rows(cls, value: object) -> np.ndarray:
        arr = np.array(value, dtype=float)
        if arr.ndim != 2 or arr.shape[0] < 2:
            raise ValueError(f"expected shape (N >= 2, n_eq), got {arr.shape}")
        return arr

    @property
    def n(self) -> int:
        return int(self.q.shape[0])


def rusanov_1d_update(
    line: Line1D, system: SystemModel, direction: Direction | str = Direction.X
) -> np.ndarray:
    """
    First-order Rusanov rate ``-(F_{i+1/2} - F_{i-1/2}) / dx`` on periodic data.

    Raises:
        InadmissibleStateError: A cell state is inadmissible
    """
    q = line.q
    q_right = np.roll(q, -1, axis=0)
    f_left = system.physical_flux(q, direction)
    f_right = system.physical_flux(q_right, direction)
    speed = np.maximum(system.max_wave_speed(q), system.max_wave_speed(q_right))
    flux = 0.5 * (f_left + f_right) - 0.5 * speed[..., None] * (q_right - q)
    return -(flux - np.roll(flux, 1, axis=0)) / line.dx


def gf_quasi1d_flux(
    line: Line1D,
    system: SystemModel,
    source: np.ndarray | None = None,
    *,
    delta: float | None = None,
    alpha_floor: float = ALPHA_FLOOR,
) -> np.ndarray:
    """
    Interface fluxes of the global-flux scheme on data that is constant across the line.

    ``f_{i+1/2} = (f_i + f_{i+1})/2 - alpha delta/(2 dx) J (f_{i+1} - f_i - dx/2 (s_i + s_{i+1}))``
    with ``J`` and ``alpha = 1/lambda`` evaluated at the mean of the two states.

    Args:
        line: Periodic line data
        system: PDE system
        source: Point source per cell, shape of ``line.q``
        delta: Dissipation length (defaults to ``dx``, the square-cell value)
        alpha_floor: Wave-speed floor relative to the line maximum

    Returns:
        Flux at interface ``i + 1/2`` in row ``i``
    """
    q = line.q
    q_right = np.roll(q, -1, axis=0)
    s = np.zeros_like(q) if source is None else np.asarray(source, dtype=float)
    s_right = np.roll(s, -1, axis=0)
    delta = line.dx if delta is None else delta

    f = system.physical_flux(q, Direction.X)
    f_right = np.roll(f, -1, axis=0)
    qbar = 0.5 * (q + q_right)
    jac = system.flux_jacobian(qbar, Direction.X)
    floor = alpha_floor * float(np.max(system.max_wave_speed(q)))
    alpha = 1.0 / np.maximum(system.max_wave_speed(qbar), floor)

    balance = f_right - f - 0.5 * line.dx * (s + s_right)
    upwind = np.einsum("iab,ib->ia", jac, balance)
    coef = (alpha * delta / (2.0 * line.dx))[:, None]
    return 0.5 * (f + f_right) - coef * upwind


def gf_quasi1d_rate(
    line: Line1D,
    system: SystemModel,
    source: np.ndarray | None = None,
    *,
    delta: float | None = None,
    alpha_floor: float = ALPHA_FLOOR,
) -> np.ndarray:
    """Rate ``-(f_{i+1/2} - f_{i-1/2})/dx + (s_{i-1} + 2 s_i + s_{i+1})/4`` on periodic data."""
    flux = gf_quasi1d_flux(line, system, source, delta=delta, alpha_floor=alpha_floor)
    rate = -(flux - np.roll(flux, 1, axis=0)) / line.dx
    if source is not None:
        s = np.asarray(source, dtype=float)
        rate += 0.25 * (np.roll(s, 1, axis=0) + 2.0 * s + np.roll(s, -1, axis=0))
    return rate
