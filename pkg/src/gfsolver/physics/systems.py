"""PDE system models: fluxes, analytic Jacobians, wave speeds and variable conversions.

All evaluations are vectorized over leading array dimensions; the last axis holds the
conservative components. A single state is simply an array of shape ``(n_eq,)``.
"""

from abc import ABC, abstractmethod

import numpy as np

from gfsolver.core.constants import COMPONENT_NAMES, GAMMA, GRAVITY
from gfsolver.core.exceptions import ConfigurationError, InadmissibleStateError
from gfsolver.models.enums import Direction, SystemId


def _first_bad(mask: np.ndarray) -> tuple[int, ...] | None:
    idx = np.argwhere(mask)
    if idx.size == 0:
        return None
    return tuple(int(v) for v in idx[0])


class SystemModel(ABC):
    """
    A 2D hyperbolic system ``q_t + f(q)_x + g(q)_y = s``.

    Subclasses provide the physical flux, its Jacobian, the spectral-radius bound and
    the primitive/conservative maps. Every evaluation is a pure function of the state.
    """

    system_id: SystemId
    # Component permutation realizing the x <-> y relabeling
    axis_permutation: tuple[int, ...]

    @property
    def n_eq(self) -> int:
        return self.system_id.n_eq

    @property
    def component_names(self) -> tuple[str, ...]:
        return COMPONENT_NAMES[self.system_id.value]

    def check_admissible(self, q: np.ndarray) -> None:
        """
        Fail fast on inadmissible states.

        Raises:
            InadmissibleStateError: With the array index of the first offending state
        """
        q = np.asarray(q, dtype=float)
        finite = np.isfinite(q).all(axis=-1)
        if not finite.all():
            cell = _first_bad(~finite)
            raise InadmissibleStateError("non-finite value", cell, q[cell] if cell else q)
        self._check_physical(q)

    def _check_physical(self, q: np.ndarray) -> None:
        """Hook for system-specific admissibility; finite states pass by default."""

    @abstractmethod
    def _flux(self, q: np.ndarray, axis: int) -> np.ndarray: ...

    @abstractmethod
    def _jacobian(self, q: np.ndarray, axis: int) -> np.ndarray: ...

    @abstractmethod
    def _normal_speed(self, q: np.ndarray, axis: int) -> np.ndarray: ...

    def _wave_speed(self, q: np.ndarray) -> np.ndarray:
        return np.maximum(self._normal_speed(q, 0), self._normal_speed(q, 1))

    def physical_flux(self, q: np.ndarray, direction: Direction | str) -> np.ndarray:
        """
        Exact flux in the given direction.

        Args:
            q: Conservative states, shape ``(..., n_eq)``
            direction: ``x`` or ``y``

        Returns:
            Flux array with the same shape as ``q``

        Raises:
            InadmissibleStateError: On non-positive density, depth or internal energy
        """
        q = np.asarray(q, dtype=float)
        self.check_admissible(q)
        return self._flux(q, Direction(direction).axis)

    def flux_jacobian(self, q: np.ndarray, direction: Direction | str) -> np.ndarray:
        """Analytic Jacobian of the flux in conservative variables, shape ``(..., n, n)``."""
        q = np.asarray(q, dtype=float)
        self.check_admissible(q)
        return self._jacobian(q, Direction(direction).axis)

    def max_wave_speed(self, q: np.ndarray) -> np.ndarray:
        """Largest characteristic speed over both directions (the lambda_m of the schemes)."""
        q = np.asarray(q, dtype=float)
        self.check_admissible(q)
        return self._wave_speed(q)

    def swap_axes(self, q: np.ndarray) -> np.ndarray:
        """Relabel components for an x <-> y reflection (momenta swap, scalars stay)."""
        return np.asarray(q)[..., list(self.axis_permutation)]

    def primitive_to_conservative(self, prim: np.ndarray) -> np.ndarray:
        prim = np.asarray(prim, dtype=float)
        q = self._to_conservative(prim)
        self.check_admissible(q)
        return q

    def conservative_to_primitive(self, q: np.ndarray) -> np.ndarray:
        q = np.asarray(q, dtype=float)
        self.check_admissible(q)
        return self._to_primitive(q)

    def _to_conservative(self, prim: np.ndarray) -> np.ndarray:
        return prim.copy()

    def _to_primitive(self, q: np.ndarray) -> np.ndarray:
        return q.copy()


class Acoustics(SystemModel):
    """Linear acoustics with unit sound speed, q = (u, v, p)."""

    system_id = SystemId.ACOUSTICS
    axis_permutation = (1, 0, 2)

    def _flux(self, q: np.ndarray, axis: int) -> np.ndarray:
        flux = np.zeros_like(q)
        flux[..., axis] = q[..., 2]
        flux[..., 2] = q[..., axis]
        return flux

    def _jacobian(self, q: np.ndarray, axis: int) -> np.ndarray:
        jac = np.zeros(q.shape[:-1] + (3, 3))
        jac[..., axis, 2] = 1.0
        jac[..., 2, axis] = 1.0
        return jac

    def _normal_speed(self, q: np.ndarray, axis: int) -> np.ndarray:
        return np.ones(q.shape[:-1])


class Euler(SystemModel):
    """Compressible Euler equations for a perfect gas, q = (rho, rho u, rho v, rho E)."""

    system_id = SystemId.EULER
    axis_permutation = (0, 2, 1, 3)

    def __init__(self, gamma: float = GAMMA) -> None:
        if not gamma > 1.0:
            raise ConfigurationError(f"gamma must exceed 1, got {gamma}", key="gamma")
        self.gamma = float(gamma)

    def pressure(self, q: np.ndarray) -> np.ndarray:
        rho = q[..., 0]
        kinetic = 0.5 * (q[..., 1] ** 2 + q[..., 2] ** 2) / rho
        return (self.gamma - 1.0) * (q[..., 3] - kinetic)

    def sound_speed(self, q: np.ndarray) -> np.ndarray:
        return np.sqrt(self.gamma * self.pressure(q) / q[..., 0])

    def _check_physical(self, q: np.ndarray) -> None:
        rho = q[..., 0]
        bad = ~(rho > 0.0)
        if bad.any():
            cell = _first_bad(bad)
            raise InadmissibleStateError("non-positive density", cell, q[cell] if cell else q)
        internal = q[..., 3] - 0.5 * (q[..., 1] ** 2 + q[..., 2] ** 2) / rho
        bad = ~(internal > 0.0)
        if bad.any():
            cell = _first_bad(bad)
            raise InadmissibleStateError(
                "non-positive internal energy", cell, q[cell] if cell else q
            )

    def _flux(self, q: np.ndarray, axis: int) -> np.ndarray:
        k = 1 + axis
        un = q[..., k] / q[..., 0]
        p = self.pressure(q)
        flux = q * un[..., None]
        flux[..., k] += p
        flux[..., 3] += p * un
        return flux

    def _jacobian(self, q: np.ndarray, axis: int) -> np.ndarray:
        k, t = 1 + axis, 2 - axis
        gm1 = self.gamma - 1.0
        rho = q[..., 0]
        un = q[..., k] / rho
        ut = q[..., t] / rho
        kin = 0.5 * (un**2 + ut**2)
        enthalpy = (q[..., 3] + self.pressure(q)) / rho

        jac = np.zeros(q.shape[:-1] + (4, 4))
        jac[..., 0, k] = 1.0

        jac[..., k, 0] = gm1 * kin - un**2
        jac[..., k, k] = (3.0 - self.gamma) * un
        jac[..., k, t] = -gm1 * ut
        jac[..., k, 3] = gm1

        jac[..., t, 0] = -un * ut
        jac[..., t, k] = ut
        jac[..., t, t] = un

        jac[..., 3, 0] = un * (gm1 * kin - enthalpy)
        jac[..., 3, k] = enthalpy - gm1 * un**2
        jac[..., 3, t] = -gm1 * un * ut
        jac[..., 3, 3] = self.gamma * un
        return jac

    def _normal_speed(self, q: np.ndarray, axis: int) -> np.ndarray:
        return np.abs(q[..., 1 + axis]) / q[..., 0] + self.sound_speed(q)

    def _to_conservative(self, prim: np.ndarray) -> np.ndarray:
        rho, u, v, p = (prim[..., c] for c in range(4))
        energy = p / (self.gamma - 1.0) + 0.5 * rho * (u**2 + v**2)
        return np.stack([rho, rho * u, rho * v, energy], axis=-1)

    def _to_primitive(self, q: np.ndarray) -> np.ndarray:
        rho = q[..., 0]
        return np.stack([rho, q[..., 1] / rho, q[..., 2] / rho, self.pressure(q)], axis=-1)


class ShallowWater(SystemModel):
    """Shallow water equations over bathymetry, q = (h, hu, hv)."""

    system_id = SystemId.SHALLOW_WATER
    axis_permutation = (0, 2, 1)

    def __init__(self, gravity: float = GRAVITY) -> None:
        if not gravity > 0.0:
            raise ConfigurationError(f"gravity must be positive, got {gravity}", key="gravity")
        self.gravity = float(gravity)

    def _check_physical(self, q: np.ndarray) -> None:
        bad = ~(q[..., 0] > 0.0)
        if bad.any():
            cell = _first_bad(bad)
            raise InadmissibleStateError("non-positive water depth", cell, q[cell] if cell else q)

    def _flux(self, q: np.ndarray, axis: int) -> np.ndarray:
        k = 1 + axis
        h = q[..., 0]
        un = q[..., k] / h
        flux = q * un[..., None]
        flux[..., k] += 0.5 * self.gravity * h**2
        return flux

    def _jacobian(self, q: np.ndarray, axis: int) -> np.ndarray:
        k, t = 1 + axis, 2 - axis
        h = q[..., 0]
        un = q[..., k] / h
        ut = q[..., t] / h

        jac = np.zeros(q.shape[:-1] + (3, 3))
        jac[..., 0, k] = 1.0
        jac[..., k, 0] = self.gravity * h - un**2
        jac[..., k, k] = 2.0 * un
        jac[..., t, 0] = -un * ut
        jac[..., t, k] = ut
        jac[..., t, t] = un
        return jac

    def _normal_speed(self, q: np.ndarray, axis: int) -> np.ndarray:
        h = q[..., 0]
        return np.abs(q[..., 1 + axis]) / h + np.sqrt(self.gravity * h)

    def bathymetry_source(
        self, q: np.ndarray, db_dx: np.ndarray, db_dy: np.ndarray
    ) -> np.ndarray:
        """Pointwise source ``(0, -g h b_x, -g h b_y)``."""
        source = np.zeros_like(q)
        source[..., 1] = -self.gravity * q[..., 0] * db_dx
        source[..., 2] = -self.gravity * q[..., 0] * db_dy
        return source

    def _to_conservative(self, prim: np.ndarray) -> np.ndarray:
        h = prim[..., 0]
        return np.stack([h, h * prim[..., 1], h * prim[..., 2]], axis=-1)

    def _to_primitive(self, q: np.ndarray) -> np.ndarray:
        h = q[..., 0]
        return np.stack([h, q[..., 1] / h, q[..., 2] / h], axis=-1)


def make_system(
    system_id: SystemId | str,
    gravity: float = GRAVITY,
    gamma: float = GAMMA,
) -> SystemModel:
    """
    Build a system model by id.

    Args:
        system_id: acoustics, euler or shallow_water
        gravity: Gravity for shallow water
        gamma: Ratio of specific heats for Euler

    Returns:
        SystemModel instance

    Raises:
        ConfigurationError: Unknown id or invalid parameters
    """
    try:
        sid = SystemId(system_id)
    except ValueError as e:
        raise ConfigurationError(f"Unknown system '{system_id}'", key="system") from e

    if sid is SystemId.ACOUSTICS:
        return Acoustics()
    if sid is SystemId.EULER:
        return Euler(gamma=gamma)
    return ShallowWater(gravity=gravity)
