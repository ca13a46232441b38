"""Test cases: initial data, bathymetries, boundary conditions and exact solutions.

Every case is a frozen pydantic model whose fields are the parameters its formulas need,
defaulting to the published set-up. ``CaseSpec`` is the discriminated union over the ``case``
field, so a case can be rebuilt from its id plus a flat parameter mapping.
"""

from typing import Annotated, Any, ClassVar, Literal, NamedTuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, ValidationError
from scipy.special import erfc

from gfsolver.core.config import get_settings
from gfsolver.core.constants import (
    ACOUSTIC_VORTEX_DIP,
    EULER_VORTEX_BASE_MACH,
    GAMMA,
    STEADY_TOL_MACHINE,
    acoustic_vortex_amplitude,
)
from gfsolver.core.exceptions import ConfigurationError
from gfsolver.core.logging import get_logger
from gfsolver.core.mesh import Grid
from gfsolver.models.enums import BoundaryKind, SystemId
from gfsolver.physics.systems import SystemModel, make_system
from gfsolver.schemes.boundary import (
    BoundarySpec,
    SideCondition,
    fill_bathymetry_ghosts,
    fill_state_ghosts,
)

logger = get_logger(__name__)

Bounds = tuple[float, float, float, float]


def _gamma(system: SystemModel) -> float:
    return float(getattr(system, "gamma", GAMMA))


class CaseSetup(NamedTuple):
    """Padded initial field, padded bathymetry (or None) and boundary specification."""

    q: np.ndarray
    bathymetry: np.ndarray | None
    bc: BoundarySpec


class BaseCase(BaseModel):
    """Common case interface; subclasses supply the formulas."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    system: ClassVar[SystemId]
    has_exact: ClassVar[bool] = False

    case: str
    bounds: Bounds
    t_final: float = Field(..., ge=0.0, description="Default final time")
    steady_tol: float = Field(default=0.0, ge=0.0, description="Default steady tolerance")

    def initial(self, x: np.ndarray, y: np.ndarray, system: SystemModel) -> np.ndarray:
        """Conservative initial state at the given points."""
        raise NotImplementedError

    def bathymetry(self, x: np.ndarray, y: np.ndarray, gravity: float) -> np.ndarray | None:
        return None

    def boundary(self, system: SystemModel) -> BoundarySpec:
        return BoundarySpec.periodic()

    def exact(
        self, x: np.ndarray, y: np.ndarray, t: float, system: SystemModel
    ) -> np.ndarray | None:
        """Reference state at time t; stationary cases return their initial data."""
        return self.initial(x, y, system) if self.has_exact else None


class AcousticVortex(BaseCase):
    """Compactly supported stationary vortex of linear acoustics."""

    case: Literal["acoustic_vortex"] = "acoustic_vortex"
    system: ClassVar[SystemId] = SystemId.ACOUSTICS
    has_exact: ClassVar[bool] = True

    bounds: Bounds = (0.0, 1.0, 0.0, 1.0)
    t_final: float = 1.0
    x0: float = 0.5
    y0: float = 0.5
    r0: float = Field(default=0.45, gt=0.0)
    dip: float = Field(
        default=ACOUSTIC_VORTEX_DIP,
        gt=0.0,
        description="Depth drop of the equivalent shallow-water vortex; sets the amplitude",
    )

    def initial(self, x: np.ndarray, y: np.ndarray, system: SystemModel) -> np.ndarray:
        rho = np.hypot(x - self.x0, y - self.y0) / self.r0
        profile = acoustic_vortex_amplitude(self.r0, self.dip) * (1.0 + np.cos(np.pi * rho)) ** 2
        profile = np.where(rho < 1.0, profile, 0.0)
        u = (y - self.y0) * profile
        v = -(x - self.x0) * profile
        return np.stack([u, v, np.ones_like(x)], axis=-1)


class EulerVortex(BaseCase):
    """Isentropic vortex on a uniform background flow (stationary for u0 = v0 = 0)."""

    case: Literal["euler_vortex"] = "euler_vortex"
    system: ClassVar[SystemId] = SystemId.EULER
    has_exact: ClassVar[bool] = True

    bounds: Bounds = (0.0, 10.0, 0.0, 10.0)
    t_final: float = 1.0
    u0: float = 0.0
    v0: float = 0.0
    epsilon: float = Field(default=5.0, ge=0.0, description="Vortex strength")
    mach: float | None = Field(
        default=None, gt=0.0, description="Target largest Mach number; rescales epsilon"
    )
    xc: float = 5.0
    yc: float = 5.0

    @property
    def effective_epsilon(self) -> float:
        if self.mach is None:
            return self.epsilon
        return self.epsilon * self.mach / EULER_VORTEX_BASE_MACH

    def primitive(self, x: np.ndarray, y: np.ndarray, gamma: float) -> np.ndarray:
        eps = self.effective_epsilon
        dx, dy = x - self.xc, y - self.yc
        r2 = dx**2 + dy**2
        swirl = eps / (2.0 * np.pi) * np.exp(0.5 * (1.0 - r2))
        d_temp = -(gamma - 1.0) * eps**2 / (8.0 * gamma * np.pi**2) * np.exp(1.0 - r2)
        temp = 1.0 + d_temp
        rho = temp ** (1.0 / (gamma - 1.0))
        p = temp ** (gamma / (gamma - 1.0))
        return np.stack([rho, self.u0 - swirl * dy, self.v0 + swirl * dx, p], axis=-1)

    def initial(self, x: np.ndarray, y: np.ndarray, system: SystemModel) -> np.ndarray:
        return system.primitive_to_conservative(self.primitive(x, y, _gamma(system)))

    def exact(
        self, x: np.ndarray, y: np.ndarray, t: float, system: SystemModel
    ) -> np.ndarray | None:
        x0, x1, y0, y1 = self.bounds
        xs = x0 + np.mod(x - self.u0 * t - x0, x1 - x0)
        ys = y0 + np.mod(y - self.v0 * t - y0, y1 - y0)
        return self.initial(xs, ys, system)


class EulerVortexPerturbed(EulerVortex):
    """Stationary vortex with a Gaussian density bump added on top of it."""

    case: Literal["euler_vortex_perturbed"] = "euler_vortex_perturbed"  # type: ignore[assignment]
    has_exact: ClassVar[bool] = False

    t_final: float = 2.0
    amplitude: float = Field(default=5e-3, description="Density bump height")
    sigma: float = Field(default=0.8, gt=0.0)
    px: float = 4.0
    py: float = 4.0
    base_time: float = Field(default=50.0, ge=0.0, description="Length of the equilibrium run")
    base_cells: int = Field(default=80, ge=2, description="Mesh of the published set-up")

    def density_bump(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        r2 = (x - self.px) ** 2 + (y - self.py) ** 2
        return self.amplitude * np.exp(-r2 / self.sigma**2)

    def perturb(
        self, q: np.ndarray, x: np.ndarray, y: np.ndarray, system: SystemModel
    ) -> np.ndarray:
        """Add the bump to the density of ``q``, keeping velocity and pressure."""
        prim = system.conservative_to_primitive(q)
        prim[..., 0] += self.density_bump(x, y)
        return system.primitive_to_conservative(prim)

    def initial(self, x: np.ndarray, y: np.ndarray, system: SystemModel) -> np.ndarray:
        return self.perturb(super().initial(x, y, system), x, y, system)

    def exact(
        self, x: np.ndarray, y: np.ndarray, t: float, system: SystemModel
    ) -> np.ndarray | None:
        return None


class SodCircular(BaseCase):
    """Circular shock tube with an erfc-smoothed interface."""

    case: Literal["sod_circular"] = "sod_circular"
    system: ClassVar[SystemId] = SystemId.EULER

    bounds: Bounds = (-1.0, 1.0, -1.0, 1.0)
    t_final: float = 0.2
    radius: float = Field(default=0.5, gt=0.0)
    delta_smooth: float = Field(default=0.01, gt=0.0)
    inner: tuple[float, float, float, float] = (1.0, 0.0, 0.0, 1.0)
    outer: tuple[float, float, float, float] = (0.125, 0.0, 0.0, 0.1)

    def blend(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Weight of the inner state, 1/2 on the circle."""
        return 0.5 * erfc((np.hypot(x, y) - self.radius) / self.delta_smooth)

    def initial(self, x: np.ndarray, y: np.ndarray, system: SystemModel) -> np.ndarray:
        zeta = self.blend(x, y)[..., None]
        inner = np.asarray(self.inner, dtype=float)
        outer = np.asarray(self.outer, dtype=float)
        return system.primitive_to_conservative(outer + zeta * (inner - outer))

    def boundary(self, system: SystemModel) -> BoundarySpec:
        return BoundarySpec.uniform(BoundaryKind.TRANSMISSIVE)


class KelvinHelmholtz(BaseCase):
    """Smooth low-Mach shear layer pair."""

    case: Literal["kelvin_helmholtz"] = "kelvin_helmholtz"
    system: ClassVar[SystemId] = SystemId.EULER

    bounds: Bounds = (0.0, 2.0, -0.5, 0.5)
    t_final: float = 80.0
    mach: float = Field(default=1e-2, gt=0.0)
    density_jump: float = Field(default=1e-3, ge=0.0)
    delta: float = Field(default=0.1, description="Transverse velocity perturbation")
    omega: float = Field(default=1.0 / 16.0, gt=0.0, lt=0.5, description="Band width")

    def shear_profile(self, y: np.ndarray) -> np.ndarray:
        """-1 between the layers, +1 outside, sine transitions of width omega."""
        w = self.omega
        lower = (y >= -0.25 - 0.5 * w) & (y < -0.25 + 0.5 * w)
        middle = (y >= -0.25 + 0.5 * w) & (y < 0.25 - 0.5 * w)
        upper = (y >= 0.25 - 0.5 * w) & (y < 0.25 + 0.5 * w)
        profile = np.ones_like(y, dtype=float)
        profile = np.where(lower, -np.sin(np.pi / w * (y + 0.25)), profile)
        profile = np.where(middle, -1.0, profile)
        profile = np.where(upper, np.sin(np.pi / w * (y - 0.25)), profile)
        return profile

    def initial(self, x: np.ndarray, y: np.ndarray, system: SystemModel) -> np.ndarray:
        shear = self.shear_profile(y)
        rho = _gamma(system) + shear * self.density_jump
        u = self.mach * shear
        v = self.delta * self.mach * np.sin(2.0 * np.pi * x)
        prim = np.stack([rho, u, v, np.ones_like(x)], axis=-1)
        return system.primitive_to_conservative(prim)


class SWEPotentialFlow(BaseCase):
    """Shallow-water potential flow held steady by a matching bathymetry."""

    case: Literal["swe_potential_flow"] = "swe_potential_flow"
    system: ClassVar[SystemId] = SystemId.SHALLOW_WATER
    has_exact: ClassVar[bool] = True

    bounds: Bounds = (-1.0, 1.0, -1.0, 1.0)
    t_final: float = 1.0
    level: float = Field(default=1.5, description="Depth at the stagnation point (C)")
    x0: float = 0.0
    y0: float = 0.0

    def initial(self, x: np.ndarray, y: np.ndarray, system: SystemModel) -> np.ndarray:
        dx, dy = x - self.x0, y - self.y0
        h = dx * dy + self.level
        return system.primitive_to_conservative(np.stack([h, dx, -dy], axis=-1))

    def bathymetry(self, x: np.ndarray, y: np.ndarray, gravity: float) -> np.ndarray | None:
        return (30.0 - 0.5 * (x**2 + y**2)) / gravity - x * y - self.level

    def boundary(self, system: SystemModel) -> BoundarySpec:
        side = SideCondition(
            kind=BoundaryKind.DIRICHLET, state=lambda x, y: self.initial(x, y, system)
        )
        return BoundarySpec(west=side, east=side, south=side, north=side)


class SWELakeAtRest(BaseCase):
    """Flat free surface over a periodic sinusoidal bottom."""

    case: Literal["swe_lake_at_rest"] = "swe_lake_at_rest"
    system: ClassVar[SystemId] = SystemId.SHALLOW_WATER
    has_exact: ClassVar[bool] = True

    bounds: Bounds = (0.0, 1.0, 0.0, 1.0)
    t_final: float = 0.1
    surface: float = Field(default=1.0, description="Free-surface elevation h + b")
    amplitude: float = Field(default=0.1, ge=0.0)

    def bathymetry(self, x: np.ndarray, y: np.ndarray, gravity: float) -> np.ndarray | None:
        return self.amplitude * np.sin(2.0 * np.pi * x) * np.cos(2.0 * np.pi * y)

    def initial(self, x: np.ndarray, y: np.ndarray, system: SystemModel) -> np.ndarray:
        h = self.surface - self.bathymetry(x, y, 0.0)
        zero = np.zeros_like(h)
        return system.primitive_to_conservative(np.stack([h, zero, zero], axis=-1))


class SWESupercritical(BaseCase):
    """
    Constant-momentum supercritical flow over a round bump.

    ``qy = 0`` gives the straight variant (west inlet, east outlet, periodic south/north);
    any other ``qy`` the crooked one (west and south inlets, east and north outlets).
    """

    case: Literal["swe_supercritical"] = "swe_supercritical"
    system: ClassVar[SystemId] = SystemId.SHALLOW_WATER

    bounds: Bounds = (0.0, 25.0, 0.0, 8.0)
    t_final: float = 20.0
    steady_tol: float = STEADY_TOL_MACHINE
    qx: float = 24.0
    qy: float = 0.0
    surface: float = 2.0
    bump_height: float = Field(default=0.2, ge=0.0)
    bump_radius: float = Field(default=2.0, gt=0.0)
    bump_x: float = 10.0
    bump_y: float = 4.0

    perturb: bool = Field(default=False, description="Run the drop-perturbation protocol")
    drop_amplitude: float = 1e-4
    drop_x: float = 16.0
    drop_y: float = 3.0
    drop_width: float = Field(default=0.8, gt=0.0)
    perturb_time: float = Field(default=0.4, ge=0.0)

    @property
    def crooked(self) -> bool:
        return self.qy != 0.0

    def bathymetry(self, x: np.ndarray, y: np.ndarray, gravity: float) -> np.ndarray | None:
        r = np.hypot(x - self.bump_x, y - self.bump_y)
        bump = self.bump_height * (1.0 - (r / self.bump_radius) ** 2)
        return np.where(r < self.bump_radius, bump, 0.0)

    def initial(self, x: np.ndarray, y: np.ndarray, system: SystemModel) -> np.ndarray:
        h = self.surface - self.bathymetry(x, y, 0.0)
        return np.stack([h, np.full_like(h, self.qx), np.full_like(h, self.qy)], axis=-1)

    def drop(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        r2 = (x - self.drop_x) ** 2 + (y - self.drop_y) ** 2
        return self.drop_amplitude * np.exp(-r2 / self.drop_width**2)

    def boundary(self, system: SystemModel) -> BoundarySpec:
        inlet = SideCondition(
            kind=BoundaryKind.DIRICHLET, state=lambda x, y: self.initial(x, y, system)
        )
        outlet = SideCondition(kind=BoundaryKind.TRANSMISSIVE)
        if self.crooked:
            return BoundarySpec(west=inlet, east=outlet, south=inlet, north=outlet)
        periodic = SideCondition(kind=BoundaryKind.PERIODIC)
        return BoundarySpec(west=inlet, east=outlet, south=periodic, north=periodic)


CaseSpec = Annotated[
    AcousticVortex
    | EulerVortex
    | EulerVortexPerturbed
    | SodCircular
    | KelvinHelmholtz
    | SWEPotentialFlow
    | SWELakeAtRest
    | SWESupercritical,
    Field(discriminator="case"),
]

_case_adapter: TypeAdapter[CaseSpec] = TypeAdapter(CaseSpec)

CASE_IDS: tuple[str, ...] = (
    "acoustic_vortex",
    "euler_vortex",
    "euler_vortex_perturbed",
    "sod_circular",
    "kelvin_helmholtz",
    "swe_potential_flow",
    "swe_lake_at_rest",
    "swe_supercritical",
)


def parse_case(case_id: str, params: dict[str, Any] | None = None) -> BaseCase:
    """
    Build a case from its id and parameter overrides.

    Raises:
        ConfigurationError: Unknown id, unknown parameter or invalid value
    """
    if case_id not in CASE_IDS:
        raise ConfigurationError(
            f"Unknown case '{case_id}'. Choose from: {', '.join(CASE_IDS)}", key="case"
        )
    try:
        return _case_adapter.validate_python({**(params or {}), "case": case_id})
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(part) for part in first["loc"][1:]) or case_id
        raise ConfigurationError(
            f"Invalid parameter for case '{case_id}': {where}: {first['msg']}", key=where
        ) from e


def default_system(spec: BaseCase) -> SystemModel:
    """System of a case with gravity and gamma from the settings."""
    settings = get_settings()
    return make_system(spec.system, gravity=settings.gravity, gamma=settings.gamma)


def _check_domain(spec: BaseCase, grid: Grid, system: SystemModel) -> None:
    if not np.allclose(grid.bounds, spec.bounds, rtol=0.0, atol=1e-12):
        raise ConfigurationError(
            f"Grid bounds {grid.bounds} do not match the domain {spec.bounds} "
            f"of case '{spec.case}'",
            key="bounds",
        )
    if system.system_id is not spec.system:
        raise ConfigurationError(
            f"Case needs the {spec.system.value} system, got {system.system_id.value}",
            key="system",
        )


def init_case(spec: BaseCase, grid: Grid, system: SystemModel | None = None) -> CaseSetup:
    """
    Sample a case on a grid.

    Initial data is evaluated at interior cell centers and the ghosts filled by the case's
    boundary rules. Bathymetry is evaluated on the whole padded grid and wrapped on
    periodic sides, so ghost values match their periodic images exactly.

    Args:
        spec: Case definition
        grid: Grid covering the case domain
        system: System model (defaults from the settings)

    Returns:
        CaseSetup with the padded field, padded bathymetry and boundary specification

    Raises:
        ConfigurationError: Grid does not cover the case domain or the system does not fit
        InadmissibleStateError: Sampled data is not admissible
    """
    system = system or default_system(spec)
    _check_domain(spec, grid, system)

    bc = spec.boundary(system)
    bc.warn_if_overconstrained()

    x, y = grid.cell_centers()
    q = grid.pad(spec.initial(x, y, system))
    fill_state_ghosts(grid, q, bc)

    bathymetry = None
    xg, yg = grid.cell_centers(with_ghosts=True)
    gravity = getattr(system, "gravity", get_settings().gravity)
    b = spec.bathymetry(xg, yg, gravity)
    if b is not None:
        bathymetry = fill_bathymetry_ghosts(grid, np.array(b, dtype=float), bc)

    logger.debug(
        "case_initialized",
        case=spec.case,
        nx=grid.nx,
        ny=grid.ny,
        boundary=bc.describe(),
    )
    return CaseSetup(q=q, bathymetry=bathymetry, bc=bc)


def exact_solution(
    spec: BaseCase, grid: Grid, t: float, system: SystemModel | None = None
) -> np.ndarray | None:
    """
    Reference interior field at time t, or None for cases without a closed form.

    Stationary cases return their initial data; the moving vortex is translated by
    ``(u0 t, v0 t)`` with periodic wrap.
    """
    if not spec.has_exact:
        return None
    system = system or default_system(spec)
    _check_domain(spec, grid, system)
    x, y = grid.cell_centers()
    return spec.exact(x, y, t, system)

