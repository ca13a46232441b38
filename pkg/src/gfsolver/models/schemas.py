"""Pydantic models for run configuration and run reports."""

from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from typing_extensions import Self

from gfsolver.core.constants import DEFAULT_CFL, DEFAULT_THETA
from gfsolver.models.enums import Integrator, Scheme, SourceQuadrature, StopReason


class TimeConfig(BaseModel):
    """Explicit time integration controls."""

    model_config = ConfigDict(frozen=True)

    integrator: Integrator = Field(default=Integrator.RK2, description="euler or rk2 (Heun)")
    cfl: float = Field(default=DEFAULT_CFL, gt=0.0, le=1.0, description="Courant number")
    t_final: float = Field(..., ge=0.0, description="Final time")
    max_steps: int = Field(default=1_000_000, gt=0, description="Step cap")
    steady_tol: float = Field(
        default=0.0, ge=0.0, description="Stop once the steady residual drops to this (0 = off)"
    )
    fixed_dt: float | None = Field(default=None, gt=0.0, description="Override the CFL step")


class ReconstructionConfig(BaseModel):
    """Finite-volume reconstruction order and limiter parameter."""

    model_config = ConfigDict(frozen=True)

    order: Literal[1, 2] = Field(
        default=1, description="1 = piecewise constant, 2 = limited linear"
    )
    theta: float = Field(default=DEFAULT_THETA, ge=1.0, le=2.0, description="Minmod theta")


class RunConfig(BaseModel):
    """Effective configuration of a single run or a convergence study."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    case: str = Field(..., description="Case id")
    case_params: dict[str, Any] = Field(default_factory=dict, description="Case parameters")
    scheme: Scheme = Field(default=Scheme.GF, description="Spatial scheme")

    nx: int | None = Field(default=None, ge=2, description="Cells in x (single run)")
    ny: int | None = Field(default=None, ge=2, description="Cells in y (single run)")
    convergence: list[int] | None = Field(
        default=None, description="Nested mesh sizes (convergence mode)"
    )

    t_final: float | None = Field(default=None, ge=0.0, description="Final time (case default)")
    cfl: float = Field(default=DEFAULT_CFL, gt=0.0, le=1.0)
    integrator: Integrator = Field(default=Integrator.RK2)
    max_steps: int = Field(default=1_000_000, gt=0)
    steady_tol: float | None = Field(default=None, ge=0.0, description="Case default if unset")
    theta: float = Field(default=DEFAULT_THETA, ge=1.0, le=2.0)
    mach: float | None = Field(default=None, gt=0.0, description="Target vortex Mach number")
    source_quadrature: SourceQuadrature = Field(default=SourceQuadrature.DIRECTIONAL)

    output_dir: str = Field(default="runs", description="Output directory")
    output_every: int = Field(
        default=0, ge=0, description="Snapshot every k steps (0 = final only)"
    )
    threads: int = Field(default=1, ge=1, description="Recorded only; no effect on evaluation")
    large: bool = Field(default=False, description="Allow meshes beyond desk scale")
    config_file: str | None = Field(default=None, description="Config file the run came from")
    debug: bool = Field(default=False, description="Console logging at debug level")

    @field_validator("convergence")
    @classmethod
    def _nested_meshes(cls, value: list[int] | None) -> list[int] | None:
        if value is None:
            return None
        if len(value) < 2:
            raise ValueError("convergence needs at least two mesh sizes")
        for coarse, fine in zip(value, value[1:], strict=False):
            if coarse < 2 or fine != 2 * coarse:
                raise ValueError(f"meshes must double: got {coarse} then {fine}")
        return value

    @model_validator(mode="after")
    def _one_mode(self) -> Self:
        if self.convergence is not None and (self.nx is not None or self.ny is not None):
            raise ValueError("give either a mesh size or a convergence list, not both")
        return self

    @property
    def is_convergence(self) -> bool:
        return self.convergence is not None

    @property
    def largest_cells(self) -> int:
        """Largest cell count per direction the run will touch."""
        sizes = [n for n in (self.nx, self.ny) if n is not None]
        sizes.extend(self.convergence or [])
        return max(sizes, default=0)

    def reproducibility_key(self) -> dict[str, Any]:
        """Fields that determine the numbers a run produces."""
        excluded = {"output_dir", "config_file", "threads", "debug"}
        return self.model_dump(mode="json", exclude=excluded)


class ErrorNorms(BaseModel):
    """Discrete L2 and L-infinity errors of one component."""

    component: str
    l2: float
    linf: float


class MeshLevel(BaseModel):
    """Results of one mesh in a convergence study."""

    n: int = Field(..., description="Cells per direction")
    errors: list[ErrorNorms]
    l2_orders: dict[str, float | None] = Field(
        default_factory=dict, description="Observed L2 order against the previous level"
    )
    linf_orders: dict[str, float | None] = Field(default_factory=dict)
    conservation_drift: dict[str, float] = Field(default_factory=dict)
    steps: int = 0
    wall_time: float = 0.0

    def error(self, component: str) -> ErrorNorms:
        for item in self.errors:
            if item.component == component:
                return item
        raise KeyError(component)


class ConvergenceReport(BaseModel):
    """Per-mesh errors and pairwise observed orders of a nested-mesh study."""

    case: str
    scheme: Scheme
    config_hash: str
    t_final: float
    components: list[str]
    levels: list[MeshLevel]

    def rows(self) -> list[dict[str, Any]]:
        """Component-major table rows: every mesh of the first component, then the next."""
        table = []
        for component in self.components:
            for level in self.levels:
                err = level.error(component)
                table.append(
                    {
                        "component": component,
                        "N": level.n,
                        "L2": err.l2,
                        "L2_order": level.l2_orders.get(component),
                        "Linf": err.linf,
                        "Linf_order": level.linf_orders.get(component),
                    }
                )
        return table


class RunSummary(BaseModel):
    """Machine-readable record of a single run."""

    case: str
    scheme: Scheme
    nx: int
    ny: int
    config_hash: str
    final_time: float
    steps: int
    stop_reason: StopReason
    steady_residual: float = Field(
        ..., description="dt * max|rate| / max|q0| at the last step; absolute, near eps at rest"
    )
    residual_drop: float = Field(
        ..., description="Last rate L-infinity norm over the first-step rate L-infinity norm"
    )
    conservation_drift: dict[str, float]
    wall_time: float
    threads: int = 1

    errors: list[ErrorNorms] | None = None
    energy_history: list[tuple[float, float]] | None = None
    energy_admissible: bool | None = None
    achieved_mach: float | None = None
    scaled_momentum_error: float | None = None
    reflection_asymmetry: float | None = None
    min_density: float | None = None
    base_field_hash: str | None = Field(
        default=None, description="Hash of the pre-perturbation field"
    )
    perturbation_deviation: float | None = Field(
        default=None, description="max |component - equilibrium| at the end of a perturbation run"
    )
    field_file: str | None = None
    snapshots: list[str] = Field(default_factory=list)
