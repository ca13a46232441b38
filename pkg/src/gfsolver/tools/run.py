"""Single-run driver: case set-up, integration, diagnostics and output files."""

import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from gfsolver.analysis.diagnostics import (
    acoustic_energy,
    conservation_audit,
    conserved_totals,
    energy_history_admissible,
    error_norms,
    max_mach,
    reflection_asymmetry,
    scaled_momentum_error,
)
from gfsolver.core.config import get_settings
from gfsolver.core.exceptions import SolverAbortError
from gfsolver.core.logging import bind_context, clear_context, get_logger
from gfsolver.core.mesh import Grid, build_grid
from gfsolver.models.enums import SystemId
from gfsolver.models.schemas import RunConfig, RunSummary, TimeConfig
from gfsolver.physics.cases import (
    BaseCase,
    EulerVortex,
    EulerVortexPerturbed,
    SodCircular,
    SWESupercritical,
    default_system,
    exact_solution,
    init_case,
    parse_case,
)
from gfsolver.physics.systems import SystemModel
from gfsolver.schemes.timestepping import IntegrationResult
from gfsolver.services.solver import Solver
from gfsolver.utils.formatters import config_hash, field_hash, write_field_csv, write_json

logger = get_logger(__name__)


def resolve_case(cfg: RunConfig) -> BaseCase:
    """Case of a run config, with ``--mach`` folded into the case parameters."""
    params = dict(cfg.case_params)
    if cfg.mach is not None:
        params.setdefault("mach", cfg.mach)
    return parse_case(cfg.case, params)


def time_config(
    cfg: RunConfig,
    spec: BaseCase,
    *,
    t_final: float | None = None,
    steady_tol: float | None = None,
) -> TimeConfig:
    """Time controls of a run; explicit arguments beat the config, which beats the case."""
    if t_final is None:
        t_final = cfg.t_final if cfg.t_final is not None else spec.t_final
    if steady_tol is None:
        steady_tol = cfg.steady_tol if cfg.steady_tol is not None else spec.steady_tol
    return TimeConfig(
        integrator=cfg.integrator,
        cfl=cfg.cfl,
        t_final=t_final,
        max_steps=cfg.max_steps,
        steady_tol=steady_tol,
    )


def mesh_size(cfg: RunConfig, spec: BaseCase) -> tuple[int, int]:
    """Cells per direction of a single run."""
    default = get_settings().default_cells
    if isinstance(spec, EulerVortexPerturbed):
        default = spec.base_cells
    nx = cfg.nx or cfg.ny or default
    return nx, cfg.ny or nx


class Recorder:
    """Step callback collecting conserved totals, acoustic energies and field snapshots."""

    def __init__(
        self,
        grid: Grid,
        system: SystemModel,
        q0: np.ndarray,
        *,
        every: int = 0,
        snapshot_stem: Path | None = None,
    ) -> None:
        self.grid = grid
        self.system = system
        self.every = every
        self.snapshot_stem = snapshot_stem
        self.totals: list[np.ndarray] = [conserved_totals(q0, grid)]
        self.energies: list[tuple[float, float]] = []
        if system.system_id is SystemId.ACOUSTICS:
            self.energies.append((0.0, acoustic_energy(q0, grid, system)))
        self.snapshots: list[Path] = []

    def __call__(self, step: int, t: float, q: np.ndarray, dt: float) -> None:
        self.totals.append(conserved_totals(q, self.grid))
        if self.energies:
            self.energies.append((t, acoustic_energy(q, self.grid, self.system)))
        if self.every and self.snapshot_stem is not None and step % self.every == 0:
            path = self.snapshot_stem.with_name(f"{self.snapshot_stem.name}_step{step:07d}.csv")
            write_field_csv(path, self.grid, q, self.system.component_names)
            self.snapshots.append(path)

    def drift(self) -> dict[str, float]:
        drift = conservation_audit(self.totals)
        return {name: float(d) for name, d in zip(self.system.component_names, drift, strict=True)}


@dataclass
class Simulation:
    """Everything a finished integration leaves behind, before any file is written."""

    spec: BaseCase
    system: SystemModel
    grid: Grid
    solver: Solver
    q0: np.ndarray
    result: IntegrationResult
    recorder: Recorder
    wall_time: float
    base_field_hash: str | None = None
    equilibrium: np.ndarray | None = None


@dataclass
class RunResult:
    """Files and summary of a single run."""

    summary: RunSummary
    q: np.ndarray
    grid: Grid
    output_dir: Path
    files: list[Path] = field(default_factory=list)


def simulate(
    cfg: RunConfig,
    spec: BaseCase,
    nx: int,
    ny: int,
    *,
    snapshot_stem: Path | None = None,
) -> Simulation:
    """
    Set up a case on an ``nx x ny`` mesh and integrate it.

    The perturbed vortex first runs the unperturbed stationary vortex for ``base_time``
    and adds the density bump to the result. A supercritical case with ``perturb`` set
    first runs to numerical steady state, adds the drop to the depth and then runs for
    ``perturb_time``.

    Raises:
        ConfigurationError: Invalid mesh or case
        SolverAbortError: The field became inadmissible
    """
    settings = get_settings()
    system = default_system(spec)
    grid = build_grid(nx, ny, spec.bounds, ghost=cfg.scheme.ghost_width)
    setup = init_case(spec, grid, system)
    solver = Solver(
        grid,
        system,
        setup.bc,
        cfg.scheme,
        bathymetry=setup.bathymetry,
        theta=cfg.theta,
        quadrature=cfg.source_quadrature,
        alpha_floor=settings.alpha_floor,
    )
    x, y = grid.cell_centers()
    q0 = np.array(grid.interior(setup.q))
    tc = time_config(cfg, spec)
    start = time.perf_counter()

    base_hash = None
    equilibrium = None
    if isinstance(spec, EulerVortexPerturbed):
        base = EulerVortex.initial(spec, x, y, system)
        if spec.base_time > 0.0:
            logger.info("base_run_started", base_time=spec.base_time)
            base_cfg = time_config(cfg, spec, t_final=spec.base_time, steady_tol=0.0)
            base = solver.run(base, base_cfg).q
        base_hash = field_hash(base)
        equilibrium = base
        q0 = spec.perturb(base, x, y, system)
    elif isinstance(spec, SWESupercritical) and spec.perturb:
        logger.info("base_run_started", base_time=tc.t_final, steady_tol=tc.steady_tol)
        equilibrium = solver.run(q0, tc).q
        base_hash = field_hash(equilibrium)
        q0 = equilibrium.copy()
        q0[..., 0] += spec.drop(x, y)
        tc = time_config(cfg, spec, t_final=spec.perturb_time, steady_tol=0.0)

    recorder = Recorder(grid, system, q0, every=cfg.output_every, snapshot_stem=snapshot_stem)
    result = solver.run(q0, tc, on_step=recorder)
    return Simulation(
        spec=spec,
        system=system,
        grid=grid,
        solver=solver,
        q0=q0,
        result=result,
        recorder=recorder,
        wall_time=time.perf_counter() - start,
        base_field_hash=base_hash,
        equilibrium=equilibrium,
    )


def summarize(sim: Simulation, cfg: RunConfig, cfg_hash: str) -> RunSummary:
    """Diagnostics of a finished simulation."""
    spec, system, grid, result = sim.spec, sim.system, sim.grid, sim.result
    q = result.q
    summary = RunSummary(
        case=spec.case,
        scheme=cfg.scheme,
        nx=grid.nx,
        ny=grid.ny,
        config_hash=cfg_hash,
        final_time=result.time,
        steps=result.steps,
        stop_reason=result.stop_reason,
        steady_residual=result.residual,
        residual_drop=result.residual_drop,
        conservation_drift=sim.recorder.drift(),
        wall_time=sim.wall_time,
        threads=cfg.threads,
        base_field_hash=sim.base_field_hash,
    )

    reference = exact_solution(spec, grid, result.time, system)
    if reference is not None:
        summary.errors = error_norms(q, reference, grid, system.component_names)

    if system.system_id is SystemId.ACOUSTICS:
        summary.energy_history = sim.recorder.energies
        times, energies = zip(*sim.recorder.energies, strict=True)
        speed = float(np.max(system.max_wave_speed(sim.q0)))
        summary.energy_admissible = energy_history_admissible(times, energies, speed)

    if system.system_id is SystemId.EULER:
        summary.min_density = float(np.min(q[..., 0]))
        if isinstance(spec, EulerVortex) and spec.mach is not None:
            summary.achieved_mach = max_mach(sim.q0, system)
            if reference is not None:
                summary.scaled_momentum_error = scaled_momentum_error(q, reference)
        if isinstance(spec, SodCircular) and grid.nx == grid.ny:
            summary.reflection_asymmetry = reflection_asymmetry(q, system)

    if sim.equilibrium is not None:
        summary.perturbation_deviation = float(np.max(np.abs(q[..., 0] - sim.equilibrium[..., 0])))
    return summary


def write_config_echo(output_dir: Path, cfg: RunConfig, cfg_hash: str) -> Path:
    """Normalized effective configuration next to the run's outputs."""
    data = cfg.model_dump(mode="json")
    data["config_hash"] = cfg_hash
    return write_json(output_dir / f"config_{cfg_hash}.json", data)


def run_single(cfg: RunConfig) -> RunResult:
    """
    Run one case on one mesh and write its outputs.

    Files in ``cfg.output_dir``, all tagged with the config hash:

    - ``config_<hash>.json``: normalized effective configuration
    - ``<case>_<scheme>_<nx>x<ny>_<hash>_field.csv``: final interior field
    - ``<case>_<scheme>_<nx>x<ny>_<hash>_summary.json``: RunSummary
    - ``..._step<k>.csv``: snapshots when ``output_every`` is set

    Args:
        cfg: Validated single-run configuration

    Returns:
        RunResult with the summary, the final field and the written files

    Raises:
        ConfigurationError: Invalid case parameters or mesh
        SolverAbortError: The field became inadmissible
    """
    spec = resolve_case(cfg)
    nx, ny = mesh_size(cfg, spec)
    cfg_hash = config_hash(cfg.reproducibility_key())
    output_dir = Path(cfg.output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)
    stem = f"{spec.case}_{cfg.scheme.value}_{nx}x{ny}_{cfg_hash}"

    bind_context(case=spec.case, scheme=cfg.scheme.value, config_hash=cfg_hash)
    try:
        logger.info("run_started", nx=nx, ny=ny, integrator=cfg.integrator.value, cfl=cfg.cfl)
        files = [write_config_echo(output_dir, cfg, cfg_hash)]
        try:
            sim = simulate(cfg, spec, nx, ny, snapshot_stem=output_dir / stem)
        except SolverAbortError as e:
            logger.error("run_aborted", step=e.step, time=e.time, cell=e.cell, reason=e.message)
            raise

        summary = summarize(sim, cfg, cfg_hash)
        field_path = write_field_csv(
            output_dir / f"{stem}_field.csv", sim.grid, sim.result.q, sim.system.component_names
        )
        summary.field_file = str(field_path)
        summary.snapshots = [str(p) for p in sim.recorder.snapshots]
        files.append(field_path)
        files.extend(sim.recorder.snapshots)
        summary_path = output_dir / f"{stem}_summary.json"
        files.append(write_json(summary_path, summary.model_dump(mode="json")))

        logger.info(
            "run_completed",
            steps=summary.steps,
            final_time=summary.final_time,
            stop_reason=summary.stop_reason.value,
            wall_time=round(summary.wall_time, 3),
        )
        return RunResult(
            summary=summary, q=sim.result.q, grid=sim.grid, output_dir=output_dir, files=files
        )
    finally:
        clear_context()
