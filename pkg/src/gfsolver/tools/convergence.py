"""Nested-mesh convergence studies."""

from dataclasses import dataclass, field
from pathlib import Path

from gfsolver.analysis.diagnostics import error_norms, observed_order
from gfsolver.core.exceptions import ConfigurationError, ReferenceUnavailableError
from gfsolver.core.logging import bind_context, clear_context, get_logger
from gfsolver.models.enums import StopReason
from gfsolver.models.schemas import ConvergenceReport, MeshLevel, RunConfig
from gfsolver.physics.cases import default_system, exact_solution
from gfsolver.tools.run import resolve_case, simulate, time_config, write_config_echo
from gfsolver.utils.formatters import config_hash, write_convergence_csv, write_json

logger = get_logger(__name__)


@dataclass
class ConvergenceResult:
    """Report and written files of a convergence study."""

    report: ConvergenceReport
    output_dir: Path
    files: list[Path] = field(default_factory=list)


def run_convergence(cfg: RunConfig) -> ConvergenceResult:
    """
    Run a case on each mesh of ``cfg.convergence`` and measure observed orders.

    Levels run one after another, coarse to fine. Each level's errors against the exact
    solution at its final time are compared with the previous level's to give the order
    ``log2(e_coarse / e_fine)``.

    Writes ``convergence_<case>_<scheme>_<hash>.csv`` (component-major table),
    the matching ``.json`` report and the config echo.

    Args:
        cfg: Configuration in convergence mode

    Returns:
        ConvergenceResult with the report and the written files

    Raises:
        ConfigurationError: Not in convergence mode
        ReferenceUnavailableError: The case has no exact solution
        SolverAbortError: A level became inadmissible
    """
    if cfg.convergence is None:
        raise ConfigurationError("No mesh list given for a convergence study", key="convergence")
    spec = resolve_case(cfg)
    if not spec.has_exact:
        raise ReferenceUnavailableError(spec.case)

    system = default_system(spec)
    components = list(system.component_names)
    cfg_hash = config_hash(cfg.reproducibility_key())
    output_dir = Path(cfg.output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)
    t_final = time_config(cfg, spec).t_final

    bind_context(case=spec.case, scheme=cfg.scheme.value, config_hash=cfg_hash)
    try:
        logger.info("convergence_started", meshes=cfg.convergence, t_final=t_final)
        files = [write_config_echo(output_dir, cfg, cfg_hash)]
        levels: list[MeshLevel] = []
        for n in cfg.convergence:
            sim = simulate(cfg, spec, n, n)
            if sim.result.stop_reason is not StopReason.FINAL_TIME:
                logger.warning(
                    "mesh_level_stopped_early",
                    n=n,
                    time=sim.result.time,
                    stop_reason=sim.result.stop_reason.value,
                )
            reference = exact_solution(spec, sim.grid, sim.result.time, system)
            assert reference is not None
            errors = error_norms(sim.result.q, reference, sim.grid, components)

            level = MeshLevel(
                n=n,
                errors=errors,
                conservation_drift=sim.recorder.drift(),
                steps=sim.result.steps,
                wall_time=sim.wall_time,
            )
            if levels:
                previous = levels[-1]
                for err in errors:
                    coarse = previous.error(err.component)
                    level.l2_orders[err.component] = observed_order(coarse.l2, err.l2)
                    level.linf_orders[err.component] = observed_order(coarse.linf, err.linf)
            levels.append(level)
            logger.info(
                "mesh_level_complete",
                n=n,
                steps=level.steps,
                l2={e.component: e.l2 for e in errors},
                l2_order=level.l2_orders or None,
            )

        report = ConvergenceReport(
            case=spec.case,
            scheme=cfg.scheme,
            config_hash=cfg_hash,
            t_final=t_final,
            components=components,
            levels=levels,
        )
        stem = f"convergence_{spec.case}_{cfg.scheme.value}_{cfg_hash}"
        files.append(write_convergence_csv(output_dir / f"{stem}.csv", report))
        files.append(write_json(output_dir / f"{stem}.json", report.model_dump(mode="json")))
        logger.info("convergence_completed", levels=len(levels))
        return ConvergenceResult(report=report, output_dir=output_dir, files=files)
    finally:
        clear_context()
