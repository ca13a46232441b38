"""Explicit time integration with CFL step control and steady-state monitoring."""

from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from gfsolver.core.exceptions import (
    ConfigurationError,
    InadmissibleStateError,
    SolverAbortError,
)
from gfsolver.core.logging import get_logger
from gfsolver.core.mesh import Grid
from gfsolver.models.enums import Integrator, StopReason
from gfsolver.models.schemas import TimeConfig
from gfsolver.physics.systems import SystemModel

logger = get_logger(__name__)

RateFunction = Callable[[np.ndarray], np.ndarray]
StepCallback = Callable[[int, float, np.ndarray, float], None]


def stable_dt(grid: Grid, system: SystemModel, q: np.ndarray, cfl: float) -> float:
    """
    CFL time step ``cfl * min(dx, dy) / max lambda_m``.

    Args:
        grid: Grid of the run
        system: PDE system
        q: Cell states, interior or padded
        cfl: Courant number in (0, 1]

    Returns:
        Positive time step

    Raises:
        InadmissibleStateError: A state is inadmissible or its wave speed is not finite
    """
    if not 0.0 < cfl <= 1.0:
        raise ConfigurationError(f"cfl must lie in (0, 1], got {cfl}", key="cfl")
    speeds = system.max_wave_speed(q)
    if not np.isfinite(speeds).all():
        cell = tuple(int(v) for v in np.argwhere(~np.isfinite(speeds))[0])
        raise InadmissibleStateError("non-finite wave speed", cell, q[cell])
    lam = float(np.max(speeds))
    if not lam > 0.0:
        raise InadmissibleStateError("vanishing maximal wave speed")
    return cfl * min(grid.dx, grid.dy) / lam


def _check_dt(dt: float) -> None:
    if not dt > 0.0:
        raise ConfigurationError(f"Time step must be positive, got {dt}")


def step_euler(
    q: np.ndarray, dt: float, rate_fn: RateFunction, rate: np.ndarray | None = None
) -> np.ndarray:
    """
    Forward Euler step ``q + dt L(q)``.

    ``rate`` may carry an already evaluated ``L(q)``.
    """
    _check_dt(dt)
    if rate is None:
        rate = rate_fn(q)
    return q + dt * rate


def step_rk2(
    q: np.ndarray, dt: float, rate_fn: RateFunction, rate: np.ndarray | None = None
) -> np.ndarray:
    """
    Heun step: ``q* = q + dt L(q)``, then ``(q + q* + dt L(q*)) / 2``.

    ``rate`` may carry an already evaluated ``L(q)``.
    """
    _check_dt(dt)
    if rate is None:
        rate = rate_fn(q)
    q_star = q + dt * rate
    return 0.5 * (q + q_star + dt * rate_fn(q_star))


def steady_residual(rate: np.ndarray, dt: float, scale: float = 1.0) -> float:
    """
    Time residual ``dt * max|rate| / scale``.

    This is the largest per-step change of any component relative to ``scale``
    (the run uses the largest initial state magnitude), so equilibria preserved to
    roundoff report values near machine precision.
    """
    if rate.size == 0:
        return 0.0
    return float(dt * np.max(np.abs(rate)) / scale)


@dataclass
class IntegrationResult:
    """Final state and bookkeeping of a time integration."""

    q: np.ndarray
    time: float
    steps: int
    stop_reason: StopReason
    residual: float
    residual_drop: float


def integrate(
    q0: np.ndarray,
    rate_fn: RateFunction,
    dt_fn: Callable[[np.ndarray], float],
    config: TimeConfig,
    *,
    on_step: StepCallback | None = None,
    check: Callable[[np.ndarray], None] | None = None,
    log_every: int = 100,
) -> IntegrationResult:
    """
    Advance ``q0`` until the final time, the steady tolerance or the step cap.

    The time step is recomputed from the current field each step (unless ``fixed_dt`` is
    set) and the last step is clipped so the run ends exactly at ``t_final``.

    Args:
        q0: Initial interior states
        rate_fn: Semi-discrete rate ``L(q)``
        dt_fn: Stable step for a given field
        config: Time integration controls
        on_step: Called as ``on_step(step, t, q, dt)`` after every step
        check: Admissibility check applied to every new field
        log_every: Debug log cadence in steps

    Returns:
        IntegrationResult with the stop reason

    Raises:
        SolverAbortError: An inadmissible state met during a step, with step and time
    """
    step_fn = step_euler if config.integrator is Integrator.EULER else step_rk2
    q = np.array(q0, dtype=float, copy=True)
    t = 0.0
    steps = 0
    scale = max(float(np.max(np.abs(q))), np.finfo(float).tiny)
    first_rate_norm: float | None = None
    residual = 0.0
    residual_drop = 0.0

    if config.t_final <= 0.0:
        return IntegrationResult(q, t, steps, StopReason.FINAL_TIME, residual, residual_drop)

    reason = StopReason.MAX_STEPS
    while steps < config.max_steps:
        try:
            dt = config.fixed_dt if config.fixed_dt is not None else dt_fn(q)
            rate = rate_fn(q)
            clipped = t + dt >= config.t_final
            dt_step = config.t_final - t if clipped else dt
            q_next = step_fn(q, dt_step, rate_fn, rate=rate)
            if check is not None:
                check(q_next)
        except InadmissibleStateError as e:
            raise SolverAbortError(
                f"Step {steps + 1} at t={t:.6g}: {e.message}",
                step=steps + 1,
                time=t,
                cell=e.cell,
            ) from e

        rate_norm = float(np.max(np.abs(rate)))
        if first_rate_norm is None:
            first_rate_norm = rate_norm
        residual = steady_residual(rate, dt, scale)
        residual_drop = rate_norm / first_rate_norm if first_rate_norm > 0.0 else 0.0

        q = q_next
        steps += 1
        t = config.t_final if clipped else t + dt_step
        if on_step is not None:
            on_step(steps, t, q, dt_step)
        if log_every and steps % log_every == 0:
            logger.debug("step_completed", step=steps, time=t, dt=dt_step, residual=residual)

        if config.steady_tol > 0.0 and residual <= config.steady_tol:
            logger.info("steady_state_reached", step=steps, time=t, residual=residual)
            reason = StopReason.STEADY_STATE
            break
        if clipped:
            reason = StopReason.FINAL_TIME
            break

    return IntegrationResult(q, t, steps, reason, residual, residual_drop)
