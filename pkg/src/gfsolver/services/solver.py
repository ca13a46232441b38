"""Solver service binding a grid, a system, boundaries and a scheme into a rate function."""

from collections.abc import Callable

import numpy as np

from gfsolver.core.constants import ALPHA_FLOOR, DEFAULT_THETA
from gfsolver.core.logging import get_logger
from gfsolver.core.mesh import Grid
from gfsolver.models.enums import Scheme, SourceQuadrature
from gfsolver.models.schemas import ReconstructionConfig, TimeConfig
from gfsolver.physics.systems import SystemModel
from gfsolver.schemes.boundary import BoundarySpec, fill_state_ghosts
from gfsolver.schemes.fv_baseline import fv_semidiscrete_update
from gfsolver.schemes.gf_scheme import gf_semidiscrete_update_recursive
from gfsolver.schemes.timestepping import (
    IntegrationResult,
    StepCallback,
    integrate,
    stable_dt,
)

logger = get_logger(__name__)


class Solver:
    """
    Semi-discrete solver for one configuration.

    Fields passed in and out are interior arrays ``(nx, ny, n_eq)``; padding and ghost
    filling happen inside :meth:`rate`.
    """

    def __init__(
        self,
        grid: Grid,
        system: SystemModel,
        bc: BoundarySpec,
        scheme: Scheme,
        *,
        bathymetry: np.ndarray | None = None,
        source: np.ndarray | None = None,
        theta: float = DEFAULT_THETA,
        quadrature: SourceQuadrature = SourceQuadrature.DIRECTIONAL,
        alpha_floor: float = ALPHA_FLOOR,
    ) -> None:
        self.grid = grid
        self.system = system
        self.bc = bc
        self.scheme = Scheme(scheme)
        self.bathymetry = bathymetry
        self.source = source
        self.quadrature = SourceQuadrature(quadrature)
        self.alpha_floor = alpha_floor
        self.reconstruction = ReconstructionConfig(
            order=self.scheme.reconstruction_order, theta=theta
        )
        self.rate_evaluations = 0

    def padded(self, q: np.ndarray) -> np.ndarray:
        """Embed interior states and fill the ghosts."""
        field = self.grid.pad(q)
        return fill_state_ghosts(self.grid, field, self.bc)

    def rate(self, q: np.ndarray) -> np.ndarray:
        """
        Semi-discrete rate of the interior cells.

        Raises:
            InadmissibleStateError: A state read by the scheme is inadmissible
        """
        self.rate_evaluations += 1
        field = self.padded(q)
        if self.scheme is Scheme.GF:
            return gf_semidiscrete_update_recursive(
                self.grid,
                self.system,
                field,
                self.bc,
                bathymetry=self.bathymetry,
                source=self.source,
                quadrature=self.quadrature,
                alpha_floor=self.alpha_floor,
            )
        return fv_semidiscrete_update(
            self.grid,
            self.system,
            field,
            self.bc,
            self.reconstruction,
            bathymetry=self.bathymetry,
        )

    def dt_function(self, cfl: float) -> Callable[[np.ndarray], float]:
        return lambda q: stable_dt(self.grid, self.system, q, cfl)

    def run(
        self,
        q0: np.ndarray,
        config: TimeConfig,
        *,
        on_step: StepCallback | None = None,
        log_every: int = 100,
    ) -> IntegrationResult:
        """
        Integrate interior states ``q0`` under ``config``.

        Raises:
            SolverAbortError: The field became inadmissible
        """
        logger.debug(
            "integration_started",
            scheme=self.scheme.value,
            nx=self.grid.nx,
            ny=self.grid.ny,
            t_final=config.t_final,
        )
        return integrate(
            q0,
            self.rate,
            self.dt_function(config.cfl),
            config,
            on_step=on_step,
            check=self.system.check_admissible,
            log_every=log_every,
        )
