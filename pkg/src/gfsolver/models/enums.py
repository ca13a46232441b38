"""Enumeration types for gfsolver."""

from enum import Enum


class SystemId(str, Enum):
    """Hyperbolic systems supported by the solver."""

    ACOUSTICS = "acoustics"
    EULER = "euler"
    SHALLOW_WATER = "shallow_water"

    @property
    def n_eq(self) -> int:
        """Number of conservative components."""
        return 4 if self is SystemId.EULER else 3


class Direction(str, Enum):
    """Coordinate direction of a flux or Jacobian."""

    X = "x"
    Y = "y"

    @property
    def axis(self) -> int:
        """Array axis of the direction in [i, j] storage."""
        return 0 if self is Direction.X else 1

    @property
    def other(self) -> "Direction":
        return Direction.Y if self is Direction.X else Direction.X


class Scheme(str, Enum):
    """
    Spatial discretizations.

    - GF: global-flux corner scheme
    - FV1: first-order Rusanov finite volume
    - FV2: second-order minmod-reconstructed Rusanov finite volume
    """

    GF = "gf"
    FV1 = "fv1"
    FV2 = "fv2"

    @property
    def ghost_width(self) -> int:
        """Ghost layers the scheme reads."""
        return 2 if self is Scheme.FV2 else 1

    @property
    def reconstruction_order(self) -> int:
        return 2 if self is Scheme.FV2 else 1


class Integrator(str, Enum):
    """Explicit time integrators."""

    EULER = "euler"
    RK2 = "rk2"


class BoundaryKind(str, Enum):
    """Per-side boundary condition kinds."""

    PERIODIC = "periodic"
    DIRICHLET = "dirichlet"
    TRANSMISSIVE = "transmissive"


class SourceQuadrature(str, Enum):
    """How the global-flux scheme integrates shallow-water bathymetry sources."""

    DIRECTIONAL = "directional"
    INTEGRAL = "integral"


class StopReason(str, Enum):
    """Why a time integration ended."""

    FINAL_TIME = "final_time"
    STEADY_STATE = "steady_state"
    MAX_STEPS = "max_steps"
