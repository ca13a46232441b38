"""Ghost-cell filling for state-level and global-flux-level boundary conditions."""

from collections.abc import Callable, Iterator
from typing import TYPE_CHECKING

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator
from typing_extensions import Self

from gfsolver.core.exceptions import BoundaryError
from gfsolver.core.logging import get_logger
from gfsolver.core.mesh import Grid
from gfsolver.models.enums import BoundaryKind

if TYPE_CHECKING:
    from gfsolver.schemes.gf_scheme import GlobalFluxField

logger = get_logger(__name__)

StateFunction = Callable[[np.ndarray, np.ndarray], np.ndarray]

SIDES = ("west", "east", "south", "north")


class SideCondition(BaseModel):
    """Boundary condition on one side of the domain."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    kind: BoundaryKind
    state: StateFunction | None = None

    @model_validator(mode="after")
    def _dirichlet_needs_state(self) -> Self:
        if self.kind is BoundaryKind.DIRICHLET and self.state is None:
            raise BoundaryError("Dirichlet side needs a state function of (x, y)")
        return self


class BoundarySpec(BaseModel):
    """Per-side boundary conditions; periodic sides must come in opposite pairs."""

    model_config = ConfigDict(frozen=True)

    west: SideCondition
    east: SideCondition
    south: SideCondition
    north: SideCondition

    @model_validator(mode="after")
    def _periodic_pairs(self) -> Self:
        for lo, hi in (("west", "east"), ("south", "north")):
            lo_periodic = getattr(self, lo).kind is BoundaryKind.PERIODIC
            hi_periodic = getattr(self, hi).kind is BoundaryKind.PERIODIC
            if lo_periodic != hi_periodic:
                raise BoundaryError(f"Periodic side '{lo}/{hi}' is not paired", side=lo)
        return self

    @classmethod
    def uniform(
        cls, kind: BoundaryKind | str, state: StateFunction | None = None
    ) -> Self:
        """Same condition on all four sides."""
        side = SideCondition(kind=BoundaryKind(kind), state=state)
        return cls(west=side, east=side, south=side, north=side)

    @classmethod
    def periodic(cls) -> Self:
        return cls.uniform(BoundaryKind.PERIODIC)

    def sides(self) -> Iterator[tuple[str, SideCondition]]:
        for name in SIDES:
            yield name, getattr(self, name)

    def count(self, kind: BoundaryKind) -> int:
        return sum(1 for _, side in self.sides() if side.kind is kind)

    @property
    def fully_periodic(self) -> bool:
        return self.count(BoundaryKind.PERIODIC) == 4

    def describe(self) -> dict[str, str]:
        return {name: side.kind.value for name, side in self.sides()}

    def warn_if_overconstrained(self) -> None:
        """Exact equilibria tolerate at most two Dirichlet sides; more only earns a warning."""
        n_dirichlet = self.count(BoundaryKind.DIRICHLET)
        if n_dirichlet > 2:
            logger.warning("boundary_constraint_warning", dirichlet_sides=n_dirichlet)


def _fill_side(
    grid: Grid,
    field: np.ndarray,
    name: str,
    side: SideCondition,
    coords: tuple[np.ndarray, np.ndarray] | None,
    skip: tuple[BoundaryKind, ...] = (),
) -> None:
    g, nx, ny = grid.ghost, grid.nx, grid.ny
    if side.kind in skip:
        return

    # x sides cover interior rows only; y sides then cover the full width incl. corners
    if name in ("west", "east"):
        rows = slice(g, g + ny)
        ghost = slice(0, g) if name == "west" else slice(g + nx, nx + 2 * g)
        if side.kind is BoundaryKind.PERIODIC:
            source = slice(nx, nx + g) if name == "west" else slice(g, 2 * g)
            field[ghost, rows] = field[source, rows]
        elif side.kind is BoundaryKind.TRANSMISSIVE:
            edge = slice(g, g + 1) if name == "west" else slice(g + nx - 1, g + nx)
            field[ghost, rows] = field[edge, rows]
        else:
            assert coords is not None and side.state is not None
            field[ghost, rows] = side.state(coords[0][ghost, rows], coords[1][ghost, rows])
    else:
        ghost = slice(0, g) if name == "south" else slice(g + ny, ny + 2 * g)
        if side.kind is BoundaryKind.PERIODIC:
            source = slice(ny, ny + g) if name == "south" else slice(g, 2 * g)
            field[:, ghost] = field[:, source]
        elif side.kind is BoundaryKind.TRANSMISSIVE:
            edge = slice(g, g + 1) if name == "south" else slice(g + ny - 1, g + ny)
            field[:, ghost] = field[:, edge]
        else:
            assert coords is not None and side.state is not None
            field[:, ghost] = side.state(coords[0][:, ghost], coords[1][:, ghost])


def fill_state_ghosts(grid: Grid, q: np.ndarray, bc: BoundarySpec) -> np.ndarray:
    """
    Fill every ghost layer of a padded state field in place.

    Periodic sides wrap, Dirichlet sides evaluate the prescribed state at ghost centers,
    transmissive sides copy the adjacent interior state. x sides are filled first, so
    ghost corners follow the y-side rule.

    Args:
        grid: Grid the field lives on
        q: Padded field ``(nx + 2g, ny + 2g, n_eq)``
        bc: Boundary specification

    Returns:
        The same array, with ghosts filled
    """
    coords = None
    if bc.count(BoundaryKind.DIRICHLET):
        coords = grid.cell_centers(with_ghosts=True)
    for name, side in bc.sides():
        _fill_side(grid, q, name, side, coords)
    return q


def fill_bathymetry_ghosts(grid: Grid, b: np.ndarray, bc: BoundarySpec) -> np.ndarray:
    """Wrap bathymetry on periodic sides; other sides keep their sampled ghost values."""
    for name, side in bc.sides():
        _fill_side(
            grid, b, name, side, None, skip=(BoundaryKind.DIRICHLET, BoundaryKind.TRANSMISSIVE)
        )
    return b


def fill_gf_ghosts(grid: Grid, gf: "GlobalFluxField", bc: BoundarySpec) -> "GlobalFluxField":
    """
    Apply global-flux boundary rules to the one-layer ring of ``gf``.

    Transmissive sides copy F, G and R from the adjacent interior cells, x sides first
    over the whole ring so that double-transmissive ghost corners take the interior corner
    value. Periodic and Dirichlet sides keep the values produced by extending the
    trapezoidal recursions with ghost-state point fluxes.

    Args:
        grid: Grid of the run
        gf: Global fluxes on the ring ``(nx + 2, ny + 2, n_eq)``
        bc: Boundary specification

    Returns:
        ``gf`` with transmissive ghosts overwritten in place
    """
    nx, ny = grid.nx, grid.ny
    parts = (gf.F, gf.G, gf.R)
    for name, side in bc.sides():
        if side.kind is not BoundaryKind.TRANSMISSIVE:
            continue
        for part in parts:
            if name == "west":
                part[0, :] = part[1, :]
            elif name == "east":
                part[nx + 1, :] = part[nx, :]
    for name, side in bc.sides():
        if side.kind is not BoundaryKind.TRANSMISSIVE:
            continue
        for part in parts:
            if name == "south":
                part[:, 0] = part[:, 1]
            elif name == "north":
                part[:, ny + 1] = part[:, ny]
    return gf
