"""Uniform Cartesian grid geometry, cell/corner indexing and ghost-layer layout.

Fields are stored as numpy arrays of shape ``(nx + 2*ghost, ny + 2*ghost, n_eq)`` indexed
``[i, j]``. Cell indices in the public helpers are 1-based: interior cells run over
``1..nx`` and ``1..ny``, ghost cells sit at ``0`` and ``nx + 1`` (and beyond for wider halos).
Corner ``(i + 1/2, j + 1/2)`` is addressed by its lower-left cell ``(i, j)``.
"""

from typing import NamedTuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from gfsolver.core.exceptions import GridError


class CornerNormal(NamedTuple):
    """Orientation of a corner seen from one of its four cells."""

    nx: int
    ny: int

    @property
    def nscalar(self) -> int:
        """Product of the two components."""
        return self.nx * self.ny


class Grid(BaseModel):
    """Immutable uniform grid over ``[x0, x1] x [y0, y1]``."""

    model_config = ConfigDict(frozen=True)

    nx: int = Field(..., ge=2, description="Cells in x")
    ny: int = Field(..., ge=2, description="Cells in y")
    x0: float = Field(..., description="West bound")
    x1: float = Field(..., description="East bound")
    y0: float = Field(..., description="South bound")
    y1: float = Field(..., description="North bound")
    ghost: int = Field(default=1, ge=1, description="Ghost-layer width")

    @property
    def dx(self) -> float:
        return (self.x1 - self.x0) / self.nx

    @property
    def dy(self) -> float:
        return (self.y1 - self.y0) / self.ny

    @property
    def cell_area(self) -> float:
        return self.dx * self.dy

    @property
    def padded_shape(self) -> tuple[int, int]:
        """Storage shape including the ghost halo."""
        return (self.nx + 2 * self.ghost, self.ny + 2 * self.ghost)

    @property
    def bounds(self) -> tuple[float, float, float, float]:
        return (self.x0, self.x1, self.y0, self.y1)

    def empty_field(self, n_eq: int) -> np.ndarray:
        """Zero-initialized padded field with ``n_eq`` components."""
        return np.zeros((*self.padded_shape, n_eq))

    def interior(self, field: np.ndarray) -> np.ndarray:
        """View of the interior cells of a padded field."""
        g = self.ghost
        return field[g : g + self.nx, g : g + self.ny]

    def halo(self, field: np.ndarray, width: int = 1) -> np.ndarray:
        """View of the interior plus ``width`` ghost layers of a padded field."""
        if width > self.ghost:
            raise GridError(f"Halo width {width} exceeds ghost width {self.ghost}")
        lo = self.ghost - width
        return field[lo : lo + self.nx + 2 * width, lo : lo + self.ny + 2 * width]

    def pad(self, interior: np.ndarray) -> np.ndarray:
        """Embed an interior array into a fresh padded field (ghosts zero)."""
        if interior.shape[:2] != (self.nx, self.ny):
            raise GridError(
                f"Interior shape {interior.shape[:2]} does not match grid ({self.nx}, {self.ny})"
            )
        field = np.zeros((*self.padded_shape, *interior.shape[2:]))
        self.interior(field)[...] = interior
        return field

    def cell_centers(self, with_ghosts: bool = False) -> tuple[np.ndarray, np.ndarray]:
        """
        Cell-center coordinates as ``(X, Y)`` arrays in ``[i, j]`` layout.

        Args:
            with_ghosts: Include the ghost halo (matches padded storage)

        Returns:
            Two arrays of shape ``(nx, ny)`` or the padded shape
        """
        g = self.ghost if with_ghosts else 0
        i = np.arange(1 - g, self.nx + g + 1)
        j = np.arange(1 - g, self.ny + g + 1)
        x = self.x0 + (i - 0.5) * self.dx
        y = self.y0 + (j - 0.5) * self.dy
        return np.meshgrid(x, y, indexing="ij")

    def center(self, i: int, j: int) -> tuple[float, float]:
        """Center of 1-based cell ``(i, j)``; ghost indices are allowed."""
        return (self.x0 + (i - 0.5) * self.dx, self.y0 + (j - 0.5) * self.dy)

    def cell_of_point(self, x: float, y: float) -> tuple[int, int]:
        """1-based cell containing the point; points on the east/north bound map inward."""
        i = int(np.floor((x - self.x0) / self.dx)) + 1
        j = int(np.floor((y - self.y0) / self.dy)) + 1
        return (min(max(i, 1), self.nx), min(max(j, 1), self.ny))

    def storage_index(self, i: int, j: int) -> tuple[int, int]:
        """Padded-array index of 1-based cell ``(i, j)``."""
        return (i - 1 + self.ghost, j - 1 + self.ghost)

    def cell_index(self, a: int, b: int) -> tuple[int, int]:
        """1-based cell of padded-array index ``(a, b)``."""
        return (a + 1 - self.ghost, b + 1 - self.ghost)

    def corner_cells(self, i: int, j: int) -> list[tuple[int, int]]:
        """The four cells ``(i + l, j + r)`` sharing corner ``(i + 1/2, j + 1/2)``."""
        return [(i + ell, j + r) for ell in (0, 1) for r in (0, 1)]


def build_grid(
    nx: int,
    ny: int,
    bounds: tuple[float, float, float, float] | list[float],
    ghost: int = 1,
) -> Grid:
    """
    Build a uniform grid.

    Args:
        nx: Cells in x (at least 2)
        ny: Cells in y (at least 2)
        bounds: ``(x0, x1, y0, y1)``
        ghost: Ghost-layer width (at least 1)

    Returns:
        Grid with exact dx = (x1 - x0)/nx and dy = (y1 - y0)/ny

    Raises:
        GridError: Non-positive extents, too few cells or ghost width below 1

    Example:
        >>> build_grid(20, 40, (0.0, 1.0, 0.0, 2.0)).dy
        0.05
    """
    if len(bounds) != 4:
        raise GridError(f"Expected 4 bounds (x0, x1, y0, y1), got {len(bounds)}")
    x0, x1, y0, y1 = (float(b) for b in bounds)
    if nx < 2 or ny < 2:
        raise GridError(f"Need at least 2 cells per direction, got ({nx}, {ny})")
    if not (x1 > x0 and y1 > y0):
        raise GridError(f"Domain [{x0}, {x1}] x [{y0}, {y1}] has non-positive extent")
    if ghost < 1:
        raise GridError(f"Ghost width must be at least 1, got {ghost}")
    return Grid(nx=nx, ny=ny, x0=x0, x1=x1, y0=y0, y1=y1, ghost=ghost)


def corner_normal(ell: int, r: int) -> CornerNormal:
    """
    Normal of corner ``(i + 1/2, j + 1/2)`` as seen from cell ``(i + ell, j + r)``.

    Args:
        ell: 0 or 1
        r: 0 or 1

    Returns:
        CornerNormal ``((-1)^(ell+1), (-1)^(r+1))``
    """
    if ell not in (0, 1) or r not in (0, 1):
        raise GridError(f"Corner offsets must be 0 or 1, got ({ell}, {r})")
    return CornerNormal(nx=1 if ell else -1, ny=1 if r else -1)


# Cell-to-corner orientation offsets, in assembly order
CORNER_OFFSETS: tuple[tuple[int, int], ...] = ((0, 0), (1, 0), (0, 1), (1, 1))
