"""Tests for boundary specifications and ghost filling."""

from unittest.mock import MagicMock

import numpy as np
import pytest

from gfsolver.core.exceptions import BoundaryError
from gfsolver.core.mesh import Grid, build_grid
from gfsolver.models.enums import BoundaryKind
from gfsolver.physics.systems import Acoustics
from gfsolver.schemes import boundary as boundary_module
from gfsolver.schemes.boundary import (
    BoundarySpec,
    SideCondition,
    fill_bathymetry_ghosts,
    fill_gf_ghosts,
    fill_state_ghosts,
)
from gfsolver.schemes.gf_scheme import compute_global_fluxes


def _indexed_field(grid: Grid) -> np.ndarray:
    """Padded field whose interior encodes its own cell index."""
    x, y = grid.cell_centers()
    return grid.pad(np.stack([x, y, x * y], axis=-1))


class TestBoundarySpec:
    """Tests for BoundarySpec validation and helpers."""

    def test_periodic(self):
        """Test the all-periodic shortcut."""
        bc = BoundarySpec.periodic()
        assert bc.fully_periodic
        assert bc.describe() == {
            "west": "periodic",
            "east": "periodic",
            "south": "periodic",
            "north": "periodic",
        }

    def test_unpaired_periodic_side(self):
        """Test a periodic side without its opposite is rejected."""
        with pytest.raises(BoundaryError, match="not paired"):
            BoundarySpec(
                west=SideCondition(kind=BoundaryKind.PERIODIC),
                east=SideCondition(kind=BoundaryKind.TRANSMISSIVE),
                south=SideCondition(kind=BoundaryKind.PERIODIC),
                north=SideCondition(kind=BoundaryKind.PERIODIC),
            )

    def test_dirichlet_needs_state(self):
        """Test a Dirichlet side without a state function is rejected."""
        with pytest.raises(BoundaryError, match="state function"):
            SideCondition(kind=BoundaryKind.DIRICHLET)

    def test_count(self):
        """Test counting sides of one kind."""
        bc = BoundarySpec.uniform("transmissive")
        assert bc.count(BoundaryKind.TRANSMISSIVE) == 4
        assert bc.count(BoundaryKind.PERIODIC) == 0
        assert not bc.fully_periodic

    def test_overconstrained_warning(self, monkeypatch: pytest.MonkeyPatch):
        """Test more than two Dirichlet sides only logs a warning."""
        mock_logger = MagicMock()
        monkeypatch.setattr(boundary_module, "logger", mock_logger)
        bc = BoundarySpec.uniform("dirichlet", state=lambda x, y: np.zeros((*x.shape, 3)))
        bc.warn_if_overconstrained()
        mock_logger.warning.assert_called_once_with(
            "boundary_constraint_warning", dirichlet_sides=4
        )


class TestFillStateGhosts:
    """Tests for state-level ghost filling."""

    def test_periodic_wrap(self, unit_grid: Grid):
        """Test periodic ghosts copy the opposite interior layer."""
        q = fill_state_ghosts(unit_grid, _indexed_field(unit_grid), BoundarySpec.periodic())
        np.testing.assert_array_equal(q[0, 1:-1], q[8, 1:-1])
        np.testing.assert_array_equal(q[9, 1:-1], q[1, 1:-1])
        np.testing.assert_array_equal(q[:, 0], q[:, 8])
        # corners wrap diagonally
        np.testing.assert_array_equal(q[0, 0], q[8, 8])

    def test_periodic_wide_halo(self):
        """Test two ghost layers wrap the two outermost interior layers."""
        grid = build_grid(6, 6, (0.0, 1.0, 0.0, 1.0), ghost=2)
        q = fill_state_ghosts(grid, _indexed_field(grid), BoundarySpec.periodic())
        np.testing.assert_array_equal(q[0:2, 2:8], q[6:8, 2:8])
        np.testing.assert_array_equal(q[8:10, 2:8], q[2:4, 2:8])

    def test_transmissive_copy(self, unit_grid: Grid):
        """Test transmissive ghosts copy the adjacent interior cell."""
        bc = BoundarySpec.uniform("transmissive")
        q = fill_state_ghosts(unit_grid, _indexed_field(unit_grid), bc)
        np.testing.assert_array_equal(q[0, 1:-1], q[1, 1:-1])
        np.testing.assert_array_equal(q[9, 1:-1], q[8, 1:-1])
        np.testing.assert_array_equal(q[:, 9], q[:, 8])

    def test_dirichlet_evaluates_state(self, unit_grid: Grid):
        """Test Dirichlet ghosts hold the prescribed state at ghost centers."""

        def state(x: np.ndarray, y: np.ndarray) -> np.ndarray:
            return np.stack([x, y, x + y], axis=-1)

        bc = BoundarySpec.uniform("dirichlet", state)
        q = fill_state_ghosts(unit_grid, _indexed_field(unit_grid), bc)
        x, y = unit_grid.cell_centers(with_ghosts=True)
        np.testing.assert_allclose(q[0, :, 0], x[0, :])
        np.testing.assert_allclose(q[:, 9, 2], x[:, 9] + y[:, 9])

    def test_mixed_sides(self, unit_grid: Grid):
        """Test x sides transmissive with periodic y sides."""
        outlet = SideCondition(kind=BoundaryKind.TRANSMISSIVE)
        periodic = SideCondition(kind=BoundaryKind.PERIODIC)
        bc = BoundarySpec(west=outlet, east=outlet, south=periodic, north=periodic)
        q = fill_state_ghosts(unit_grid, _indexed_field(unit_grid), bc)
        np.testing.assert_array_equal(q[0, 1:-1], q[1, 1:-1])
        np.testing.assert_array_equal(q[1:-1, 0], q[1:-1, 8])


class TestFillBathymetryGhosts:
    """Tests for bathymetry ghost filling."""

    def test_periodic_wrap_only(self, unit_grid: Grid):
        """Test periodic sides wrap while transmissive sides keep sampled values."""
        outlet = SideCondition(kind=BoundaryKind.TRANSMISSIVE)
        periodic = SideCondition(kind=BoundaryKind.PERIODIC)
        bc = BoundarySpec(west=outlet, east=outlet, south=periodic, north=periodic)
        x, y = unit_grid.cell_centers(with_ghosts=True)
        b = fill_bathymetry_ghosts(unit_grid, x + 10.0 * y, bc)
        assert b[0, 3] == pytest.approx(x[0, 3] + 10.0 * y[0, 3])
        np.testing.assert_array_equal(b[:, 0], b[:, 8])


class TestFillGfGhosts:
    """Tests for global-flux ghost rules."""

    def test_transmissive_copies_global_fluxes(
        self, unit_grid: Grid, rng: np.random.Generator
    ):
        """Test transmissive sides copy F, G and R from the adjacent ring layer."""
        system = Acoustics()
        bc = BoundarySpec.uniform("transmissive")
        q = fill_state_ghosts(unit_grid, unit_grid.pad(rng.normal(size=(8, 8, 3))), bc)
        gf = compute_global_fluxes(unit_grid, system, q, bc)
        for part in (gf.F, gf.G, gf.R):
            np.testing.assert_array_equal(part[0, :], part[1, :])
            np.testing.assert_array_equal(part[9, :], part[8, :])
            np.testing.assert_array_equal(part[:, 0], part[:, 1])
            np.testing.assert_array_equal(part[:, 9], part[:, 8])

    def test_periodic_leaves_ring_untouched(self, unit_grid: Grid, rng: np.random.Generator):
        """Test periodic sides keep the swept values."""
        system = Acoustics()
        bc = BoundarySpec.periodic()
        q = fill_state_ghosts(unit_grid, unit_grid.pad(rng.normal(size=(8, 8, 3))), bc)
        gf = compute_global_fluxes(unit_grid, system, q, bc)
        before = gf.F.copy()
        fill_gf_ghosts(unit_grid, gf, bc)
        np.testing.assert_array_equal(gf.F, before)
