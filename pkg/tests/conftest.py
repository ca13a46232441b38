"""Pytest fixtures and configuration."""

from pathlib import Path

import numpy as np
import pytest

from gfsolver.core.config import Settings, reset_settings
from gfsolver.core.mesh import Grid, build_grid
from gfsolver.physics.systems import Acoustics, Euler, ShallowWater


def random_euler_states(rng: np.random.Generator, shape: tuple[int, ...]) -> np.ndarray:
    """Admissible Euler states with moderate density, velocity and pressure."""
    system = Euler()
    prim = np.stack(
        [
            rng.uniform(0.5, 1.5, shape),
            rng.uniform(-0.5, 0.5, shape),
            rng.uniform(-0.5, 0.5, shape),
            rng.uniform(0.5, 1.5, shape),
        ],
        axis=-1,
    )
    return system.primitive_to_conservative(prim)


def random_swe_states(rng: np.random.Generator, shape: tuple[int, ...]) -> np.ndarray:
    """Admissible shallow-water states with depth around one."""
    system = ShallowWater()
    prim = np.stack(
        [
            rng.uniform(0.5, 1.5, shape),
            rng.uniform(-0.5, 0.5, shape),
            rng.uniform(-0.5, 0.5, shape),
        ],
        axis=-1,
    )
    return system.primitive_to_conservative(prim)


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded random generator."""
    return np.random.default_rng(20240115)


@pytest.fixture
def unit_grid() -> Grid:
    """8x8 grid on the unit square with one ghost layer."""
    return build_grid(8, 8, (0.0, 1.0, 0.0, 1.0))


@pytest.fixture
def acoustics() -> Acoustics:
    return Acoustics()


@pytest.fixture
def euler() -> Euler:
    return Euler()


@pytest.fixture
def shallow_water() -> ShallowWater:
    return ShallowWater()


@pytest.fixture
def test_settings(tmp_path: Path) -> Settings:
    """Create test settings writing into a temporary directory."""
    reset_settings()
    return Settings(
        output_dir=str(tmp_path / "runs"),
        debug=True,
    )


@pytest.fixture(autouse=True)
def cleanup_settings():
    """Clean up settings after each test."""
    yield
    reset_settings()
