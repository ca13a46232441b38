"""Tests for case definitions and initialization."""

import numpy as np
import pytest
from pydantic import ValidationError

from gfsolver.analysis.diagnostics import max_mach
from gfsolver.core.constants import ACOUSTIC_VORTEX_DIP, acoustic_vortex_amplitude
from gfsolver.core.exceptions import ConfigurationError
from gfsolver.core.mesh import build_grid
from gfsolver.models.enums import BoundaryKind
from gfsolver.physics.cases import (
    CASE_IDS,
    AcousticVortex,
    EulerVortex,
    EulerVortexPerturbed,
    KelvinHelmholtz,
    SodCircular,
    SWESupercritical,
    exact_solution,
    init_case,
    parse_case,
)
from gfsolver.physics.systems import Acoustics, Euler, ShallowWater


class TestParseCase:
    """Tests for building cases from ids and parameters."""

    @pytest.mark.parametrize("case_id", CASE_IDS)
    def test_all_ids(self, case_id: str):
        """Test every registered id parses with defaults."""
        assert parse_case(case_id).case == case_id

    def test_unknown_id(self):
        """Test an unknown id lists the choices."""
        with pytest.raises(ConfigurationError, match="Unknown case") as info:
            parse_case("double_mach")
        assert info.value.key == "case"

    def test_unknown_parameter(self):
        """Test parameters the case does not define are rejected."""
        with pytest.raises(ConfigurationError, match="colour") as info:
            parse_case("acoustic_vortex", {"colour": "red"})
        assert info.value.key == "colour"

    def test_invalid_value(self):
        """Test a negative radius fails validation."""
        with pytest.raises(ConfigurationError, match="r0"):
            parse_case("acoustic_vortex", {"r0": -1.0})

    def test_string_values_coerced(self):
        """Test config-file strings are converted to numbers."""
        spec = parse_case("euler_vortex", {"u0": "1.5", "mach": "0.1"})
        assert isinstance(spec, EulerVortex)
        assert spec.u0 == pytest.approx(1.5)
        assert spec.mach == pytest.approx(0.1)

    def test_frozen(self):
        """Test cases cannot be mutated after parsing."""
        spec = parse_case("acoustic_vortex")
        with pytest.raises(ValidationError):
            spec.r0 = 0.1  # type: ignore[misc]


class TestInitCase:
    """Tests for sampling cases on grids."""

    def test_padded_shapes(self, acoustics: Acoustics):
        """Test the padded field and periodic boundaries of the acoustic vortex."""
        grid = build_grid(10, 10, (0.0, 1.0, 0.0, 1.0))
        setup = init_case(AcousticVortex(), grid, acoustics)
        assert setup.q.shape == (12, 12, 3)
        assert setup.bathymetry is None
        assert setup.bc.fully_periodic

    def test_wrong_domain(self, acoustics: Acoustics):
        """Test a grid not covering the case domain is rejected."""
        grid = build_grid(10, 10, (0.0, 2.0, 0.0, 1.0))
        with pytest.raises(ConfigurationError, match="do not match the domain"):
            init_case(AcousticVortex(), grid, acoustics)

    def test_wrong_system(self, acoustics: Acoustics):
        """Test a case run with the wrong system is rejected."""
        grid = build_grid(10, 10, (-1.0, 1.0, -1.0, 1.0))
        with pytest.raises(ConfigurationError, match="euler"):
            init_case(SodCircular(), grid, acoustics)

    def test_default_system(self):
        """Test the system defaults from the case."""
        grid = build_grid(8, 8, (0.0, 10.0, 0.0, 10.0))
        setup = init_case(EulerVortex(), grid)
        assert setup.q.shape[-1] == 4


class TestAcousticVortex:
    """Tests for the acoustic vortex."""

    def test_profile(self, acoustics: Acoustics):
        """Test unit pressure, zero velocity at the center and outside the support."""
        spec = AcousticVortex()
        x = np.array([0.5, 0.5, 0.99])
        y = np.array([0.5, 0.7, 0.5])
        q = spec.initial(x, y, acoustics)
        np.testing.assert_array_equal(q[:, 2], 1.0)
        np.testing.assert_allclose(q[0, :2], 0.0)
        np.testing.assert_allclose(q[2, :2], 0.0)
        # rotation: u > 0 above the center
        assert q[1, 0] > 0.0
        assert q[1, 1] == pytest.approx(0.0)

    def test_amplitude_matches_closed_form(self):
        """Test a dip of 0.1 reproduces the closed-form amplitude."""
        closed = 12.0 * np.pi * np.sqrt(0.981) / (0.45 * np.sqrt(315.0 * np.pi**2 - 2048.0))
        assert acoustic_vortex_amplitude(0.45, 0.1) == pytest.approx(closed, rel=1e-14)
        assert ACOUSTIC_VORTEX_DIP == 0.01

    def test_amplitude_balances_depth_dip(self):
        """Test gamma^2 r0^2 int s (1 + cos pi s)^4 ds equals g dip."""
        s = np.linspace(0.0, 1.0, 20001)
        weight = s * (1.0 + np.cos(np.pi * s)) ** 4
        integral = np.sum(0.5 * (weight[1:] + weight[:-1]) * np.diff(s))
        gamma = acoustic_vortex_amplitude(0.45, 0.03)
        assert gamma**2 * 0.45**2 * integral == pytest.approx(9.81 * 0.03, rel=1e-6)

    def test_velocity_scales_with_sqrt_dip(self, acoustics: Acoustics):
        """Test the velocity grows as the square root of the dip."""
        x = np.array([0.6, 0.5])
        y = np.array([0.5, 0.65])
        small = AcousticVortex(dip=0.01).initial(x, y, acoustics)
        large = AcousticVortex(dip=0.1).initial(x, y, acoustics)
        np.testing.assert_allclose(large[:, :2], np.sqrt(10.0) * small[:, :2], rtol=1e-13)
        np.testing.assert_array_equal(large[:, 2], small[:, 2])

    def test_default_velocity_magnitude(self, acoustics: Acoustics):
        """Test the default vortex peaks near 0.274 in speed."""
        grid = build_grid(400, 400, (0.0, 1.0, 0.0, 1.0))
        q = grid.interior(init_case(AcousticVortex(), grid, acoustics).q)
        assert np.hypot(q[..., 0], q[..., 1]).max() == pytest.approx(0.2743, rel=1e-2)

    def test_exact_is_initial(self, acoustics: Acoustics):
        """Test the stationary reference equals the initial data."""
        grid = build_grid(12, 12, (0.0, 1.0, 0.0, 1.0))
        setup = init_case(AcousticVortex(), grid, acoustics)
        exact = exact_solution(AcousticVortex(), grid, 3.0, acoustics)
        np.testing.assert_array_equal(exact, grid.interior(setup.q))


class TestEulerVortex:
    """Tests for the isentropic vortex variants."""

    def test_background_state(self, euler: Euler):
        """Test the far field is the unit state."""
        prim = EulerVortex().primitive(np.array([0.1]), np.array([0.1]), euler.gamma)
        np.testing.assert_allclose(prim[0], [1.0, 0.0, 0.0, 1.0], atol=1e-6)

    def test_mach_rescales_epsilon(self):
        """Test the target Mach number scales the strength linearly."""
        assert EulerVortex(mach=0.07).effective_epsilon == pytest.approx(0.5)
        assert EulerVortex().effective_epsilon == pytest.approx(5.0)

    def test_reference_mach(self, euler: Euler):
        """Test the default vortex peaks near Mach 0.7."""
        grid = build_grid(100, 100, (0.0, 10.0, 0.0, 10.0))
        setup = init_case(EulerVortex(), grid, euler)
        assert max_mach(grid.interior(setup.q), euler) == pytest.approx(0.7, rel=0.05)

    def test_moving_vortex_period(self, euler: Euler):
        """Test the translated vortex returns after one domain period."""
        spec = EulerVortex(u0=1.0, v0=0.5)
        grid = build_grid(16, 16, spec.bounds)
        start = exact_solution(spec, grid, 0.0, euler)
        after = exact_solution(spec, grid, 20.0, euler)
        np.testing.assert_allclose(after, start, atol=1e-12)

    def test_moving_vortex_shift(self, euler: Euler):
        """Test the reference at t is the initial data shifted by (u0 t, v0 t)."""
        spec = EulerVortex(u0=1.0)
        x = np.array([7.0])
        y = np.array([5.0])
        np.testing.assert_allclose(
            spec.exact(x, y, 2.0, euler), spec.initial(x - 2.0, y, euler), rtol=1e-14
        )

    def test_perturbed_density(self, euler: Euler):
        """Test the bump adds to density only."""
        spec = EulerVortexPerturbed()
        x = np.array([spec.px])
        y = np.array([spec.py])
        base = euler.conservative_to_primitive(EulerVortex().initial(x, y, euler))
        bumped = euler.conservative_to_primitive(spec.initial(x, y, euler))
        assert bumped[0, 0] - base[0, 0] == pytest.approx(spec.amplitude)
        np.testing.assert_allclose(bumped[0, 1:], base[0, 1:])
        assert exact_solution(spec, build_grid(8, 8, spec.bounds), 1.0, euler) is None


class TestSodCircular:
    """Tests for the circular shock tube."""

    def test_blend(self):
        """Test the smoothed indicator is 1 inside, 1/2 on the circle and 0 outside."""
        spec = SodCircular()
        blend = spec.blend(np.array([0.0, 0.5, 0.9]), np.zeros(3))
        np.testing.assert_allclose(blend, [1.0, 0.5, 0.0], atol=1e-12)

    def test_states_and_boundary(self, euler: Euler):
        """Test inner and outer primitive states with transmissive sides."""
        spec = SodCircular()
        prim = euler.conservative_to_primitive(
            spec.initial(np.array([0.0, 0.95]), np.array([0.0, 0.95]), euler)
        )
        np.testing.assert_allclose(prim[0], [1.0, 0.0, 0.0, 1.0])
        np.testing.assert_allclose(prim[1], [0.125, 0.0, 0.0, 0.1])
        assert spec.boundary(euler).count(BoundaryKind.TRANSMISSIVE) == 4
        assert exact_solution(spec, build_grid(4, 4, spec.bounds), 0.1, euler) is None


class TestKelvinHelmholtz:
    """Tests for the shear layer profile."""

    def test_profile_values(self):
        """Test the plateaus of the shear profile."""
        profile = KelvinHelmholtz().shear_profile(np.array([-0.45, 0.0, 0.45]))
        np.testing.assert_allclose(profile, [1.0, -1.0, 1.0])

    def test_profile_continuous(self):
        """Test the sine transitions meet the plateaus."""
        spec = KelvinHelmholtz()
        w = spec.omega
        edges = np.array([-0.25 - 0.5 * w, -0.25 + 0.5 * w, 0.25 - 0.5 * w, 0.25 + 0.5 * w])
        below = spec.shear_profile(edges - 1e-9)
        above = spec.shear_profile(edges + 1e-9)
        np.testing.assert_allclose(below, above, atol=1e-6)

    def test_low_mach_state(self, euler: Euler):
        """Test velocities scale with the Mach parameter and pressure is one."""
        spec = KelvinHelmholtz(mach=1e-3)
        prim = euler.conservative_to_primitive(
            spec.initial(np.array([0.25]), np.array([0.0]), euler)
        )
        assert prim[0, 0] == pytest.approx(1.4 - 1e-3)
        assert prim[0, 1] == pytest.approx(-1e-3)
        assert prim[0, 2] == pytest.approx(0.1 * 1e-3)
        assert prim[0, 3] == pytest.approx(1.0)


class TestShallowWaterCases:
    """Tests for the shallow-water cases."""

    def test_potential_flow_is_divergence_free(self, shallow_water: ShallowWater):
        """Test (hu)_x + (hv)_y = 0 for the potential flow by central differences."""
        spec = parse_case("swe_potential_flow")
        eps = 1e-5
        x, y = np.array([0.3]), np.array([-0.4])
        hu_x = (
            spec.initial(x + eps, y, shallow_water)[0, 1]
            - spec.initial(x - eps, y, shallow_water)[0, 1]
        ) / (2.0 * eps)
        hv_y = (
            spec.initial(x, y + eps, shallow_water)[0, 2]
            - spec.initial(x, y - eps, shallow_water)[0, 2]
        ) / (2.0 * eps)
        assert hu_x + hv_y == pytest.approx(0.0, abs=1e-8)

    def test_lake_surface_flat(self, shallow_water: ShallowWater):
        """Test h + b equals the surface level everywhere."""
        spec = parse_case("swe_lake_at_rest")
        grid = build_grid(10, 10, spec.bounds)
        setup = init_case(spec, grid, shallow_water)
        assert setup.bathymetry is not None
        surface = grid.interior(setup.q)[..., 0] + grid.interior(setup.bathymetry)
        np.testing.assert_allclose(surface, spec.surface, atol=1e-14)
        np.testing.assert_array_equal(grid.interior(setup.q)[..., 1:], 0.0)

    def test_supercritical_bump(self, shallow_water: ShallowWater):
        """Test the bump height at its center and the constant momentum."""
        spec = SWESupercritical()
        x, y = np.array([spec.bump_x, 0.5]), np.array([spec.bump_y, 0.5])
        assert spec.bathymetry(x, y, shallow_water.gravity)[0] == pytest.approx(0.2)
        q = spec.initial(x, y, shallow_water)
        np.testing.assert_allclose(q[:, 0], [1.8, 2.0])
        np.testing.assert_allclose(q[:, 1], 24.0)

    def test_straight_boundaries(self, shallow_water: ShallowWater):
        """Test the inlet, outlet and periodic sides of the straight variant."""
        bc = SWESupercritical().boundary(shallow_water)
        assert bc.west.kind is BoundaryKind.DIRICHLET
        assert bc.east.kind is BoundaryKind.TRANSMISSIVE
        assert bc.south.kind is BoundaryKind.PERIODIC
        assert bc.north.kind is BoundaryKind.PERIODIC

    def test_crooked_boundaries(self, shallow_water: ShallowWater):
        """Test a transverse momentum turns the south side into an inlet."""
        spec = SWESupercritical(qy=4.0 * np.pi)
        assert spec.crooked
        bc = spec.boundary(shallow_water)
        assert bc.south.kind is BoundaryKind.DIRICHLET
        assert bc.north.kind is BoundaryKind.TRANSMISSIVE
