"""Tests for command-line and config-file parsing."""

from pathlib import Path

import pytest

from gfsolver.core.config import Settings
from gfsolver.core.exceptions import ConfigurationError
from gfsolver.models.enums import Integrator, Scheme
from gfsolver.utils.config_file import build_parser, parse_config, read_config_file


def write_config(tmp_path: Path, text: str) -> Path:
    path = tmp_path / "run.cfg"
    path.write_text(text)
    return path


class TestParseConfigFlags:
    """Tests for flag parsing and defaults."""

    def test_minimal(self, test_settings: Settings):
        """Test a case and a mesh size with everything else from the settings."""
        cfg = parse_config(["--case", "acoustic_vortex", "--n", "20"], test_settings)
        assert (cfg.nx, cfg.ny) == (20, 20)
        assert cfg.scheme is Scheme.GF
        assert cfg.cfl == test_settings.cfl
        assert cfg.output_dir == test_settings.output_dir
        assert cfg.debug is True
        assert cfg.t_final is None

    def test_nx_overrides_n(self, test_settings: Settings):
        """Test an explicit nx wins over n."""
        cfg = parse_config(
            ["--case", "acoustic_vortex", "--n", "20", "--nx", "30"], test_settings
        )
        assert (cfg.nx, cfg.ny) == (30, 20)

    def test_typed_options(self, test_settings: Settings):
        """Test numeric and enum options are converted."""
        argv = "--case sod_circular --scheme fv2 --integrator euler --tfinal 0.05 --theta 1.5"
        argv += " --n 16"
        cfg = parse_config(argv.split(), test_settings)
        assert cfg.scheme is Scheme.FV2
        assert cfg.integrator is Integrator.EULER
        assert cfg.t_final == pytest.approx(0.05)
        assert cfg.theta == pytest.approx(1.5)

    def test_missing_case(self, test_settings: Settings):
        """Test a case is mandatory."""
        with pytest.raises(ConfigurationError, match="case is required") as info:
            parse_config(["--n", "20"], test_settings)
        assert info.value.key == "case"

    def test_unknown_flag(self, test_settings: Settings):
        """Test unknown flags raise instead of exiting."""
        with pytest.raises(ConfigurationError, match="unrecognized"):
            parse_config(["--case", "acoustic_vortex", "--colour", "red"], test_settings)

    def test_bad_choice(self, test_settings: Settings):
        """Test an unknown scheme is rejected."""
        with pytest.raises(ConfigurationError, match="invalid choice") as info:
            parse_config(["--case", "acoustic_vortex", "--scheme", "weno"], test_settings)
        assert info.value.key == "scheme"

    def test_unknown_case_flag_names_key(self, test_settings: Settings):
        """Test an unknown --case value reports the case key."""
        with pytest.raises(ConfigurationError, match="invalid choice") as info:
            parse_config(["--case", "double_mach"], test_settings)
        assert info.value.key == "case"

    def test_out_of_range_value(self, test_settings: Settings):
        """Test pydantic range errors surface with their field name."""
        with pytest.raises(ConfigurationError, match="cfl") as info:
            parse_config(["--case", "acoustic_vortex", "--cfl", "1.5"], test_settings)
        assert info.value.key == "cfl"

    def test_case_params(self, test_settings: Settings):
        """Test repeated --param flags collect case parameters."""
        cfg = parse_config(
            ["--case", "euler_vortex", "--param", "u0=1", "--param", "v0 = -0.5"], test_settings
        )
        assert cfg.case_params == {"u0": "1", "v0": "-0.5"}

    def test_unknown_case_param(self, test_settings: Settings):
        """Test case parameters are validated at parse time."""
        with pytest.raises(ConfigurationError, match="radius"):
            parse_config(["--case", "euler_vortex", "--param", "radius=2"], test_settings)

    def test_mach_for_vortex(self, test_settings: Settings):
        """Test --mach is accepted by the Euler vortex."""
        cfg = parse_config(["--case", "euler_vortex", "--mach", "0.01"], test_settings)
        assert cfg.mach == pytest.approx(0.01)

    def test_mach_for_case_without_mach(self, test_settings: Settings):
        """Test --mach is refused by a case with no Mach parameter."""
        with pytest.raises(ConfigurationError, match="mach"):
            parse_config(["--case", "acoustic_vortex", "--mach", "0.01"], test_settings)


class TestParseConfigModes:
    """Tests for convergence mode and the desk-scale guard."""

    def test_convergence_list(self, test_settings: Settings):
        """Test a doubling mesh list selects convergence mode."""
        cfg = parse_config(
            ["--case", "acoustic_vortex", "--convergence", "20,40,80"], test_settings
        )
        assert cfg.is_convergence
        assert cfg.convergence == [20, 40, 80]
        assert cfg.largest_cells == 80

    def test_convergence_not_doubling(self, test_settings: Settings):
        """Test meshes must double."""
        with pytest.raises(ConfigurationError, match="double"):
            parse_config(["--case", "acoustic_vortex", "--convergence", "20,30"], test_settings)

    def test_convergence_single_level(self, test_settings: Settings):
        """Test a convergence study needs two meshes."""
        with pytest.raises(ConfigurationError, match="at least two"):
            parse_config(["--case", "acoustic_vortex", "--convergence", "20"], test_settings)

    def test_convergence_not_integers(self, test_settings: Settings):
        """Test the mesh list must hold integers."""
        with pytest.raises(ConfigurationError, match="integers"):
            parse_config(["--case", "acoustic_vortex", "--convergence", "a,b"], test_settings)

    def test_both_modes(self, test_settings: Settings):
        """Test a mesh size and a mesh list cannot be combined."""
        with pytest.raises(ConfigurationError, match="not both"):
            parse_config(
                ["--case", "acoustic_vortex", "--n", "20", "--convergence", "20,40"],
                test_settings,
            )

    def test_desk_scale_limit(self, test_settings: Settings):
        """Test meshes beyond desk scale need --large."""
        argv = ["--case", "acoustic_vortex", "--n", "320"]
        with pytest.raises(ConfigurationError, match="desk-scale") as info:
            parse_config(argv, test_settings)
        assert info.value.key == "large"
        assert parse_config([*argv, "--large"], test_settings).large is True

    def test_reproducibility_key(self, test_settings: Settings, tmp_path: Path):
        """Test output location and logging do not enter the reproducibility key."""
        cfg = parse_config(
            ["--case", "acoustic_vortex", "--n", "20", "--out", str(tmp_path), "--threads", "4"],
            test_settings,
        )
        key = cfg.reproducibility_key()
        assert "output_dir" not in key
        assert "threads" not in key
        assert "debug" not in key
        assert key["nx"] == 20

    def test_threads_help_says_recorded_only(self):
        """Test the --threads help states the flag does not change evaluation."""
        help_text = " ".join(build_parser().format_help().split())
        assert "--threads THREADS Recorded in the summary only; has no effect" in help_text


class TestConfigFile:
    """Tests for key=value config files."""

    def test_values_and_case_params(self, tmp_path: Path):
        """Test option keys are converted and case keys collected raw."""
        path = write_config(
            tmp_path,
            "# lake at rest\ncase=swe_lake_at_rest\nn=16\ncfl=0.3\nlarge=yes\n"
            "case.amplitude=0.05\n",
        )
        values, params = read_config_file(path)
        assert values == {"case": "swe_lake_at_rest", "n": 16, "cfl": 0.3, "large": True}
        assert params == {"amplitude": "0.05"}

    def test_flags_override_file(self, test_settings: Settings, tmp_path: Path):
        """Test flags win over file values, file values over settings."""
        path = write_config(tmp_path, "case=swe_lake_at_rest\nn=16\ncfl=0.3\nmax_steps=50\n")
        cfg = parse_config(["--config", str(path), "--cfl", "0.2"], test_settings)
        assert cfg.cfl == pytest.approx(0.2)
        assert cfg.max_steps == 50
        assert cfg.nx == 16
        assert cfg.config_file == str(path)

    def test_flag_params_override_file_params(self, test_settings: Settings, tmp_path: Path):
        """Test --param wins over case. keys in the file."""
        path = write_config(tmp_path, "case=swe_lake_at_rest\ncase.amplitude=0.05\n")
        cfg = parse_config(["--config", str(path), "--param", "amplitude=0.2"], test_settings)
        assert cfg.case_params == {"amplitude": "0.2"}

    def test_unknown_key(self, tmp_path: Path):
        """Test keys that are neither options nor case parameters are rejected."""
        path = write_config(tmp_path, "case=acoustic_vortex\nresolution=20\n")
        with pytest.raises(ConfigurationError, match="Unknown config key") as info:
            read_config_file(path)
        assert info.value.key == "resolution"

    def test_bad_value(self, tmp_path: Path):
        """Test malformed numbers are reported with their key."""
        path = write_config(tmp_path, "n=twenty\n")
        with pytest.raises(ConfigurationError, match="Bad value for 'n'"):
            read_config_file(path)

    def test_bad_choice(self, tmp_path: Path):
        """Test file values obey the same choices as flags."""
        path = write_config(tmp_path, "scheme=weno\n")
        with pytest.raises(ConfigurationError, match="Invalid scheme"):
            read_config_file(path)

    def test_missing_file(self, tmp_path: Path):
        """Test a missing config file is a configuration error."""
        with pytest.raises(ConfigurationError, match="not found"):
            read_config_file(tmp_path / "absent.cfg")

    def test_shipped_configs_parse(self, test_settings: Settings):
        """Test every example config in the repository parses."""
        config_dir = Path(__file__).resolve().parents[2] / "configs"
        paths = sorted(config_dir.glob("*.cfg"))
        assert paths
        for path in paths:
            parse_config(["--config", str(path)], test_settings)
