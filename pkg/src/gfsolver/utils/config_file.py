"""Command-line and config-file parsing into a validated RunConfig.

Config files hold flat ``key=value`` lines in dotenv syntax. Keys are the long flag names
with ``-`` replaced by ``_`` (``steady_tol=1e-13``); case parameters use a ``case.`` prefix
(``case.u0=1``). Flags override file values, which override the settings defaults.
"""

import argparse
import re
from collections.abc import Callable, Sequence
from pathlib import Path
from typing import Any

from dotenv import dotenv_values
from pydantic import ValidationError

from gfsolver.core.config import Settings, get_settings
from gfsolver.core.exceptions import ConfigurationError
from gfsolver.models.enums import Integrator, Scheme, SourceQuadrature
from gfsolver.models.schemas import RunConfig
from gfsolver.physics.cases import CASE_IDS, parse_case

CASE_PREFIX = "case."


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.replace(" ", "").split(",") if part]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got '{text}'") from e


def _flag(text: str) -> bool:
    value = text.strip().lower()
    if value in ("1", "true", "yes", "on"):
        return True
    if value in ("0", "false", "no", "off", ""):
        return False
    raise argparse.ArgumentTypeError(f"expected a boolean, got '{text}'")


def _key_value(text: str) -> tuple[str, str]:
    key, sep, value = text.partition("=")
    if not sep or not key.strip():
        raise argparse.ArgumentTypeError(f"expected key=value, got '{text}'")
    return key.strip(), value.strip()


# dest -> (converter, help); every dest is also a valid config-file key
OPTIONS: dict[str, tuple[Callable[[str], Any], str]] = {
    "case": (str, "Case id"),
    "scheme": (str, "Spatial scheme: gf, fv1 or fv2"),
    "n": (int, "Cells per direction"),
    "nx": (int, "Cells in x"),
    "ny": (int, "Cells in y"),
    "convergence": (_int_list, "Nested mesh sizes, e.g. 20,40,80"),
    "tfinal": (float, "Final time (case default if unset)"),
    "cfl": (float, "Courant number"),
    "integrator": (str, "Time integrator: euler or rk2"),
    "theta": (float, "Generalized minmod parameter in [1, 2]"),
    "mach": (float, "Target Mach number of the vortex or shear layer"),
    "steady_tol": (float, "Stop at this steady residual (case default if unset)"),
    "max_steps": (int, "Step cap"),
    "source_quadrature": (str, "Bathymetry source for gf: directional or integral"),
    "out": (str, "Output directory"),
    "output_every": (int, "Write a field snapshot every k steps"),
    "threads": (int, "Recorded in the summary only; has no effect on evaluation"),
    "large": (_flag, "Allow meshes beyond desk scale"),
    "debug": (_flag, "Debug console logging"),
}

_CHOICES: dict[str, list[str]] = {
    "case": list(CASE_IDS),
    "scheme": [s.value for s in Scheme],
    "integrator": [i.value for i in Integrator],
    "source_quadrature": [q.value for q in SourceQuadrature],
}


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that raises ConfigurationError instead of exiting."""

    def error(self, message: str) -> None:  # type: ignore[override]
        match = re.match(r"argument ([-\w]+)", message)
        action = self._option_string_actions.get(match.group(1)) if match else None
        raise ConfigurationError(message, key=action.dest if action is not None else None)


def build_parser() -> argparse.ArgumentParser:
    """Argument parser; options left out of the command line are absent from the namespace."""
    parser = _Parser(
        prog="gfsolver",
        description="Global-flux and finite-volume solvers for 2D hyperbolic test cases",
        argument_default=argparse.SUPPRESS,
    )
    for dest, (convert, help_text) in OPTIONS.items():
        flag = "--" + dest.replace("_", "-")
        if convert is _flag:
            parser.add_argument(flag, dest=dest, action="store_true", help=help_text)
        else:
            parser.add_argument(
                flag, dest=dest, type=convert, choices=_CHOICES.get(dest), help=help_text
            )
    parser.add_argument(
        "--param",
        dest="param",
        type=_key_value,
        action="append",
        metavar="KEY=VALUE",
        help="Case parameter override (repeatable)",
    )
    parser.add_argument("--config", dest="config", help="Config file of key=value lines")
    return parser


def read_config_file(path: str | Path) -> tuple[dict[str, Any], dict[str, str]]:
    """
    Read a config file into converted option values and raw case parameters.

    Raises:
        ConfigurationError: Missing file, unknown key or malformed value
    """
    path = Path(path)
    if not path.is_file():
        raise ConfigurationError(f"Config file not found: {path}", key="config")

    values: dict[str, Any] = {}
    params: dict[str, str] = {}
    for key, raw in dotenv_values(path).items():
        text = "" if raw is None else raw
        if key.startswith(CASE_PREFIX):
            params[key[len(CASE_PREFIX) :]] = text
            continue
        if key not in OPTIONS:
            raise ConfigurationError(f"Unknown config key '{key}' in {path}", key=key)
        convert = OPTIONS[key][0]
        try:
            value = convert(text)
        except (ValueError, argparse.ArgumentTypeError) as e:
            raise ConfigurationError(f"Bad value for '{key}' in {path}: {text!r}", key=key) from e
        choices = _CHOICES.get(key)
        if choices is not None and value not in choices:
            raise ConfigurationError(
                f"Invalid {key} '{value}' in {path}. Choose from: {', '.join(choices)}", key=key
            )
        values[key] = value
    return values, params


def parse_config(argv: Sequence[str] | None = None, settings: Settings | None = None) -> RunConfig:
    """
    Merge flags, an optional config file and settings defaults into a RunConfig.

    Args:
        argv: Command-line arguments (without the program name)
        settings: Defaults source (process settings if omitted)

    Returns:
        Validated RunConfig

    Raises:
        ConfigurationError: Unknown or malformed options, unknown case parameters,
            mixed single/convergence modes, or a mesh beyond desk scale without ``--large``

    Example:
        >>> cfg = parse_config(["--case", "acoustic_vortex", "--n", "40", "--tfinal", "1"])
        >>> (cfg.nx, cfg.ny, cfg.t_final)
        (40, 40, 1.0)
    """
    settings = settings or get_settings()
    namespace = vars(build_parser().parse_args(list(argv or [])))

    config_path = namespace.pop("config", None)
    flag_params = dict(namespace.pop("param", None) or [])
    values: dict[str, Any] = {}
    params: dict[str, Any] = {}
    if config_path is not None:
        values, params = read_config_file(config_path)
    values.update(namespace)
    params.update(flag_params)

    if "case" not in values:
        raise ConfigurationError(
            "A case is required (--case or case= in the config file)", key="case"
        )

    n = values.get("n")
    try:
        cfg = RunConfig(
            case=values["case"],
            case_params=params,
            scheme=values.get("scheme", Scheme.GF),
            nx=values.get("nx", n),
            ny=values.get("ny", n),
            convergence=values.get("convergence"),
            t_final=values.get("tfinal"),
            cfl=values.get("cfl", settings.cfl),
            integrator=values.get("integrator", settings.integrator),
            max_steps=values.get("max_steps", settings.max_steps),
            steady_tol=values.get("steady_tol"),
            theta=values.get("theta", settings.theta),
            mach=values.get("mach"),
            source_quadrature=values.get("source_quadrature", SourceQuadrature.DIRECTIONAL),
            output_dir=values.get("out", settings.output_dir),
            output_every=values.get("output_every", 0),
            threads=values.get("threads", 1),
            large=values.get("large", False),
            config_file=str(config_path) if config_path is not None else None,
            debug=values.get("debug", settings.debug),
        )
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(part) for part in first["loc"])
        message = f"Invalid configuration: {where}: {first['msg']}"
        raise ConfigurationError(message, key=where) from e

    # fail at parse time on unknown or malformed case parameters
    case_params = dict(cfg.case_params)
    if cfg.mach is not None:
        case_params.setdefault("mach", cfg.mach)
    parse_case(cfg.case, case_params)

    if cfg.largest_cells > settings.desk_scale_limit and not cfg.large:
        raise ConfigurationError(
            f"{cfg.largest_cells} cells per direction exceeds the desk-scale limit of "
            f"{settings.desk_scale_limit}; pass --large to run it anyway",
            key="large",
        )
    return cfg
