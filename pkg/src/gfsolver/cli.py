"""Command-line front end."""

import sys
from collections.abc import Sequence

from gfsolver.core.config import get_settings
from gfsolver.core.exceptions import (
    BoundaryError,
    ConfigurationError,
    GFSolverError,
    InadmissibleStateError,
    SolverAbortError,
)
from gfsolver.core.logging import get_logger, setup_from_settings
from gfsolver.tools.convergence import run_convergence
from gfsolver.tools.run import run_single
from gfsolver.utils.config_file import parse_config
from gfsolver.utils.formatters import (
    format_convergence_text,
    format_error,
    format_summary_text,
)

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2
EXIT_ABORT = 3


def exit_code(error: GFSolverError) -> int:
    """Process exit code of an error."""
    if isinstance(error, ConfigurationError | BoundaryError):
        return EXIT_USAGE
    if isinstance(error, SolverAbortError | InadmissibleStateError):
        return EXIT_ABORT
    return EXIT_ERROR


def main(argv: Sequence[str] | None = None) -> int:
    """
    Parse arguments, run a single case or a convergence study and report.

    Results go to stdout; log records and error JSON go to stderr.

    Returns:
        0 on success, 2 for usage errors, 3 when the solver aborted, 1 otherwise
    """
    args = list(sys.argv[1:] if argv is None else argv)
    settings = get_settings()
    setup_from_settings(settings)

    try:
        cfg = parse_config(args, settings)
        if cfg.debug and not settings.debug:
            setup_from_settings(settings, debug=True)
        if cfg.is_convergence:
            result = run_convergence(cfg)
            print(format_convergence_text(result.report))
        else:
            run = run_single(cfg)
            print(format_summary_text(run.summary))
    except GFSolverError as e:
        logger.error("run_failed", code=e.code, error=e.message)
        print(format_error(e), file=sys.stderr)
        return exit_code(e)
    return EXIT_OK
