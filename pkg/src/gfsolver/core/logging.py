"""Run logging: structlog events on stderr, JSON records or a console view."""

import logging
import sys
from typing import TYPE_CHECKING, Any

import structlog

if TYPE_CHECKING:
    from gfsolver.core.config import Settings


def _stderr_logger(*_args: Any) -> structlog.PrintLogger:
    # looked up per logger so a redirected sys.stderr is honoured
    return structlog.PrintLogger(file=sys.stderr)


def setup_logging(debug: bool = False, log_level: str = "INFO") -> None:
    """
    Send solver events to stderr.

    Every record carries the bound run context (case, scheme, config hash), its level and
    an ISO timestamp. Archived runs get one JSON object per line; ``debug`` switches to the
    coloured console renderer. Unknown level names fall back to INFO.
    """
    level = logging.getLevelName(log_level.upper())
    if not isinstance(level, int):
        level = logging.INFO

    if debug:
        tail: list[Any] = [structlog.dev.ConsoleRenderer(colors=True)]
    else:
        tail = [structlog.processors.format_exc_info, structlog.processors.JSONRenderer()]

    structlog.configure(
        processors=[
            structlog.contextvars.merge_contextvars,
            structlog.stdlib.add_log_level,
            structlog.processors.TimeStamper(fmt="iso"),
            *tail,
        ],
        wrapper_class=structlog.make_filtering_bound_logger(level),
        context_class=dict,
        logger_factory=_stderr_logger,
        cache_logger_on_first_use=False,
    )


def setup_from_settings(settings: "Settings", debug: bool | None = None) -> None:
    """Configure logging from a Settings instance, optionally forcing debug output."""
    setup_logging(
        debug=settings.debug if debug is None else debug,
        log_level=settings.log_level,
    )


def get_logger(name: str | None = None) -> structlog.BoundLogger:
    return structlog.get_logger(name)


def bind_context(**kwargs: Any) -> None:
    """Bind run-level context to every following record."""
    structlog.contextvars.bind_contextvars(**kwargs)


def clear_context() -> None:
    structlog.contextvars.clear_contextvars()
