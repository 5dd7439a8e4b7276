"""
Structured logging configuration for dfrac.

Provides a pre-configured structlog logger; library code logs key/value
events through it and never prints. The command line calls
:func:`configure_logging` to route events to stderr with a level filter, so
that stdout carries nothing but the command's output.
"""

import logging
import sys
from typing import Any

import structlog

logger: structlog.stdlib.BoundLogger = structlog.get_logger("dfrac")
"""Pre-configured structured logger for the dfrac package."""


def _stderr_logger(*args: Any) -> structlog.PrintLogger:
    """Print logger bound to the current ``sys.stderr``."""
    return structlog.PrintLogger(file=sys.stderr)


def configure_logging(level: str = "WARNING") -> None:
    """
    Send dfrac events to stderr, dropping those below ``level``.

    Args:
        level: Standard logging level name
    """
    structlog.configure(
        processors=[
            structlog.processors.add_log_level,
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.dev.ConsoleRenderer(colors=False),
        ],
        wrapper_class=structlog.make_filtering_bound_logger(
            logging.getLevelName(level.upper())
        ),
        logger_factory=_stderr_logger,
        cache_logger_on_first_use=False,
    )
