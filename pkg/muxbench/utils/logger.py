"""
Structured logging for the command line.

Records go to stderr so tables and paths written to stdout stay machine-readable.
The running subcommand is bound as context and appears on every record.
"""
import logging
import sys
from typing import Any, List, Optional

import structlog
from structlog.stdlib import LoggerFactory
from structlog.typing import Processor

from muxbench.config import settings

# chatty third-party loggers, kept at WARNING unless debugging
QUIET_LOGGERS = ("matplotlib", "PIL", "numexpr")


def _processors(console: bool) -> List[Processor]:
    renderer: Processor = structlog.dev.ConsoleRenderer() if console else structlog.processors.JSONRenderer()
    return [
        structlog.contextvars.merge_contextvars,
        structlog.stdlib.filter_by_level,
        structlog.stdlib.add_logger_name,
        structlog.stdlib.add_log_level,
        structlog.processors.TimeStamper(fmt="iso"),
        structlog.processors.format_exc_info,
        structlog.processors.CallsiteParameterAdder(
            parameters=[structlog.processors.CallsiteParameter.FUNC_NAME]
        ),
        structlog.processors.EventRenamer("message"),
        renderer,
    ]


def setup_logging(level: Optional[str] = None) -> None:
    """Configure structlog on top of the stdlib root logger.

    Args:
        level: Level name; defaults to MUXBENCH_LOG_LEVEL
    """
    level_name = (level or settings.LOG_LEVEL).upper()
    logging.basicConfig(format="%(message)s", stream=sys.stderr, level=level_name, force=True)
    for name in QUIET_LOGGERS:
        logging.getLogger(name).setLevel(logging.DEBUG if level_name == "DEBUG" else logging.WARNING)

    structlog.configure(
        processors=_processors(console=settings.DEBUG or not settings.LOG_JSON),
        context_class=dict,
        logger_factory=LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=True,
    )


def bind_run(command: str, **context: Any) -> None:
    """Attach the subcommand (and any extra keys) to all later records."""
    structlog.contextvars.clear_contextvars()
    structlog.contextvars.bind_contextvars(command=command, **context)
