"""
Structured logging setup and stage timing.
"""

from __future__ import annotations

from collections.abc import Iterator
from contextlib import contextmanager
import logging
import sys
import time
from typing import Any

import structlog


def configure_logging(level: str = "INFO", json_output: bool = False) -> None:
    """
    Configure structlog for the whole process.

    Logs go to stderr so stdout stays free for CSV reports and streams.
    """
    numeric_level = logging.getLevelName(level.upper())
    if not isinstance(numeric_level, int):
        numeric_level = logging.INFO

    renderer: structlog.types.Processor
    if json_output:
        renderer = structlog.processors.JSONRenderer(sort_keys=True)
    else:
        renderer = structlog.dev.ConsoleRenderer(colors=False)

    structlog.configure(
        processors=[
            structlog.contextvars.merge_contextvars,
            structlog.processors.add_log_level,
            structlog.processors.TimeStamper(fmt="iso", utc=True),
            renderer,
        ],
        wrapper_class=structlog.make_filtering_bound_logger(numeric_level),
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
        cache_logger_on_first_use=False,
    )


@contextmanager
def stage_timer(stage: str, **fields: Any) -> Iterator[None]:
    """Log the wall time of a pipeline stage at debug level."""
    started = time.perf_counter()
    try:
        yield
    finally:
        elapsed_ms = (time.perf_counter() - started) * 1000.0
        structlog.get_logger("app.fruc.stages").debug(
            "stage_completed", stage=stage, elapsed_ms=round(elapsed_ms, 3), **fields
        )