"""
Structured error types for the frame-rate up-conversion engine.

Every failure raised by the package is a FrucError carrying an ErrorContext,
so the CLI can map it to an exit code and the logger can report its category.
"""

from __future__ import annotations

import functools
from collections.abc import Callable
from dataclasses import dataclass, field
from datetime import datetime, timezone
from enum import Enum
from types import TracebackType
from typing import Any, ParamSpec, TypeVar
from uuid import uuid4

import structlog

logger = structlog.get_logger(__name__)

P = ParamSpec("P")
R = TypeVar("R")


class ErrorSeverity(Enum):
    """Error severity levels for categorizing failures."""

    LOW = "low"
    MEDIUM = "medium"
    HIGH = "high"
    CRITICAL = "critical"


class ErrorCategory(Enum):
    """Categories of errors raised by the engine."""

    FORMAT = "format"
    TRUNCATION = "truncation"
    DIMENSION = "dimension"
    CONFIGURATION = "configuration"
    VALIDATION = "validation"
    IO = "io"
    USAGE = "usage"


# Usage-type failures exit 1, stream and file failures exit 2.
_EXIT_CODES: dict[ErrorCategory, int] = {
    ErrorCategory.USAGE: 1,
    ErrorCategory.CONFIGURATION: 1,
    ErrorCategory.VALIDATION: 1,
    ErrorCategory.FORMAT: 2,
    ErrorCategory.TRUNCATION: 2,
    ErrorCategory.DIMENSION: 2,
    ErrorCategory.IO: 2,
}


@dataclass
class ErrorContext:
    """Rich context information for errors."""

    error_id: str = field(default_factory=lambda: str(uuid4()))
    timestamp: datetime = field(default_factory=lambda: datetime.now(timezone.utc))
    category: ErrorCategory = ErrorCategory.VALIDATION
    severity: ErrorSeverity = ErrorSeverity.MEDIUM
    component: str = ""
    operation: str = ""
    metadata: dict[str, Any] = field(default_factory=dict)


class FrucError(Exception):
    """Base exception for all engine errors."""

    category = ErrorCategory.VALIDATION

    def __init__(
        self,
        message: str,
        context: ErrorContext | None = None,
        cause: BaseException | None = None,
    ) -> None:
        super().__init__(message)
        self.message = message
        self.context = context or ErrorContext(category=self.category)
        self.cause = cause

    @property
    def exit_code(self) -> int:
        return _EXIT_CODES[self.context.category]


class StreamFormatError(FrucError):
    """Malformed Y4M signature, header token or frame marker."""

    category = ErrorCategory.FORMAT

    def __init__(self, message: str, offset: int | None = None, **kwargs: Any) -> None:
        context = kwargs.get("context") or ErrorContext(category=self.category)
        if offset is not None:
            context.metadata["offset"] = offset
        super().__init__(message, context, kwargs.get("cause"))
        self.offset = offset


class TruncatedStreamError(FrucError):
    """A frame payload ended before its declared plane sizes were read."""

    category = ErrorCategory.TRUNCATION

    def __init__(
        self, message: str, frame_index: int | None = None, **kwargs: Any
    ) -> None:
        context = kwargs.get("context") or ErrorContext(category=self.category)
        if frame_index is not None:
            context.metadata["frame_index"] = frame_index
        super().__init__(message, context, kwargs.get("cause"))
        self.frame_index = frame_index


class DimensionMismatchError(FrucError):
    """Frames, planes or target sizes disagree."""

    category = ErrorCategory.DIMENSION


class ConfigurationError(FrucError):
    """Invalid engine configuration."""

    category = ErrorCategory.CONFIGURATION

    def __init__(
        self, message: str, config_key: str | None = None, **kwargs: Any
    ) -> None:
        context = kwargs.get("context") or ErrorContext(
            category=self.category, severity=ErrorSeverity.HIGH
        )
        if config_key:
            context.metadata["config_key"] = config_key
        super().__init__(message, context, kwargs.get("cause"))


class MotionFieldError(FrucError):
    """A motion field has the wrong anchor or does not fit the frame grid."""

    category = ErrorCategory.VALIDATION


class SequenceError(FrucError):
    """A sequence operation received too few frames."""

    category = ErrorCategory.VALIDATION


class SynthesisError(FrucError):
    """The synthetic generator was asked for a non-representable frame."""

    category = ErrorCategory.VALIDATION


class error_boundary:  # noqa: N801
    """Decorator/context manager that logs escaping errors with their category."""

    def __init__(self, component: str, operation: str = "") -> None:
        self.component = component
        self.operation = operation

    def __call__(self, func: Callable[P, R]) -> Callable[P, R]:
        @functools.wraps(func)
        def wrapper(*args: P.args, **kwargs: P.kwargs) -> R:
            with self:
                return func(*args, **kwargs)

        return wrapper

    def __enter__(self) -> error_boundary:
        return self

    def __exit__(
        self,
        exc_type: type[BaseException] | None,
        exc_val: BaseException | None,
        exc_tb: TracebackType | None,
    ) -> bool:
        if exc_val is None:
            return False

        if isinstance(exc_val, FrucError):
            exc_val.context.component = exc_val.context.component or self.component
            exc_val.context.operation = exc_val.context.operation or self.operation
            logger.warning(
                "operation_failed",
                component=self.component,
                operation=self.operation,
                error_id=exc_val.context.error_id,
                category=exc_val.context.category.value,
                error_message=exc_val.message,
                **exc_val.context.metadata,
            )
        else:
            logger.error(
                "operation_failed",
                component=self.component,
                operation=self.operation,
                error_type=type(exc_val).__name__,
                error_message=str(exc_val),
            )
        return False
