"""Ambient services shared by every stage: errors, logging, timing."""

from .error_handling import (
    ConfigurationError,
    DimensionMismatchError,
    ErrorCategory,
    ErrorContext,
    ErrorSeverity,
    FrucError,
    MotionFieldError,
    SequenceError,
    StreamFormatError,
    SynthesisError,
    TruncatedStreamError,
    error_boundary,
)
from .observability import configure_logging, stage_timer

__all__ = [
    "ConfigurationError",
    "DimensionMismatchError",
    "ErrorCategory",
    "ErrorContext",
    "ErrorSeverity",
    "FrucError",
    "MotionFieldError",
    "SequenceError",
    "StreamFormatError",
    "SynthesisError",
    "TruncatedStreamError",
    "configure_logging",
    "error_boundary",
    "stage_timer",
]
