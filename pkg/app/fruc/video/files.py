"""
Path-level helpers: pick the container from the file suffix.
"""

from __future__ import annotations

from collections.abc import Sequence
from pathlib import Path
import re

import structlog

from ..core.error_handling import ErrorCategory, ErrorContext, FrucError
from ..models import ColorMode
from .models import Frame, SequenceMeta
from .raw_yuv import read_raw_yuv, write_raw_yuv
from .y4m import parse_y4m, write_y4m

logger = structlog.get_logger(__name__)

_SIZE_RE = re.compile(r"^(\d+)[xX](\d+)$")
_RATE_RE = re.compile(r"^(\d+)(?::(\d+))?$")


def _io_error(message: str, path: Path, cause: OSError) -> FrucError:
    context = ErrorContext(category=ErrorCategory.IO, metadata={"path": str(path)})
    return FrucError(f"{message} {path}: {cause.strerror or cause}", context, cause)


def parse_raw_size(text: str) -> tuple[int, int]:
    """Parse 'WxH' into (width, height)."""
    match = _SIZE_RE.match(text.strip())
    if not match:
        raise FrucError(
            f"Expected WxH, got {text!r}",
            ErrorContext(category=ErrorCategory.USAGE),
        )
    return int(match.group(1)), int(match.group(2))


def parse_rate(text: str) -> tuple[int, int]:
    """Parse 'N' or 'N:D' into a (num, den) pair."""
    match = _RATE_RE.match(text.strip())
    if not match or int(match.group(2) or 1) == 0:
        raise FrucError(
            f"Expected N or N:D frame rate, got {text!r}",
            ErrorContext(category=ErrorCategory.USAGE),
        )
    return int(match.group(1)), int(match.group(2) or 1)


def is_y4m(path: Path) -> bool:
    return path.suffix.lower() == ".y4m"


def load_sequence(
    path: Path,
    raw_size: tuple[int, int] | None = None,
    color_mode: ColorMode = ColorMode.YUV420,
    frame_rate: tuple[int, int] = (30, 1),
    limit: int | None = None,
) -> tuple[SequenceMeta, list[Frame]]:
    """
    Read a whole sequence into memory.

    `.y4m` files carry their own header; anything else is raw planar YUV and
    needs raw_size. `limit` keeps only the first frames.
    """
    try:
        with path.open("rb") as fh:
            if raw_size is None:
                if not is_y4m(path):
                    raise FrucError(
                        f"{path} is not a .y4m file; pass the raw frame size",
                        ErrorContext(category=ErrorCategory.USAGE),
                    )
                meta, iterator = parse_y4m(fh)
            else:
                iterator = read_raw_yuv(
                    fh, raw_size[0], raw_size[1], color_mode, frame_rate
                )
                meta = SequenceMeta(
                    width=raw_size[0],
                    height=raw_size[1],
                    rate_num=frame_rate[0],
                    rate_den=frame_rate[1],
                    color_mode=color_mode,
                )
            frames: list[Frame] = []
            for frame in iterator:
                if limit is not None and len(frames) >= limit:
                    break
                frames.append(frame)
    except OSError as e:
        raise _io_error("Cannot read", path, e) from e

    meta = meta.with_frame_count(len(frames))
    logger.info(
        "sequence_loaded",
        path=str(path),
        frames=len(frames),
        width=meta.width,
        height=meta.height,
    )
    return meta, frames


def save_sequence(path: Path, meta: SequenceMeta, frames: Sequence[Frame]) -> None:
    """Write frames as Y4M or raw YUV depending on the suffix."""
    try:
        with path.open("wb") as fh:
            if is_y4m(path):
                write_y4m(meta, frames, fh)
            else:
                write_raw_yuv(frames, fh)
    except OSError as e:
        raise _io_error("Cannot write", path, e) from e
    logger.info("sequence_saved", path=str(path), frames=len(frames))
