"""
Headerless planar YUV (I420 or luma-only) reading and writing.

Dimensions, layout and frame rate come from the caller; the stream is a plain
concatenation of frames.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from typing import BinaryIO

import structlog

from ..core.error_handling import TruncatedStreamError
from ..models import ColorMode
from .models import Frame, SequenceMeta
from .y4m import read_exact

logger = structlog.get_logger(__name__)


def read_raw_yuv(
    stream: BinaryIO,
    width: int,
    height: int,
    color_mode: ColorMode = ColorMode.YUV420,
    frame_rate: tuple[int, int] = (30, 1),
) -> Iterator[Frame]:
    """Yield frames in stored order; a trailing partial frame is an error."""
    meta = SequenceMeta(
        width=width,
        height=height,
        rate_num=frame_rate[0],
        rate_den=frame_rate[1],
        color_mode=ColorMode(color_mode),
    )
    return _iter_raw(stream, meta)


def _iter_raw(stream: BinaryIO, meta: SequenceMeta) -> Iterator[Frame]:
    index = 0
    while True:
        payload = read_exact(stream, meta.frame_bytes)
        if not payload:
            return
        if len(payload) != meta.frame_bytes:
            raise TruncatedStreamError(
                f"Raw frame {index} truncated: got {len(payload)} of "
                f"{meta.frame_bytes} bytes",
                frame_index=index,
            )
        yield Frame.from_bytes(meta, payload)
        index += 1


def write_raw_yuv(frames: Iterable[Frame], sink: BinaryIO) -> int:
    """Write frames back to back and return how many were written."""
    count = 0
    for frame in frames:
        sink.write(frame.to_bytes())
        count += 1
    logger.debug("raw_yuv_written", frames=count)
    return count
