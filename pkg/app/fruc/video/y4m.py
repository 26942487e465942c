"""
YUV4MPEG2 stream parsing and writing.

Supported subset: 8-bit planar 4:2:0 (C420, C420jpeg, C420paeg, or no C tag)
and luma-only (Cmono). Interlace, aspect and X-parameters are carried through
untouched; frame-marker parameters are accepted and dropped.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from typing import BinaryIO

import structlog

from ..core.error_handling import (
    DimensionMismatchError,
    StreamFormatError,
    TruncatedStreamError,
)
from ..models import ColorMode
from .models import Frame, SequenceMeta

logger = structlog.get_logger(__name__)

SIGNATURE = b"YUV4MPEG2"
FRAME_MARKER = b"FRAME"
MAX_HEADER_BYTES = 4096

_COLORSPACES = {
    "420": ColorMode.YUV420,
    "420jpeg": ColorMode.YUV420,
    "420paeg": ColorMode.YUV420,
    "mono": ColorMode.LUMA_ONLY,
}


def read_exact(stream: BinaryIO, size: int) -> bytes:
    """Read up to size bytes, retrying short reads from pipes."""
    chunks: list[bytes] = []
    remaining = size
    while remaining > 0:
        chunk = stream.read(remaining)
        if not chunk:
            break
        chunks.append(chunk)
        remaining -= len(chunk)
    return b"".join(chunks)


def _parse_int(token: str, offset: int) -> int:
    try:
        value = int(token[1:])
    except ValueError as e:
        raise StreamFormatError(
            f"Malformed Y4M parameter {token!r} at byte {offset}", offset=offset
        ) from e
    if value < 1:
        raise StreamFormatError(
            f"Y4M parameter {token!r} must be positive (byte {offset})", offset=offset
        )
    return value


def _parse_rate(token: str, offset: int) -> tuple[int, int]:
    num, sep, den = token[1:].partition(":")
    if not sep or not num.isdigit() or not den.isdigit():
        raise StreamFormatError(
            f"Malformed Y4M frame rate {token!r} at byte {offset}", offset=offset
        )
    rate_num, rate_den = int(num), int(den)
    if rate_den == 0:
        # F0:0 means "unknown"; keep the stream usable with a nominal rate.
        rate_num, rate_den = 30, 1
    return rate_num, rate_den


def _check_signature(line: bytes) -> None:
    for i, expected in enumerate(SIGNATURE):
        if i >= len(line) or line[i] != expected:
            raise StreamFormatError(
                f"Missing YUV4MPEG2 signature: unexpected byte at offset {i}",
                offset=i,
            )
    if len(line) <= len(SIGNATURE) or line[len(SIGNATURE)] not in b" \n":
        raise StreamFormatError(
            f"Missing YUV4MPEG2 signature: unexpected byte at offset {len(SIGNATURE)}",
            offset=len(SIGNATURE),
        )


def parse_header(line: bytes) -> SequenceMeta:
    """Decode a complete header line (newline included) into SequenceMeta."""
    _check_signature(line)

    width: int | None = None
    height: int | None = None
    rate = (30, 1)
    color_mode = ColorMode.YUV420
    tags: list[str] = []

    offset = len(SIGNATURE) + 1
    for raw in line[len(SIGNATURE) + 1 : -1].split(b" "):
        token_offset = offset
        offset += len(raw) + 1
        if not raw:
            continue
        try:
            token = raw.decode("ascii")
        except UnicodeDecodeError as e:
            raise StreamFormatError(
                f"Non-ASCII Y4M header token at byte {token_offset}",
                offset=token_offset,
            ) from e

        key = token[0]
        if key == "W":
            width = _parse_int(token, token_offset)
        elif key == "H":
            height = _parse_int(token, token_offset)
        elif key == "F":
            rate = _parse_rate(token, token_offset)
        elif key == "C":
            if token[1:] not in _COLORSPACES:
                raise StreamFormatError(
                    f"Unsupported Y4M colorspace {token!r} at byte {token_offset}",
                    offset=token_offset,
                )
            color_mode = _COLORSPACES[token[1:]]
            tags.append(token)
        elif key in "IAX":
            tags.append(token)
        else:
            raise StreamFormatError(
                f"Unknown Y4M header token {token!r} at byte {token_offset}",
                offset=token_offset,
            )

    if width is None or height is None:
        raise StreamFormatError(
            "Y4M header lacks W or H parameter", offset=len(line) - 1
        )

    return SequenceMeta(
        width=width,
        height=height,
        rate_num=rate[0],
        rate_den=rate[1],
        color_mode=color_mode,
        header_tags=tuple(tags),
    )


def _iter_frames(
    stream: BinaryIO, meta: SequenceMeta, start_offset: int
) -> Iterator[Frame]:
    offset = start_offset
    index = 0
    while True:
        marker = stream.readline(MAX_HEADER_BYTES)
        if not marker:
            return
        if not marker.startswith(FRAME_MARKER) or marker[5:6] not in (
            b" ",
            b"\n",
            b"",
        ):
            raise StreamFormatError(
                f"Expected FRAME marker at byte {offset} (frame {index})",
                offset=offset,
            )
        if not marker.endswith(b"\n"):
            raise TruncatedStreamError(
                f"Frame {index} marker is not newline-terminated", frame_index=index
            )
        offset += len(marker)

        payload = read_exact(stream, meta.frame_bytes)
        if len(payload) != meta.frame_bytes:
            raise TruncatedStreamError(
                f"Frame {index} truncated: got {len(payload)} of "
                f"{meta.frame_bytes} bytes",
                frame_index=index,
            )
        offset += len(payload)
        yield Frame.from_bytes(meta, payload)
        index += 1


def parse_y4m(stream: BinaryIO) -> tuple[SequenceMeta, Iterator[Frame]]:
    """
    Parse the stream header eagerly and return a lazy frame iterator.

    The iterator raises StreamFormatError on a bad frame marker and
    TruncatedStreamError when a payload ends early.
    """
    line = stream.readline(MAX_HEADER_BYTES)
    if not line.endswith(b"\n"):
        _check_signature(line)
        raise StreamFormatError(
            f"Y4M header is not newline-terminated (byte {len(line)})",
            offset=len(line),
        )

    meta = parse_header(line)
    logger.debug(
        "y4m_header_parsed",
        width=meta.width,
        height=meta.height,
        rate=f"{meta.rate_num}:{meta.rate_den}",
        color_mode=meta.color_mode.value,
    )
    return meta, _iter_frames(stream, meta, len(line))


def format_header(meta: SequenceMeta) -> bytes:
    """Render the header line; W/H/F first, then the carried-over tags."""
    tags = list(meta.header_tags)
    color_tags = [t for t in tags if t.startswith("C")]
    declared = _COLORSPACES.get(color_tags[0][1:]) if color_tags else ColorMode.YUV420
    if declared is not meta.color_mode:
        tags = [t for t in tags if not t.startswith("C")]
        tags.append("Cmono" if meta.color_mode is ColorMode.LUMA_ONLY else "C420jpeg")

    parts = [
        SIGNATURE.decode("ascii"),
        f"W{meta.width}",
        f"H{meta.height}",
        f"F{meta.rate_num}:{meta.rate_den}",
        *tags,
    ]
    return (" ".join(parts) + "\n").encode("ascii")


def write_y4m(meta: SequenceMeta, frames: Iterable[Frame], sink: BinaryIO) -> int:
    """
    Write a complete Y4M stream and return the number of frames written.

    Every frame is checked against meta before the first byte goes out.
    """
    pending = list(frames)
    for index, frame in enumerate(pending):
        if (frame.width, frame.height, frame.meta.color_mode) != (
            meta.width,
            meta.height,
            meta.color_mode,
        ):
            raise DimensionMismatchError(
                f"Frame {index} is {frame.width}x{frame.height} "
                f"{frame.meta.color_mode.value}, stream is {meta.width}x{meta.height} "
                f"{meta.color_mode.value}"
            )

    sink.write(format_header(meta))
    for frame in pending:
        sink.write(FRAME_MARKER + b"\n")
        sink.write(frame.to_bytes())
    logger.debug("y4m_written", frames=len(pending), width=meta.width)
    return len(pending)
