"""
Sequence metadata and immutable frame values.

A Frame holds 8-bit planes as read-only numpy arrays of shape (height, width);
chroma planes exist exactly when the sequence is 4:2:0.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np
import numpy.typing as npt

from ..core.error_handling import DimensionMismatchError
from ..models import ColorMode

Plane = npt.NDArray[np.uint8]


@dataclass(frozen=True)
class SequenceMeta:
    """Stream-level description shared by every frame of a sequence."""

    width: int
    height: int
    rate_num: int = 30
    rate_den: int = 1
    color_mode: ColorMode = ColorMode.YUV420
    frame_count: int | None = None
    # Y4M tokens other than W/H/F (interlace, aspect, colorspace, X-params).
    header_tags: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        if self.width < 1 or self.height < 1:
            raise DimensionMismatchError(
                f"Frame dimensions must be positive, got {self.width}x{self.height}"
            )
        if self.color_mode is ColorMode.YUV420 and (self.width % 2 or self.height % 2):
            raise DimensionMismatchError(
                f"4:2:0 sequences need even dimensions, got {self.width}x{self.height}"
            )
        if self.rate_num < 0 or self.rate_den < 1:
            raise DimensionMismatchError(
                f"Invalid frame rate {self.rate_num}:{self.rate_den}"
            )
        if self.frame_count is not None and self.frame_count < 0:
            raise DimensionMismatchError(f"Negative frame count {self.frame_count}")

    @property
    def frame_rate(self) -> Fraction:
        return Fraction(self.rate_num, self.rate_den)

    @property
    def has_chroma(self) -> bool:
        return self.color_mode is ColorMode.YUV420

    @property
    def luma_size(self) -> int:
        return self.width * self.height

    @property
    def chroma_shape(self) -> tuple[int, int]:
        return self.height // 2, self.width // 2

    @property
    def chroma_size(self) -> int:
        return (self.width // 2) * (self.height // 2) if self.has_chroma else 0

    @property
    def frame_bytes(self) -> int:
        return self.luma_size + 2 * self.chroma_size

    def with_size(self, width: int, height: int) -> SequenceMeta:
        return replace(self, width=width, height=height)

    def with_doubled_rate(self) -> SequenceMeta:
        return replace(self, rate_num=self.rate_num * 2)

    def with_frame_count(self, frame_count: int | None) -> SequenceMeta:
        return replace(self, frame_count=frame_count)


def _freeze(plane: npt.ArrayLike, shape: tuple[int, int], name: str) -> Plane:
    arr = np.asarray(plane)
    if arr.shape != shape:
        raise DimensionMismatchError(
            f"{name} plane has shape {arr.shape}, expected {shape}"
        )
    if arr.dtype != np.uint8:
        if arr.size and (arr.min() < 0 or arr.max() > 255):
            raise DimensionMismatchError(f"{name} samples outside [0, 255]")
        arr = arr.astype(np.uint8)
    elif arr.flags.writeable:
        arr = arr.copy()
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class Frame:
    """One decoded picture; planes are immutable once constructed."""

    meta: SequenceMeta
    luma: Plane
    chroma_u: Plane | None = None
    chroma_v: Plane | None = None

    def __post_init__(self) -> None:
        luma_shape = (self.meta.height, self.meta.width)
        object.__setattr__(self, "luma", _freeze(self.luma, luma_shape, "luma"))

        has_u = self.chroma_u is not None
        has_v = self.chroma_v is not None
        if has_u != has_v or has_u != self.meta.has_chroma:
            raise DimensionMismatchError(
                f"Chroma planes must be present iff color mode is yuv420 "
                f"(mode={self.meta.color_mode.value})"
            )
        if self.chroma_u is not None and self.chroma_v is not None:
            shape = self.meta.chroma_shape
            object.__setattr__(self, "chroma_u", _freeze(self.chroma_u, shape, "U"))
            object.__setattr__(self, "chroma_v", _freeze(self.chroma_v, shape, "V"))

    __hash__ = None  # type: ignore[assignment]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Frame):
            return NotImplemented
        if (self.meta.width, self.meta.height, self.meta.color_mode) != (
            other.meta.width,
            other.meta.height,
            other.meta.color_mode,
        ):
            return False
        return all(
            np.array_equal(a, b)
            for a, b in zip(self.planes(), other.planes(), strict=True)
        )

    @property
    def width(self) -> int:
        return self.meta.width

    @property
    def height(self) -> int:
        return self.meta.height

    def planes(self) -> tuple[Plane, ...]:
        """Y, then U and V when present."""
        if self.chroma_u is None or self.chroma_v is None:
            return (self.luma,)
        return (self.luma, self.chroma_u, self.chroma_v)

    def with_planes(self, planes: tuple[npt.ArrayLike, ...]) -> Frame:
        """Build a frame of the same layout from replacement planes."""
        if len(planes) == 1:
            return Frame(self.meta, planes[0])
        return Frame(self.meta, planes[0], planes[1], planes[2])

    def with_meta(self, meta: SequenceMeta) -> Frame:
        return Frame(meta, self.luma, self.chroma_u, self.chroma_v)

    def same_layout(self, other: Frame) -> bool:
        return (self.width, self.height, self.meta.color_mode) == (
            other.width,
            other.height,
            other.meta.color_mode,
        )

    def to_bytes(self) -> bytes:
        return b"".join(plane.tobytes() for plane in self.planes())

    @classmethod
    def from_bytes(cls, meta: SequenceMeta, payload: bytes) -> Frame:
        """Decode one planar frame payload of exactly meta.frame_bytes bytes."""
        if len(payload) != meta.frame_bytes:
            raise DimensionMismatchError(
                f"Frame payload is {len(payload)} bytes, expected {meta.frame_bytes}"
            )
        data = np.frombuffer(payload, dtype=np.uint8)
        luma = data[: meta.luma_size].reshape(meta.height, meta.width)
        if not meta.has_chroma:
            return cls(meta, luma)
        c = meta.chroma_size
        u = data[meta.luma_size : meta.luma_size + c].reshape(meta.chroma_shape)
        v = data[meta.luma_size + c :].reshape(meta.chroma_shape)
        return cls(meta, luma, u, v)
