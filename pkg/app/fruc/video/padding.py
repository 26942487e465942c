"""
Block-grid alignment: edge-replicating pad and its inverse crop.
"""

from __future__ import annotations

import numpy as np

from ..core.error_handling import DimensionMismatchError
from .models import Frame, Plane


def aligned_size(size: int, multiple: int) -> int:
    """Smallest multiple of `multiple` that is >= size."""
    return -(-size // multiple) * multiple


def _pad_plane(plane: Plane, height: int, width: int) -> Plane:
    extra_h = height - plane.shape[0]
    extra_w = width - plane.shape[1]
    if extra_h == 0 and extra_w == 0:
        return plane
    return np.pad(plane, ((0, extra_h), (0, extra_w)), mode="edge")


def pad_to_multiple(frame: Frame, n: int) -> Frame:
    """
    Grow the frame to the next multiple of n in each dimension.

    Added samples replicate the nearest edge sample; the original region is
    unchanged. For 4:2:0 frames the target is also kept even so chroma stays
    exactly half size.
    """
    if n < 1:
        raise DimensionMismatchError(f"Block size must be >= 1, got {n}")

    multiple = n if not frame.meta.has_chroma or n % 2 == 0 else 2 * n
    width = aligned_size(frame.width, multiple)
    height = aligned_size(frame.height, multiple)
    if (width, height) == (frame.width, frame.height):
        return frame

    meta = frame.meta.with_size(width, height)
    planes = [_pad_plane(frame.luma, height, width)]
    if frame.chroma_u is not None and frame.chroma_v is not None:
        planes.append(_pad_plane(frame.chroma_u, height // 2, width // 2))
        planes.append(_pad_plane(frame.chroma_v, height // 2, width // 2))
    return Frame(meta, *planes)


def crop(frame: Frame, width: int, height: int) -> Frame:
    """Keep the top-left width x height region."""
    if width > frame.width or height > frame.height:
        raise DimensionMismatchError(
            f"Cannot crop {frame.width}x{frame.height} to {width}x{height}"
        )
    if (width, height) == (frame.width, frame.height):
        return frame

    meta = frame.meta.with_size(width, height)
    planes = [frame.luma[:height, :width]]
    if frame.chroma_u is not None and frame.chroma_v is not None:
        planes.append(frame.chroma_u[: height // 2, : width // 2])
        planes.append(frame.chroma_v[: height // 2, : width // 2])
    return Frame(meta, *planes)
