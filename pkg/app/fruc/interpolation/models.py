"""
Intermediate products of the interpolation chain.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from ..core.error_handling import DimensionMismatchError
from ..models import InterpolationMode
from ..motion.models import MotionField
from ..video.models import Frame, Plane, SequenceMeta


class PlaneAccumulator:
    """
    Per-pixel splat accumulator for one plane.

    Each splat contributes the average of two samples, ½(a + b). The exact
    doubled value a + b is stored so the accumulator stays integral; `sums`
    exposes the undoubled view. A pixel with count 0 is a hole.
    """

    def __init__(self, width: int, height: int) -> None:
        self.width = width
        self.height = height
        self.doubled_sums: npt.NDArray[np.int64] = np.zeros((height, width), np.int64)
        self.counts: npt.NDArray[np.int32] = np.zeros((height, width), np.int32)

    @property
    def sums(self) -> npt.NDArray[np.float64]:
        return self.doubled_sums / 2.0

    def splat(self, pair_sums: npt.NDArray[np.int32], x: int, y: int) -> None:
        """Add a block of a + b pair sums with its top-left at (x, y), clipped."""
        block_h, block_w = pair_sums.shape
        x0, y0 = max(x, 0), max(y, 0)
        x1, y1 = min(x + block_w, self.width), min(y + block_h, self.height)
        if x0 >= x1 or y0 >= y1:
            return
        self.doubled_sums[y0:y1, x0:x1] += pair_sums[y0 - y : y1 - y, x0 - x : x1 - x]
        self.counts[y0:y1, x0:x1] += 1

    def hole_mask(self) -> npt.NDArray[np.bool_]:
        return self.counts == 0

    def resolve(self) -> npt.NDArray[np.int64]:
        """Rounded mean of the overlapping splats (ties up); 0 at holes."""
        counts = self.counts.astype(np.int64)
        safe = np.maximum(counts, 1)
        values = (self.doubled_sums + safe) // (2 * safe)
        return np.where(counts > 0, values, 0)


@dataclass
class AccumulatorFrame:
    """Unilateral interpolation result: one accumulator per plane."""

    meta: SequenceMeta
    planes: tuple[PlaneAccumulator, ...]

    def __post_init__(self) -> None:
        expected = 3 if self.meta.has_chroma else 1
        if len(self.planes) != expected:
            raise DimensionMismatchError(
                f"Expected {expected} accumulator planes, got {len(self.planes)}"
            )

    @property
    def width(self) -> int:
        return self.meta.width

    @property
    def height(self) -> int:
        return self.meta.height

    @property
    def sums(self) -> npt.NDArray[np.float64]:
        return self.planes[0].sums

    @property
    def counts(self) -> npt.NDArray[np.int32]:
        return self.planes[0].counts

    def hole_mask(self) -> npt.NDArray[np.bool_]:
        """Luma holes."""
        return self.planes[0].hole_mask()

    def hole_count(self) -> int:
        return int(self.hole_mask().sum())

    def resolved_planes(self) -> tuple[npt.NDArray[np.int64], ...]:
        return tuple(acc.resolve() for acc in self.planes)


@dataclass(frozen=True)
class HoleStats:
    """Luma hole counts at each stage of the unilateral merge."""

    forward_holes: int
    backward_holes: int
    shared_holes: int
    merged_holes: int
    total_pixels: int

    @property
    def forward_ratio(self) -> float:
        return self.forward_holes / self.total_pixels if self.total_pixels else 0.0

    @property
    def shared_ratio(self) -> float:
        return self.shared_holes / self.total_pixels if self.total_pixels else 0.0


@dataclass(frozen=True)
class InterpolationSet:
    """Every frame the chain builds for one pair, on the padded grid."""

    f_bi: Frame
    f_f: AccumulatorFrame
    f_b: AccumulatorFrame
    f_i: Frame
    f_u: Frame
    block_costs: npt.NDArray[np.int64]
    bilateral_field: MotionField
    smoothed_field: MotionField
    forward_field: MotionField
    backward_field: MotionField

    def result(self, mode: InterpolationMode) -> Frame:
        """The padded output of `mode`."""
        if mode is InterpolationMode.BILATERAL:
            return self.f_bi
        if mode is InterpolationMode.UNILATERAL:
            return self.f_i
        return self.f_u

    def hole_stats(self) -> HoleStats:
        forward = self.f_f.hole_mask()
        backward = self.f_b.hole_mask()
        return HoleStats(
            forward_holes=int(forward.sum()),
            backward_holes=int(backward.sum()),
            shared_holes=int((forward & backward).sum()),
            merged_holes=0,
            total_pixels=int(forward.size),
        )


def stack_planes(meta: SequenceMeta, planes: tuple[npt.ArrayLike, ...]) -> Frame:
    """Frame from computed planes already in [0, 255]."""
    converted: list[Plane] = [np.asarray(p).astype(np.uint8) for p in planes]
    return Frame(meta, *converted)


def chroma_vectors(vectors: npt.NDArray[np.int32]) -> npt.NDArray[np.int32]:
    """Luma vectors halved toward zero for the 4:2:0 chroma grid."""
    return (np.sign(vectors) * (np.abs(vectors) // 2)).astype(np.int32)


def plane_grids(
    meta: SequenceMeta, field: MotionField
) -> list[tuple[npt.NDArray[np.int32], int]]:
    """(vectors, block size) for every plane of a frame, luma first."""
    grids = [(np.asarray(field.vectors), field.block_size)]
    if meta.has_chroma:
        if field.block_size % 2:
            raise DimensionMismatchError(
                f"4:2:0 compensation needs an even block size, got {field.block_size}"
            )
        half = (chroma_vectors(field.vectors), field.block_size // 2)
        grids.extend([half, half])
    return grids


def check_pair(f_p: Frame, f_n: Frame) -> None:
    if not f_p.same_layout(f_n):
        raise DimensionMismatchError(
            f"Reference frames differ: {f_p.width}x{f_p.height} "
            f"{f_p.meta.color_mode.value} vs {f_n.width}x{f_n.height} "
            f"{f_n.meta.color_mode.value}"
        )
