"""
Unilateral motion-compensated interpolation by block splatting.

A forward field is anchored on the previous frame, a backward field on the
next frame. Each anchor block is averaged with the block its vector points at
and the average is splatted halfway along the vector onto the interpolated
frame. Splats may overlap (accumulated, averaged at read time) or leave
pixels uncovered (holes, count 0).
"""

from __future__ import annotations

import numpy as np
import numpy.typing as npt
import structlog

from ..core.error_handling import DimensionMismatchError, MotionFieldError
from ..models import Anchor
from ..motion.block_matching import sample_block
from ..motion.models import MotionField
from ..video.models import Frame, Plane
from .models import (
    AccumulatorFrame,
    PlaneAccumulator,
    check_pair,
    plane_grids,
    stack_planes,
)

logger = structlog.get_logger(__name__)


def half_of(v: int) -> int:
    """Half a vector component, rounded half away from zero."""
    sign = (v > 0) - (v < 0)
    return sign * ((abs(v) + 1) // 2)


def splat_plane(
    source: Plane, target: Plane, vectors: npt.NDArray[np.int32], block: int
) -> PlaneAccumulator:
    """Splat every source block, averaged with its match, halfway along its vector."""
    rows, cols = vectors.shape[:2]
    height, width = source.shape
    if (height, width) != (rows * block, cols * block):
        raise MotionFieldError(
            f"Field of {cols}x{rows} blocks of {block} does not tile a "
            f"{width}x{height} plane"
        )

    acc = PlaneAccumulator(width, height)
    src = source.astype(np.int32)
    for row in range(rows):
        for col in range(cols):
            x, y = col * block, row * block
            dx, dy = int(vectors[row, col, 0]), int(vectors[row, col, 1])
            matched = sample_block(target, (x + dx, y + dy), block, block)
            pair_sums = src[y : y + block, x : x + block] + matched.astype(np.int32)
            acc.splat(pair_sums, x + half_of(dx), y + half_of(dy))
    return acc


def unilateral_mci(f_p: Frame, f_n: Frame, field: MotionField) -> AccumulatorFrame:
    """Splat a forward (previous-anchored) or backward (next-anchored) field."""
    check_pair(f_p, f_n)
    if field.anchor is Anchor.PREVIOUS_FRAME:
        source, target = f_p, f_n
    elif field.anchor is Anchor.NEXT_FRAME:
        source, target = f_n, f_p
    else:
        raise MotionFieldError(
            f"Unilateral compensation needs a forward or backward field, "
            f"got {field.anchor.value}"
        )

    planes = tuple(
        splat_plane(s, t, vectors, block)
        for s, t, (vectors, block) in zip(
            source.planes(), target.planes(), plane_grids(f_p.meta, field), strict=True
        )
    )
    result = AccumulatorFrame(f_p.meta, planes)
    logger.debug(
        "blocks_compensated",
        kind="forward" if field.anchor is Anchor.PREVIOUS_FRAME else "backward",
        blocks=field.rows * field.cols,
        holes=result.hole_count(),
    )
    return result


def merge_unilateral(
    f_f: AccumulatorFrame, f_b: AccumulatorFrame, f_bi: Frame
) -> Frame:
    """
    Joint unilateral frame.

    Pixels covered in both directions take the rounded mean of the two
    resolved values, pixels covered once take that value, and pixels that are
    holes in both directions are filled from the bilateral frame.
    """
    for acc in (f_f, f_b):
        if (acc.width, acc.height, acc.meta.color_mode) != (
            f_bi.width,
            f_bi.height,
            f_bi.meta.color_mode,
        ):
            raise DimensionMismatchError(
                f"Accumulator {acc.width}x{acc.height} does not match bilateral "
                f"frame {f_bi.width}x{f_bi.height}"
            )

    planes: list[npt.NDArray[np.int64]] = []
    for fwd, bwd, bi in zip(f_f.planes, f_b.planes, f_bi.planes(), strict=True):
        has_f = fwd.counts > 0
        has_b = bwd.counts > 0
        value_f, value_b = fwd.resolve(), bwd.resolve()
        merged = np.where(
            has_f & has_b,
            (value_f + value_b + 1) // 2,
            np.where(has_f, value_f, np.where(has_b, value_b, bi)),
        )
        planes.append(merged)

    filled = int((f_f.hole_mask() & f_b.hole_mask()).sum())
    logger.debug("unilateral_merged", bilateral_filled=filled)
    return stack_planes(f_bi.meta, tuple(planes))
