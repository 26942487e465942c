"""
Bilateral motion-compensated interpolation and overlapped block compensation.

Every pixel of the interpolated frame averages a sample of the previous frame
displaced by +mv and a sample of the next frame displaced by -mv, where mv is
the symmetric vector of the block the pixel falls in.

With OBMC each block is enlarged by `margin` pixels on every side. A pixel in
a block's interior is covered by that block alone, a pixel in an edge strip
by the block and one side neighbour, a pixel in a corner by the block and
three neighbours. All covering predictions are weighted equally; neighbours
that fall outside the block grid are dropped and the rest renormalized.

Also home to the two non-compensated baselines (repeat and average).
"""

from __future__ import annotations

import numpy as np
import numpy.typing as npt
import structlog

from ..core.error_handling import MotionFieldError
from ..models import Anchor
from ..motion.models import MotionField
from ..video.models import Frame, Plane
from .models import check_pair, plane_grids, stack_planes

logger = structlog.get_logger(__name__)

# (use vertical neighbour, use horizontal neighbour)
_COVERING_BLOCKS = ((0, 0), (0, 1), (1, 0), (1, 1))


def _neighbour_step(
    local: npt.NDArray[np.intp], block: int, margin: int
) -> npt.NDArray[np.intp]:
    """-1 inside the leading margin, +1 inside the trailing margin, else 0."""
    return np.where(local < margin, -1, np.where(local >= block - margin, 1, 0))


def compensate_plane(
    p: Plane,
    n: Plane,
    vectors: npt.NDArray[np.int32],
    block: int,
    margin: int,
) -> npt.NDArray[np.int64]:
    """
    Overlapped bilateral compensation of one plane.

    margin=0 reduces to plain per-block compensation. Returns the rounded
    result as int64; all sums stay integral until the single final division.
    """
    rows, cols = vectors.shape[:2]
    height, width = p.shape
    if (height, width) != (rows * block, cols * block):
        raise MotionFieldError(
            f"Field of {cols}x{rows} blocks of {block} does not tile a "
            f"{width}x{height} plane"
        )

    yy, xx = np.indices((height, width))
    block_row, block_col = yy // block, xx // block
    step_y = _neighbour_step(yy % block, block, margin)
    step_x = _neighbour_step(xx % block, block, margin)

    src_p = p.astype(np.int64)
    src_n = n.astype(np.int64)
    total = np.zeros((height, width), dtype=np.int64)
    count = np.zeros((height, width), dtype=np.int64)

    for use_y, use_x in _COVERING_BLOCKS:
        nb_row = block_row + use_y * step_y
        nb_col = block_col + use_x * step_x
        active = (nb_row >= 0) & (nb_row < rows) & (nb_col >= 0) & (nb_col < cols)
        if use_y:
            active &= step_y != 0
        if use_x:
            active &= step_x != 0
        if not active.any():
            continue

        mv = vectors[np.clip(nb_row, 0, rows - 1), np.clip(nb_col, 0, cols - 1)]
        dx, dy = mv[..., 0], mv[..., 1]
        from_p = src_p[
            np.clip(yy + dy, 0, height - 1), np.clip(xx + dx, 0, width - 1)
        ]
        from_n = src_n[
            np.clip(yy - dy, 0, height - 1), np.clip(xx - dx, 0, width - 1)
        ]
        total += np.where(active, from_p + from_n, 0)
        count += active

    # total / (2 * count), rounded half up
    denom = 2 * count
    return (2 * total + denom) // (2 * denom)


def _check_bilateral(field: MotionField) -> None:
    if field.anchor is not Anchor.INTERPOLATED_FRAME:
        raise MotionFieldError(
            f"Bilateral compensation needs a bilateral field, got {field.anchor.value}"
        )


def obmc(f_p: Frame, f_n: Frame, field: MotionField, margin: int) -> Frame:
    """Overlapped block compensation with the given enlargement margin."""
    check_pair(f_p, f_n)
    _check_bilateral(field)
    if margin < 0 or 2 * margin >= field.block_size:
        raise MotionFieldError(
            f"OBMC margin {margin} does not fit block size {field.block_size}"
        )

    planes: list[npt.NDArray[np.int64]] = []
    for index, (p, n, (vectors, block)) in enumerate(
        zip(f_p.planes(), f_n.planes(), plane_grids(f_p.meta, field), strict=True)
    ):
        plane_margin = margin if index == 0 else margin // 2
        planes.append(compensate_plane(p, n, vectors, block, plane_margin))
    logger.debug(
        "blocks_compensated",
        kind="bilateral",
        margin=margin,
        blocks=field.rows * field.cols,
    )
    return stack_planes(f_p.meta, tuple(planes))


def bilateral_mci(f_p: Frame, f_n: Frame, field: MotionField) -> Frame:
    """Plain bilateral compensation: one vector per block, no overlap."""
    return obmc(f_p, f_n, field, margin=0)


def frame_repeat(f_p: Frame, f_n: Frame) -> Frame:
    """Zero-order hold baseline: the previous frame again."""
    check_pair(f_p, f_n)
    return f_p


def frame_average(f_p: Frame, f_n: Frame) -> Frame:
    """Temporal average baseline without motion compensation."""
    check_pair(f_p, f_n)
    planes = tuple(
        (p.astype(np.int32) + n.astype(np.int32) + 1) // 2
        for p, n in zip(f_p.planes(), f_n.planes(), strict=True)
    )
    return stack_planes(f_p.meta, planes)
