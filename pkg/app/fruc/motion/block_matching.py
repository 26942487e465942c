"""
Full-search block-matching motion estimation.

Three geometries share one exhaustive SAD search:
- bilateral: blocks laid on the frame to be interpolated, symmetric
  displacements +mv into the previous frame and -mv into the next frame
- forward: blocks on the previous frame, matched into the next frame
- backward: blocks on the next frame, matched into the previous frame

Reads outside a frame are edge-clamped. Among equal-SAD candidates the vector
with the smallest dx^2 + dy^2 wins, then the smaller dy, then the smaller dx.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np
import numpy.typing as npt
import structlog

from ..config import FrucConfig
from ..core.error_handling import DimensionMismatchError, MotionFieldError
from ..models import Anchor
from ..video.models import Frame, Plane
from .models import MotionField, MotionVector

logger = structlog.get_logger(__name__)

PlaneLike = Frame | Plane


def as_plane(image: PlaneLike) -> Plane:
    """Luma plane of a frame, or the array itself."""
    return image.luma if isinstance(image, Frame) else image


def sample_block(
    plane: Plane, origin: tuple[int, int], block_w: int, block_h: int
) -> npt.NDArray[np.uint8]:
    """Block at origin (x, y) with coordinates clamped into the plane."""
    x, y = origin
    height, width = plane.shape
    ys = np.clip(np.arange(y, y + block_h), 0, height - 1)
    xs = np.clip(np.arange(x, x + block_w), 0, width - 1)
    return plane[np.ix_(ys, xs)]


def sad(
    frame_a: PlaneLike,
    origin_a: tuple[int, int],
    frame_b: PlaneLike,
    origin_b: tuple[int, int],
    block_w: int,
    block_h: int,
) -> int:
    """Sum of absolute differences between two edge-clamped blocks."""
    if block_w < 1 or block_h < 1:
        raise DimensionMismatchError(f"Block must be >= 1x1, got {block_w}x{block_h}")
    a = sample_block(as_plane(frame_a), origin_a, block_w, block_h).astype(np.int32)
    b = sample_block(as_plane(frame_b), origin_b, block_w, block_h).astype(np.int32)
    return int(np.abs(a - b).sum())


def block_cost_along(
    f_p: PlaneLike,
    f_n: PlaneLike,
    block_origin: tuple[int, int],
    mv: MotionVector | tuple[int, int],
    block_size: int,
) -> int:
    """Bilateral SAD of the block at block_origin along the symmetric vector mv."""
    x, y = block_origin
    dx, dy = mv
    return sad(f_p, (x + dx, y + dy), f_n, (x - dx, y - dy), block_size, block_size)


@lru_cache(maxsize=32)
def candidate_order(search: int) -> tuple[tuple[int, int], ...]:
    """Window vectors in tie-break order: |v|^2, then dy, then dx."""
    window = [
        (dx, dy)
        for dy in range(-search, search + 1)
        for dx in range(-search, search + 1)
    ]
    window.sort(key=lambda v: (v[0] * v[0] + v[1] * v[1], v[1], v[0]))
    return tuple(window)


def _check_grid(f_p: Plane, f_n: Plane, block: int) -> tuple[int, int]:
    if f_p.shape != f_n.shape:
        raise DimensionMismatchError(
            f"Reference frames differ in size: {f_p.shape} vs {f_n.shape}"
        )
    height, width = f_p.shape
    if height % block or width % block:
        raise MotionFieldError(
            f"Frame {width}x{height} is not aligned to {block}-pixel blocks"
        )
    return height // block, width // block


def full_search(
    anchor_plane: Plane,
    target_plane: Plane,
    block: int,
    search: int,
    symmetric: bool,
) -> tuple[npt.NDArray[np.int32], npt.NDArray[np.int64]]:
    """
    Exhaustive search over the inclusive +/-search window for every block.

    With symmetric=False each anchor block at (x, y) is compared with the
    target block at (x + dx, y + dy). With symmetric=True the block position
    is virtual: the anchor plane is sampled at (x + dx, y + dy) and the target
    at (x - dx, y - dy). Returns (vectors, costs) grids.
    """
    rows, cols = _check_grid(anchor_plane, target_plane, block)
    height, width = anchor_plane.shape
    s = search

    target = np.pad(target_plane, s, mode="edge").astype(np.int16)
    if symmetric:
        anchor = np.pad(anchor_plane, s, mode="edge").astype(np.int16)
    else:
        anchor = anchor_plane.astype(np.int16)

    best_cost = np.full((rows, cols), np.iinfo(np.int64).max, dtype=np.int64)
    best_vec = np.zeros((rows, cols, 2), dtype=np.int32)

    # Candidates arrive in tie-break order, so only a strictly lower cost
    # may replace the current best.
    for dx, dy in candidate_order(s):
        if symmetric:
            a = anchor[s + dy : s + dy + height, s + dx : s + dx + width]
            b = target[s - dy : s - dy + height, s - dx : s - dx + width]
        else:
            a = anchor
            b = target[s + dy : s + dy + height, s + dx : s + dx + width]
        diff = np.abs(a - b)
        cost = diff.reshape(rows, block, cols, block).sum(axis=(1, 3), dtype=np.int64)
        better = cost < best_cost
        if better.any():
            best_cost[better] = cost[better]
            best_vec[better] = (dx, dy)

    return best_vec, best_cost


def bilateral_me(f_p: PlaneLike, f_n: PlaneLike, cfg: FrucConfig) -> MotionField:
    """Symmetric motion field anchored on the frame to be interpolated."""
    vectors, costs = full_search(
        as_plane(f_p), as_plane(f_n), cfg.bi_block, cfg.bi_search, symmetric=True
    )
    field = MotionField(
        anchor=Anchor.INTERPOLATED_FRAME,
        block_size=cfg.bi_block,
        search_range=cfg.bi_search,
        vectors=vectors,
        costs=costs,
    )
    logger.debug(
        "motion_estimated",
        kind="bilateral",
        blocks=field.rows * field.cols,
        mean_magnitude=round(field.mean_magnitude(), 3),
    )
    return field


def forward_me(f_p: PlaneLike, f_n: PlaneLike, cfg: FrucConfig) -> MotionField:
    """Previous-frame blocks matched into the next frame."""
    vectors, costs = full_search(
        as_plane(f_p), as_plane(f_n), cfg.uni_block, cfg.uni_search, symmetric=False
    )
    field = MotionField(
        anchor=Anchor.PREVIOUS_FRAME,
        block_size=cfg.uni_block,
        search_range=cfg.uni_search,
        vectors=vectors,
        costs=costs,
    )
    logger.debug(
        "motion_estimated",
        kind="forward",
        blocks=field.rows * field.cols,
        mean_magnitude=round(field.mean_magnitude(), 3),
    )
    return field


def backward_me(f_p: PlaneLike, f_n: PlaneLike, cfg: FrucConfig) -> MotionField:
    """Next-frame blocks matched into the previous frame."""
    vectors, costs = full_search(
        as_plane(f_n), as_plane(f_p), cfg.uni_block, cfg.uni_search, symmetric=False
    )
    field = MotionField(
        anchor=Anchor.NEXT_FRAME,
        block_size=cfg.uni_block,
        search_range=cfg.uni_search,
        vectors=vectors,
        costs=costs,
    )
    logger.debug(
        "motion_estimated",
        kind="backward",
        blocks=field.rows * field.cols,
        mean_magnitude=round(field.mean_magnitude(), 3),
    )
    return field
