"""
Vector median filtering of bilateral motion fields.

Each block's vector is replaced by the member of its 3x3 neighbourhood that
minimises the summed Euclidean distance to all members. Border blocks use the
truncated neighbourhood. Costs are recomputed along the smoothed vectors.
"""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np
import structlog

from ..core.error_handling import MotionFieldError
from ..models import Anchor
from .block_matching import PlaneLike, as_plane, block_cost_along
from .models import MotionField, MotionVector

logger = structlog.get_logger(__name__)

# Sums of square roots that are mathematically equal may differ in the last
# bits; anything within this band counts as a tie.
TIE_TOLERANCE = 1e-9

# Center first, then neighbours in raster order.
NEIGHBOURHOOD: tuple[tuple[int, int], ...] = ((0, 0),) + tuple(
    (dc, dr) for dr in (-1, 0, 1) for dc in (-1, 0, 1) if (dc, dr) != (0, 0)
)


def vector_median(candidates: Sequence[MotionVector | tuple[int, int]]) -> MotionVector:
    """
    Candidate minimising the summed L2 distance to all candidates.

    Ties go to the earliest candidate in the given order.
    """
    if not candidates:
        raise MotionFieldError("vector_median needs at least one candidate")
    points = np.asarray(candidates, dtype=np.float64).reshape(-1, 2)
    deltas = points[:, None, :] - points[None, :, :]
    sums = np.sqrt((deltas**2).sum(axis=2)).sum(axis=1)
    winner = int(np.flatnonzero(sums <= sums.min() + TIE_TOLERANCE)[0])
    dx, dy = candidates[winner]
    return MotionVector(int(dx), int(dy))


def smooth_field(field: MotionField, f_p: PlaneLike, f_n: PlaneLike) -> MotionField:
    """Single-pass 3x3 vector median filter with cost recomputation."""
    if field.anchor is not Anchor.INTERPOLATED_FRAME:
        raise MotionFieldError(
            f"Only bilateral fields are smoothed, got anchor {field.anchor.value}"
        )

    plane_p, plane_n = as_plane(f_p), as_plane(f_n)
    vectors = np.empty_like(field.vectors)
    costs = np.empty_like(field.costs)
    replaced = 0

    for row in range(field.rows):
        for col in range(field.cols):
            neighbourhood = [
                field.vector(col + dc, row + dr)
                for dc, dr in NEIGHBOURHOOD
                if 0 <= col + dc < field.cols and 0 <= row + dr < field.rows
            ]
            median = vector_median(neighbourhood)
            if median != neighbourhood[0]:
                replaced += 1
            vectors[row, col] = median
            costs[row, col] = block_cost_along(
                plane_p, plane_n, field.block_origin(col, row), median, field.block_size
            )

    logger.debug("field_smoothed", blocks=field.rows * field.cols, replaced=replaced)
    return field.with_vectors(vectors, costs)
