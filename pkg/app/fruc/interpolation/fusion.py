"""
Adaptive fusion of the bilateral and joint unilateral frames.

Blocks are visited in raster order. A block whose bilateral matching cost is
at least the mean cost of the blocks before it is treated as unreliable and
both frames are averaged equally; otherwise the bilateral frame gets twice
the weight. The first block has no history and takes the weighted branch.
"""

from __future__ import annotations

import numpy as np
import numpy.typing as npt
import structlog

from ..core.error_handling import DimensionMismatchError
from ..video.models import Frame
from .models import stack_planes

logger = structlog.get_logger(__name__)

_Int64s = npt.NDArray[np.int64]


def _prefix(block_costs: npt.ArrayLike) -> tuple[_Int64s, _Int64s, _Int64s]:
    """Flattened costs, sum of the costs before each block, blocks before it."""
    flat = np.asarray(block_costs, dtype=np.int64).ravel()
    before = np.cumsum(flat) - flat
    seen = np.arange(flat.size, dtype=np.int64)
    return flat, before, seen


def adaptive_thresholds(block_costs: npt.ArrayLike) -> npt.NDArray[np.float64]:
    """Running mean of the preceding costs per block; +inf for the first block."""
    costs = np.asarray(block_costs)
    _, before, seen = _prefix(costs)
    thresholds = before / np.maximum(seen, 1)
    if thresholds.size:
        thresholds[0] = np.inf
    return thresholds.reshape(costs.shape)


def fusion_branches(block_costs: npt.ArrayLike) -> npt.NDArray[np.bool_]:
    """True where a block takes the equal-weight branch."""
    costs = np.asarray(block_costs)
    flat, before, seen = _prefix(costs)
    # cost >= before / seen, kept in integers
    simple = (flat * seen >= before) & (seen > 0)
    return simple.reshape(costs.shape)


def adaptive_fusion(
    f_bi: Frame, f_i: Frame, block_costs: npt.ArrayLike, block_size: int
) -> Frame:
    """Blend f_bi and f_i block by block according to fusion_branches."""
    if not f_bi.same_layout(f_i):
        raise DimensionMismatchError(
            f"Cannot fuse {f_bi.width}x{f_bi.height} with {f_i.width}x{f_i.height}"
        )
    simple = fusion_branches(block_costs)
    if simple.ndim != 2:
        raise DimensionMismatchError(
            f"Block costs must form a 2-D grid, got shape {simple.shape}"
        )

    planes: list[npt.NDArray[np.int64]] = []
    for index, (bi, ui) in enumerate(zip(f_bi.planes(), f_i.planes(), strict=True)):
        block = block_size if index == 0 else block_size // 2
        mask = np.repeat(np.repeat(simple, block, axis=0), block, axis=1)
        if mask.shape != bi.shape:
            raise DimensionMismatchError(
                f"Cost grid {simple.shape} of {block}-pixel blocks does not tile "
                f"plane {bi.shape}"
            )
        b = bi.astype(np.int64)
        u = ui.astype(np.int64)
        equal = (b + u + 1) // 2
        # (2b + u) / 3 rounded half up
        weighted = (2 * (2 * b + u) + 3) // 6
        planes.append(np.where(mask, equal, weighted))

    logger.debug(
        "frames_fused",
        blocks=int(simple.size),
        equal_weight_blocks=int(simple.sum()),
    )
    return stack_planes(f_bi.meta, tuple(planes))
