"""
Motion vectors and block-grid motion fields.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
import numpy.typing as npt

from ..core.error_handling import MotionFieldError
from ..models import Anchor


class MotionVector(NamedTuple):
    """Integer displacement; positive dx is rightward, positive dy downward."""

    dx: int
    dy: int

    def __neg__(self) -> MotionVector:
        return MotionVector(-self.dx, -self.dy)


@dataclass(frozen=True, eq=False)
class MotionField:
    """
    One vector and one matching cost per block.

    vectors has shape (rows, cols, 2) holding (dx, dy); costs has shape
    (rows, cols) holding the raw SAD of the block along its vector.
    """

    anchor: Anchor
    block_size: int
    search_range: int
    vectors: npt.NDArray[np.int32]
    costs: npt.NDArray[np.int64]

    def __post_init__(self) -> None:
        vectors = np.array(self.vectors, dtype=np.int32)
        costs = np.array(self.costs, dtype=np.int64)
        if vectors.ndim != 3 or vectors.shape[2] != 2:
            raise MotionFieldError(f"Vector grid has shape {vectors.shape}")
        if costs.shape != vectors.shape[:2]:
            raise MotionFieldError(
                f"Cost grid {costs.shape} does not match vector grid "
                f"{vectors.shape[:2]}"
            )
        if vectors.size and int(np.abs(vectors).max()) > self.search_range:
            raise MotionFieldError(
                f"Vector outside the +/-{self.search_range} search window"
            )
        if costs.size and int(costs.min()) < 0:
            raise MotionFieldError("Matching costs must be non-negative")
        vectors.flags.writeable = False
        costs.flags.writeable = False
        object.__setattr__(self, "vectors", vectors)
        object.__setattr__(self, "costs", costs)

    __hash__ = None  # type: ignore[assignment]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MotionField):
            return NotImplemented
        return (
            self.anchor is other.anchor
            and self.block_size == other.block_size
            and np.array_equal(self.vectors, other.vectors)
            and np.array_equal(self.costs, other.costs)
        )

    @property
    def rows(self) -> int:
        return int(self.vectors.shape[0])

    @property
    def cols(self) -> int:
        return int(self.vectors.shape[1])

    def vector(self, col: int, row: int) -> MotionVector:
        dx, dy = self.vectors[row, col]
        return MotionVector(int(dx), int(dy))

    def cost(self, col: int, row: int) -> int:
        return int(self.costs[row, col])

    def block_origin(self, col: int, row: int) -> tuple[int, int]:
        """Top-left pixel (x, y) of a block on the anchor grid."""
        return col * self.block_size, row * self.block_size

    def with_vectors(
        self, vectors: npt.ArrayLike, costs: npt.ArrayLike
    ) -> MotionField:
        return MotionField(
            anchor=self.anchor,
            block_size=self.block_size,
            search_range=self.search_range,
            vectors=np.asarray(vectors, dtype=np.int32),
            costs=np.asarray(costs, dtype=np.int64),
        )

    def negated(self) -> MotionField:
        return self.with_vectors(-self.vectors, self.costs)

    def mean_magnitude(self) -> float:
        if not self.vectors.size:
            return 0.0
        return float(np.hypot(self.vectors[..., 0], self.vectors[..., 1]).mean())

    def dump(self) -> str:
        """Debug text, one 'col row dx dy cost' line per block in raster order."""
        lines = [
            f"{col} {row} {self.vectors[row, col, 0]} {self.vectors[row, col, 1]} "
            f"{self.costs[row, col]}"
            for row in range(self.rows)
            for col in range(self.cols)
        ]
        return "\n".join(lines) + ("\n" if lines else "")
