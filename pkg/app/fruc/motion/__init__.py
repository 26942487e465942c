"""Block-matching motion estimation and vector median smoothing."""

from .block_matching import (
    as_plane,
    backward_me,
    bilateral_me,
    block_cost_along,
    candidate_order,
    forward_me,
    full_search,
    sad,
    sample_block,
)
from .models import MotionField, MotionVector
from .smoothing import smooth_field, vector_median

__all__ = [
    "MotionField",
    "MotionVector",
    "as_plane",
    "backward_me",
    "bilateral_me",
    "block_cost_along",
    "candidate_order",
    "forward_me",
    "full_search",
    "sad",
    "sample_block",
    "smooth_field",
    "vector_median",
]
