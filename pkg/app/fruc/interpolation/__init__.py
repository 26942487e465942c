"""
Interpolated-frame construction: bilateral with OBMC, unilateral splatting,
hole merge and adaptive fusion.
"""

from .bilateral import (
    bilateral_mci,
    compensate_plane,
    frame_average,
    frame_repeat,
    obmc,
)
from .fusion import adaptive_fusion, adaptive_thresholds, fusion_branches
from .models import (
    AccumulatorFrame,
    HoleStats,
    InterpolationSet,
    PlaneAccumulator,
    chroma_vectors,
)
from .unilateral import half_of, merge_unilateral, splat_plane, unilateral_mci

__all__ = [
    "AccumulatorFrame",
    "HoleStats",
    "InterpolationSet",
    "PlaneAccumulator",
    "adaptive_fusion",
    "adaptive_thresholds",
    "bilateral_mci",
    "chroma_vectors",
    "compensate_plane",
    "frame_average",
    "frame_repeat",
    "fusion_branches",
    "half_of",
    "merge_unilateral",
    "obmc",
    "splat_plane",
    "unilateral_mci",
]
