"""
Shared enumerations used across the engine's stages.
"""

from enum import Enum


class InterpolationMode(str, Enum):
    """Which branch of the interpolation chain produces the output frame."""

    UNILATERAL = "unilateral"
    BILATERAL = "bilateral"
    PROPOSED = "proposed"


class ColorMode(str, Enum):
    """Plane layout of a sequence."""

    LUMA_ONLY = "luma_only"
    YUV420 = "yuv420"


class Anchor(str, Enum):
    """Frame on which a motion field's block grid is laid out."""

    INTERPOLATED_FRAME = "interpolated_frame"
    PREVIOUS_FRAME = "previous_frame"
    NEXT_FRAME = "next_frame"


class Baseline(str, Enum):
    """Non-compensated interpolators reported next to the motion-compensated modes."""

    FRAME_REPEAT = "frame_repeat"
    FRAME_AVERAGE = "frame_average"
