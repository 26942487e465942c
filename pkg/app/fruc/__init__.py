"""
Frame-Rate Up-Conversion Engine

Motion-compensated interpolation of the frame between two decoded frames:
- Y4M and raw planar YUV input/output
- Bilateral and unilateral full-search block matching
- Vector median smoothing and overlapped block compensation
- Hole-aware merge of unilateral splats and adaptive fusion
- Odd-frame reconstruction PSNR protocol and synthetic test sequences
"""

from .__about__ import __version__
from .config import FrucConfig, FrucSettings, load_settings
from .core.error_handling import FrucError
from .models import Anchor, Baseline, ColorMode, InterpolationMode
from .pipeline import (
    double_rate,
    interpolate_between,
    interpolate_set,
    reconstruct_odd,
)
from .video.models import Frame, SequenceMeta

__all__ = [
    "Anchor",
    "Baseline",
    "ColorMode",
    "Frame",
    "FrucConfig",
    "FrucError",
    "FrucSettings",
    "InterpolationMode",
    "SequenceMeta",
    "__version__",
    "double_rate",
    "interpolate_between",
    "interpolate_set",
    "load_settings",
    "reconstruct_odd",
]
