"""
Objective quality metrics.
"""

from __future__ import annotations

import math

import numpy as np

from ..core.error_handling import DimensionMismatchError
from ..video.models import Frame

PEAK = 255.0
DEFAULT_CAP_DB = 100.0


def mse(reference: Frame, test: Frame, border: int = 0) -> float:
    """Mean squared luma difference, optionally ignoring `border` pixels per side."""
    if (reference.width, reference.height) != (test.width, test.height):
        raise DimensionMismatchError(
            f"Cannot compare {reference.width}x{reference.height} with "
            f"{test.width}x{test.height}"
        )
    if border < 0 or 2 * border >= min(reference.width, reference.height):
        raise DimensionMismatchError(
            f"Border {border} leaves nothing of a "
            f"{reference.width}x{reference.height} frame"
        )

    a = reference.luma.astype(np.int64)
    b = test.luma.astype(np.int64)
    if border:
        a = a[border:-border, border:-border]
        b = b[border:-border, border:-border]
    return float(np.mean((a - b) ** 2))


def psnr(reference: Frame, test: Frame, border: int = 0) -> float:
    """Luma PSNR in dB; identical frames give +inf."""
    error = mse(reference, test, border)
    if error == 0:
        return math.inf
    return 10.0 * math.log10(PEAK * PEAK / error)


def cap(value_db: float, cap_db: float = DEFAULT_CAP_DB) -> float:
    """Clamp an infinite (or huge) PSNR so averages stay finite."""
    return min(value_db, cap_db)
