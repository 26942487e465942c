"""
Binary PGM (P5) output for hole masks and single planes.
"""

from __future__ import annotations

from typing import BinaryIO

import numpy as np
import numpy.typing as npt


def write_pgm(image: npt.NDArray[np.generic], sink: BinaryIO) -> None:
    """Write a 2-D array as an 8-bit P5 image; boolean masks map True to 255."""
    if image.ndim != 2:
        raise ValueError(f"PGM needs a 2-D array, got shape {image.shape}")
    if image.dtype == np.bool_:
        data = np.where(image, 255, 0).astype(np.uint8)
    else:
        data = np.clip(image, 0, 255).astype(np.uint8)
    height, width = data.shape
    sink.write(f"P5\n{width} {height}\n255\n".encode("ascii"))
    sink.write(data.tobytes())
