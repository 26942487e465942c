"""Raw and Y4M video I/O, frame values and block-grid padding."""

from .files import is_y4m, load_sequence, parse_rate, parse_raw_size, save_sequence
from .models import Frame, Plane, SequenceMeta
from .padding import aligned_size, crop, pad_to_multiple
from .pgm import write_pgm
from .raw_yuv import read_raw_yuv, write_raw_yuv
from .y4m import format_header, parse_y4m, write_y4m

__all__ = [
    "Frame",
    "Plane",
    "SequenceMeta",
    "aligned_size",
    "crop",
    "format_header",
    "is_y4m",
    "load_sequence",
    "pad_to_multiple",
    "parse_rate",
    "parse_raw_size",
    "parse_y4m",
    "read_raw_yuv",
    "save_sequence",
    "write_pgm",
    "write_raw_yuv",
    "write_y4m",
]
