"""PSNR scoring, the odd-frame protocol and synthetic test sequences."""

from .metrics import cap, mse, psnr
from .protocol import compare_modes, run_baseline, run_protocol
from .report import (
    REFERENCE_AVERAGES,
    REFERENCE_OVERALL,
    ModeComparison,
    PsnrReport,
    format_db,
)
from .synth import (
    Background,
    Mover,
    SynthSpec,
    benchmark_suite,
    parse_synth_args,
    render_frame,
    spec_from_mapping,
    synth_sequence,
    texture,
)

__all__ = [
    "REFERENCE_AVERAGES",
    "REFERENCE_OVERALL",
    "Background",
    "ModeComparison",
    "Mover",
    "PsnrReport",
    "SynthSpec",
    "benchmark_suite",
    "cap",
    "compare_modes",
    "format_db",
    "mse",
    "parse_synth_args",
    "psnr",
    "render_frame",
    "run_baseline",
    "run_protocol",
    "spec_from_mapping",
    "synth_sequence",
    "texture",
]
