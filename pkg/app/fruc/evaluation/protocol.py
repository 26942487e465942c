"""
Odd-frame reconstruction protocol.

Every odd frame from 3 on is withheld, rebuilt from its two even neighbours
and scored against the original with luma PSNR. Frame numbers in reports are
1-based.
"""

from __future__ import annotations

from collections.abc import Callable, Sequence

import structlog

from ..config import FrucConfig
from ..core.error_handling import error_boundary
from ..interpolation.bilateral import frame_average, frame_repeat
from ..models import Baseline, InterpolationMode
from ..interpolation.models import InterpolationSet
from ..pipeline import odd_frame_indices, odd_frame_pairs, reconstruct_odd, trace_pairs
from ..video.models import Frame
from .metrics import DEFAULT_CAP_DB, psnr
from .report import ModeComparison, PsnrReport

logger = structlog.get_logger(__name__)

_BASELINES: dict[Baseline, Callable[[Frame, Frame], Frame]] = {
    Baseline.FRAME_REPEAT: frame_repeat,
    Baseline.FRAME_AVERAGE: frame_average,
}


def _score(
    frames: Sequence[Frame],
    rebuilt: Sequence[Frame],
    border: int,
) -> tuple[tuple[int, float], ...]:
    indices = odd_frame_indices(len(frames))
    return tuple(
        (k, psnr(frames[k - 1], frame, border))
        for k, frame in zip(indices, rebuilt, strict=True)
    )


@error_boundary("evaluation", "run_protocol")
def run_protocol(
    frames: Sequence[Frame],
    cfg: FrucConfig,
    mode: InterpolationMode | str | None = None,
    *,
    sequence_name: str = "sequence",
    workers: int = 1,
    border: int = 0,
    cap_db: float = DEFAULT_CAP_DB,
    sets: Sequence[InterpolationSet] | None = None,
) -> PsnrReport:
    """
    Reconstruct the withheld frames in one mode and score them.

    `sets` are the chains of `odd_frame_pairs(frames)` when already computed.
    """
    chosen = InterpolationMode(mode) if mode is not None else cfg.mode
    rebuilt = reconstruct_odd(frames, cfg.with_mode(chosen), workers, sets)
    report = PsnrReport(
        sequence_name=sequence_name,
        mode=chosen,
        per_frame=_score(frames, rebuilt, border),
        cap_db=cap_db,
    )
    logger.info(
        "protocol_completed",
        sequence=sequence_name,
        mode=chosen.value,
        frames=len(report.per_frame),
        average_db=round(report.average_db, 2),
    )
    return report


def run_baseline(
    frames: Sequence[Frame],
    baseline: Baseline | str,
    *,
    sequence_name: str = "sequence",
    border: int = 0,
    cap_db: float = DEFAULT_CAP_DB,
) -> PsnrReport:
    """Score a non-compensated interpolator under the same protocol."""
    chosen = Baseline(baseline)
    build = _BASELINES[chosen]
    rebuilt = [build(frames[k - 2], frames[k]) for k in odd_frame_indices(len(frames))]
    return PsnrReport(
        sequence_name=sequence_name,
        mode=chosen,
        per_frame=_score(frames, rebuilt, border),
        cap_db=cap_db,
    )


@error_boundary("evaluation", "compare_modes")
def compare_modes(
    frames: Sequence[Frame],
    cfg: FrucConfig,
    *,
    sequence_name: str = "sequence",
    include_baselines: bool = False,
    workers: int = 1,
    border: int = 0,
    cap_db: float = DEFAULT_CAP_DB,
    sets: Sequence[InterpolationSet] | None = None,
) -> ModeComparison:
    """
    All three modes (and optionally the baselines) on the same sequence.

    The full chain is built once per withheld frame and every mode reads its
    output from it.
    """
    if sets is None:
        sets = trace_pairs(odd_frame_pairs(frames), cfg, workers)
    reports: dict[str, PsnrReport] = {}
    for mode in InterpolationMode:
        reports[mode.value] = run_protocol(
            frames,
            cfg,
            mode,
            sequence_name=sequence_name,
            workers=workers,
            border=border,
            cap_db=cap_db,
            sets=sets,
        )
    if include_baselines:
        for baseline in Baseline:
            reports[baseline.value] = run_baseline(
                frames,
                baseline,
                sequence_name=sequence_name,
                border=border,
                cap_db=cap_db,
            )

    comparison = ModeComparison(sequence_name=sequence_name, reports=reports)
    logger.info("modes_compared", sequence=sequence_name, **comparison.deltas())
    return comparison
