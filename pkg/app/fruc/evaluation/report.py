"""
PSNR reports: per-frame values, averages and CSV output.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
import math
from pathlib import Path

import numpy as np
import pandas as pd

from ..core.error_handling import SequenceError
from ..models import Baseline, InterpolationMode
from .metrics import DEFAULT_CAP_DB, cap

Method = InterpolationMode | Baseline


def _by_mode(
    unilateral: float, bilateral: float, proposed: float
) -> dict[InterpolationMode, float]:
    return {
        InterpolationMode.UNILATERAL: unilateral,
        InterpolationMode.BILATERAL: bilateral,
        InterpolationMode.PROPOSED: proposed,
    }


# Published average luma PSNR (dB) of 50 reconstructed odd frames per standard
# CIF sequence (44 for stefan). Informative only: absolute values depend on
# border handling and tie-breaks.
REFERENCE_AVERAGES: dict[str, dict[InterpolationMode, float]] = {
    "foreman": _by_mode(33.30, 33.47, 34.17),
    "football": _by_mode(21.92, 22.00, 22.39),
    "mobile": _by_mode(24.94, 28.82, 26.79),
    "flower": _by_mode(29.52, 29.79, 30.40),
    "stefan": _by_mode(27.14, 27.46, 28.03),
    "coastguard": _by_mode(30.02, 32.16, 32.02),
    "paris": _by_mode(32.32, 32.16, 33.13),
    "soccer": _by_mode(28.71, 29.14, 29.72),
    "tennis": _by_mode(28.78, 28.67, 29.32),
    "akiyo": _by_mode(44.00, 45.14, 45.02),
    "news": _by_mode(35.36, 36.15, 36.38),
    "silent": _by_mode(36.00, 36.04, 36.64),
}

REFERENCE_OVERALL = _by_mode(31.00, 31.75, 32.00)


def format_db(value: float) -> str:
    """Two decimals, or 'inf' for a lossless frame."""
    return "inf" if math.isinf(value) else f"{value:.2f}"


def _csv(table: pd.DataFrame) -> str:
    return table.to_csv(lineterminator="\n")


@dataclass(frozen=True)
class PsnrReport:
    """Per-frame PSNR of one method on one sequence (1-based frame indices)."""

    sequence_name: str
    mode: Method
    per_frame: tuple[tuple[int, float], ...]
    cap_db: float = DEFAULT_CAP_DB

    def __post_init__(self) -> None:
        if not self.per_frame:
            raise SequenceError(f"Report for {self.sequence_name!r} has no frames")
        indices = [index for index, _ in self.per_frame]
        if indices != sorted(set(indices)):
            raise SequenceError("Report frame indices must be strictly ascending")

    @property
    def frame_indices(self) -> list[int]:
        return [index for index, _ in self.per_frame]

    @property
    def values(self) -> list[float]:
        return [value for _, value in self.per_frame]

    @property
    def average_db(self) -> float:
        """Mean PSNR with infinite entries capped at cap_db."""
        return float(np.mean([cap(value, self.cap_db) for value in self.values]))

    def to_series(self) -> pd.Series:
        return pd.Series(
            self.values,
            index=pd.Index(self.frame_indices, name="frame"),
            name=self.mode.value,
            dtype=float,
        )

    def to_dataframe(self) -> pd.DataFrame:
        return self.to_series().rename("psnr_db").to_frame()

    def to_csv(self) -> str:
        """`frame,psnr_db` rows followed by an `average` row."""
        rows = [str(index) for index in self.frame_indices] + ["average"]
        cells = [format_db(value) for value in self.values]
        cells.append(format_db(self.average_db))
        table = pd.DataFrame({"psnr_db": cells}, index=pd.Index(rows, name="frame"))
        return _csv(table)

    def write_csv(self, path: Path) -> None:
        path.write_text(self.to_csv(), encoding="utf-8", newline="")


@dataclass(frozen=True)
class ModeComparison:
    """Reports of several methods over the same withheld frames."""

    sequence_name: str
    reports: Mapping[str, PsnrReport]

    def __post_init__(self) -> None:
        indices = {tuple(r.frame_indices) for r in self.reports.values()}
        if len(indices) > 1:
            raise SequenceError("Compared reports cover different frames")

    def report(self, method: Method | str) -> PsnrReport:
        if isinstance(method, InterpolationMode | Baseline):
            return self.reports[method.value]
        return self.reports[method]

    def per_frame(self) -> pd.DataFrame:
        """One column per method, indexed by 1-based frame number."""
        return pd.concat([r.to_series() for r in self.reports.values()], axis=1)

    def averages(self) -> pd.Series:
        return pd.Series(
            {label: r.average_db for label, r in self.reports.items()},
            name="average_db",
            dtype=float,
        )

    def deltas(self) -> dict[str, float]:
        """Gain of the proposed mode over each of the other two modes."""
        averages = self.averages()
        proposed = InterpolationMode.PROPOSED.value
        result: dict[str, float] = {}
        for other in (InterpolationMode.UNILATERAL, InterpolationMode.BILATERAL):
            if proposed in averages and other.value in averages:
                result[f"proposed_minus_{other.value}"] = float(
                    averages[proposed] - averages[other.value]
                )
        return result

    def reference_deltas(self) -> dict[str, float] | None:
        """Measured minus published average per mode, for known sequences."""
        reference = REFERENCE_AVERAGES.get(self.sequence_name.lower())
        if reference is None:
            return None
        averages = self.averages()
        return {
            mode.value: float(averages[mode.value] - value)
            for mode, value in reference.items()
            if mode.value in averages
        }

    def to_csv(self) -> str:
        """Per-frame curves, one column per method, then an `average` row."""
        frame = self.per_frame()
        table = frame.map(format_db)
        table.index = table.index.astype(str)
        averages = self.averages().map(format_db)
        table.loc["average"] = averages[table.columns].tolist()
        table.index.name = "frame"
        return _csv(table)

    def write_csv(self, path: Path) -> None:
        path.write_text(self.to_csv(), encoding="utf-8", newline="")
