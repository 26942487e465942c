"""
Command-line entry point.

    fruc interpolate --input in.y4m --output out.y4m [--mode proposed]
    fruc evaluate --input foreman.y4m --mode all --report curves.csv
    fruc synth --spec width=352 --spec height=288 --spec mover=1,32,32,0,0,2,2 \
        --output pan.y4m

Exit codes: 0 success, 1 usage or configuration error, 2 I/O or stream error.
Logs go to stderr; a report without --report goes to stdout.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
import contextlib
from dataclasses import dataclass
from pathlib import Path
import sys

import click
from rich.console import Console
from rich.table import Table

from .config import FrucConfig, FrucSettings, load_config_file, load_settings
from .core.error_handling import FrucError, error_boundary
from .core.observability import configure_logging
from .evaluation.protocol import compare_modes, run_protocol
from .evaluation.report import REFERENCE_AVERAGES, ModeComparison, PsnrReport
from .evaluation.synth import parse_synth_args, synth_sequence
from .models import ColorMode, InterpolationMode
from .interpolation.models import InterpolationSet
from .pipeline import (
    consecutive_pairs,
    double_rate,
    odd_frame_indices,
    odd_frame_pairs,
    trace_pairs,
)
from .video.files import load_sequence, parse_rate, parse_raw_size, save_sequence
from .video.models import Frame, SequenceMeta
from .video.pgm import write_pgm

stderr_console = Console(stderr=True)

_MODES = [mode.value for mode in InterpolationMode]
_COLORS = [color.value for color in ColorMode]
_FilePath = click.Path(path_type=Path, dir_okay=False)
_DirPath = click.Path(path_type=Path, file_okay=False)


@dataclass
class CliState:
    settings: FrucSettings
    workers: int

    def engine(self, mode: str | None) -> FrucConfig:
        cfg = self.settings.engine
        return cfg.with_mode(mode) if mode else cfg


def _read_input(
    path: Path,
    raw_size: str | None,
    raw_color: str,
    raw_rate: str,
    limit: int | None = None,
) -> tuple[SequenceMeta, list[Frame]]:
    return load_sequence(
        path,
        raw_size=parse_raw_size(raw_size) if raw_size else None,
        color_mode=ColorMode(raw_color),
        frame_rate=parse_rate(raw_rate),
        limit=limit,
    )


def _dumping(mv_dir: Path | None, holes_dir: Path | None) -> bool:
    return mv_dir is not None or holes_dir is not None


def _write_dumps(
    chains: Iterable[tuple[str, Frame, InterpolationSet]],
    mv_dir: Path | None,
    holes_dir: Path | None,
) -> None:
    """Motion field text dumps and hole-mask PGMs for each labelled chain."""
    for directory in (mv_dir, holes_dir):
        if directory is not None:
            directory.mkdir(parents=True, exist_ok=True)

    for label, f_p, chain in chains:
        if mv_dir is not None:
            fields = {
                "bilateral": chain.bilateral_field,
                "smoothed": chain.smoothed_field,
                "forward": chain.forward_field,
                "backward": chain.backward_field,
            }
            for kind, field in fields.items():
                path = mv_dir / f"{label}_{kind}.txt"
                path.write_text(field.dump(), encoding="utf-8", newline="")
        if holes_dir is not None:
            forward, backward = chain.f_f.hole_mask(), chain.f_b.hole_mask()
            masks = {
                "forward": forward,
                "backward": backward,
                "shared": forward & backward,
            }
            for kind, mask in masks.items():
                with (holes_dir / f"{label}_{kind}.pgm").open("wb") as fh:
                    write_pgm(mask[: f_p.height, : f_p.width], fh)


def _summary_table(
    name: str, reports: Sequence[PsnrReport], comparison: ModeComparison | None
) -> Table:
    table = Table(title=f"PSNR: {name}")
    table.add_column("method")
    table.add_column("frames", justify="right")
    table.add_column("average dB", justify="right")
    reference = REFERENCE_AVERAGES.get(name.lower())
    if reference is not None:
        table.add_column("published dB", justify="right")

    for report in reports:
        row = [
            report.mode.value,
            str(len(report.per_frame)),
            f"{report.average_db:.2f}",
        ]
        if reference is not None:
            published = (
                reference.get(report.mode)
                if isinstance(report.mode, InterpolationMode)
                else None
            )
            row.append(f"{published:.2f}" if published is not None else "-")
        table.add_row(*row)

    if comparison is not None:
        for label, delta in comparison.deltas().items():
            table.add_row(label.replace("_", " "), "", f"{delta:+.2f}")
    return table


@click.group()
@click.option("--config", "config_path", type=_FilePath, default=None)
@click.option("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR.")
@click.option("--log-json", is_flag=True, help="Emit JSON log lines.")
@click.option("--workers", type=click.IntRange(min=1), default=None)
@click.pass_context
def cli(
    ctx: click.Context,
    config_path: Path | None,
    log_level: str | None,
    log_json: bool,
    workers: int | None,
) -> None:
    """Motion-compensated frame-rate up-conversion."""
    # stderr before anything logs; settings may then change level and format
    configure_logging(log_level or "INFO", log_json)
    settings = load_settings(config_path)
    configure_logging(log_level or settings.log_level, log_json or settings.log_json)
    ctx.obj = CliState(settings=settings, workers=workers or settings.workers)


@cli.command()
@click.option("--input", "input_path", required=True, type=_FilePath)
@click.option("--output", "output_path", required=True, type=_FilePath)
@click.option("--mode", type=click.Choice(_MODES), default=None)
@click.option("--raw-size", default=None, help="WxH for headerless input.")
@click.option("--raw-color", type=click.Choice(_COLORS), default="yuv420")
@click.option("--raw-rate", default="30:1")
@click.option("--dump-mv", type=_DirPath, default=None)
@click.option("--dump-holes", type=_DirPath, default=None)
@click.pass_obj
def interpolate(
    state: CliState,
    input_path: Path,
    output_path: Path,
    mode: str | None,
    raw_size: str | None,
    raw_color: str,
    raw_rate: str,
    dump_mv: Path | None,
    dump_holes: Path | None,
) -> None:
    """Double the frame rate of a sequence."""
    cfg = state.engine(mode)
    _, frames = _read_input(input_path, raw_size, raw_color, raw_rate)
    sets = None
    if _dumping(dump_mv, dump_holes):
        sets = trace_pairs(consecutive_pairs(frames), cfg, state.workers)
    output = double_rate(frames, cfg, state.workers, sets)
    save_sequence(output_path, output[0].meta, output)

    if sets is not None:
        chains = (
            (f"pair_{i:04d}", f_p, chain)
            for i, (f_p, chain) in enumerate(zip(frames, sets, strict=False))
        )
        _write_dumps(chains, dump_mv, dump_holes)
    stderr_console.print(
        f"{len(frames)} frames -> {len(output)} frames ({cfg.mode.value}) "
        f"written to {output_path}"
    )


@cli.command()
@click.option("--input", "input_path", required=True, type=_FilePath)
@click.option("--mode", type=click.Choice([*_MODES, "all"]), default=None)
@click.option("--report", "report_path", type=_FilePath, default=None)
@click.option("--frames", "frame_limit", type=click.IntRange(min=3), default=None)
@click.option("--name", default=None, help="Sequence name; defaults to the file stem.")
@click.option("--border", type=click.IntRange(min=0), default=None)
@click.option("--baselines", is_flag=True, help="With --mode all, add non-MC rows.")
@click.option("--raw-size", default=None, help="WxH for headerless input.")
@click.option("--raw-color", type=click.Choice(_COLORS), default="yuv420")
@click.option("--raw-rate", default="30:1")
@click.option("--dump-mv", type=_DirPath, default=None)
@click.option("--dump-holes", type=_DirPath, default=None)
@click.pass_obj
def evaluate(
    state: CliState,
    input_path: Path,
    mode: str | None,
    report_path: Path | None,
    frame_limit: int | None,
    name: str | None,
    border: int | None,
    baselines: bool,
    raw_size: str | None,
    raw_color: str,
    raw_rate: str,
    dump_mv: Path | None,
    dump_holes: Path | None,
) -> None:
    """Withhold odd frames, rebuild them and report PSNR."""
    settings = state.settings
    sequence_name = name or input_path.stem
    trim = settings.trim_border if border is None else border
    _, frames = _read_input(input_path, raw_size, raw_color, raw_rate, frame_limit)
    sets = None
    if _dumping(dump_mv, dump_holes):
        sets = trace_pairs(odd_frame_pairs(frames), settings.engine, state.workers)

    comparison: ModeComparison | None = None
    if mode == "all":
        comparison = compare_modes(
            frames,
            settings.engine,
            sequence_name=sequence_name,
            include_baselines=baselines,
            workers=state.workers,
            border=trim,
            cap_db=settings.psnr_cap_db,
            sets=sets,
        )
        reports = list(comparison.reports.values())
        csv_text = comparison.to_csv()
    else:
        report = run_protocol(
            frames,
            state.engine(mode),
            sequence_name=sequence_name,
            workers=state.workers,
            border=trim,
            cap_db=settings.psnr_cap_db,
            sets=sets,
        )
        reports = [report]
        csv_text = report.to_csv()

    if report_path is None:
        click.echo(csv_text, nl=False)
    else:
        report_path.write_text(csv_text, encoding="utf-8", newline="")

    if sets is not None:
        chains = (
            (f"frame_{k:04d}", frames[k - 2], chain)
            for k, chain in zip(odd_frame_indices(len(frames)), sets, strict=True)
        )
        _write_dumps(chains, dump_mv, dump_holes)
    stderr_console.print(_summary_table(sequence_name, reports, comparison))


@cli.command()
@click.option("--spec", "pairs", multiple=True, help="key=value, repeatable.")
@click.option("--spec-file", type=_FilePath, default=None, help="YAML or JSON spec.")
@click.option("--output", "output_path", required=True, type=_FilePath)
def synth(pairs: tuple[str, ...], spec_file: Path | None, output_path: Path) -> None:
    """Render a deterministic synthetic sequence."""
    base = load_config_file(spec_file) if spec_file is not None else None
    spec = parse_synth_args(pairs, base)
    frames = synth_sequence(spec)
    save_sequence(output_path, spec.meta, frames)
    stderr_console.print(
        f"{len(frames)} frames {spec.width}x{spec.height} written to {output_path}"
    )


def cli_main(argv: Sequence[str] | None = None) -> int:
    """Run the CLI and return its exit code instead of exiting."""
    try:
        result = cli.main(
            args=list(argv) if argv is not None else None,
            prog_name="fruc",
            standalone_mode=False,
        )
    except click.ClickException as e:
        e.show()
        return 1
    except click.Abort:
        click.echo("fruc: aborted", err=True)
        return 1
    except FrucError as e:
        click.echo(f"fruc: error: {e.message}", err=True)
        return e.exit_code
    except OSError as e:
        click.echo(f"fruc: error: {e}", err=True)
        return 2
    except Exception as e:  # noqa: BLE001
        with contextlib.suppress(type(e)), error_boundary("cli", "main"):
            raise
        click.echo(f"fruc: error: {type(e).__name__}: {e}", err=True)
        return 2
    return result if isinstance(result, int) else 0


def main() -> None:
    sys.exit(cli_main())
