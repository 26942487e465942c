"""
Deterministic synthetic test sequences.

A sequence is a background (flat, or a hashed noise texture that may pan at a
constant integer velocity) with rectangular movers on top. Movers carry their
own texture relative to their top-left corner and translate by an integer
velocity per frame; they are clipped at the frame edge.

Textures come from an xorshift hash of absolute texture coordinates and the
seed, so any frame, including a frame at a half-integer time, can be rendered
directly and byte-identically across runs.
"""

from __future__ import annotations

from collections.abc import Sequence
from fractions import Fraction
from typing import Any, Literal

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator
import structlog

from ..core.error_handling import (
    ConfigurationError,
    ErrorCategory,
    ErrorContext,
    FrucError,
    SynthesisError,
)
from ..models import ColorMode
from ..video.models import Frame, SequenceMeta

logger = structlog.get_logger(__name__)

_MASK32 = 0xFFFFFFFF


class Background(BaseModel):
    """Flat fill or hashed noise texture, optionally panning."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: Literal["flat", "noise"] = "flat"
    value: int = Field(default=128, ge=0, le=255)
    seed: int = Field(default=0, ge=0)
    velocity: tuple[int, int] = (0, 0)


class Mover(BaseModel):
    """Textured rectangle translating at an integer velocity per frame."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    seed: int = Field(ge=0)
    width: int = Field(ge=1)
    height: int = Field(ge=1)
    x: int
    y: int
    vx: int = 0
    vy: int = 0


class SynthSpec(BaseModel):
    """Complete description of a synthetic sequence."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    width: int = Field(default=352, ge=1)
    height: int = Field(default=288, ge=1)
    frame_count: int = Field(default=11, ge=1)
    background: Background = Field(default_factory=Background)
    movers: tuple[Mover, ...] = ()
    color_mode: ColorMode = ColorMode.YUV420
    scale: int = Field(default=1, ge=1)
    rate_num: int = Field(default=30, ge=1)
    rate_den: int = Field(default=1, ge=1)

    @model_validator(mode="after")
    def _check_dimensions(self) -> SynthSpec:
        if self.color_mode is ColorMode.YUV420 and (self.width % 2 or self.height % 2):
            raise ValueError(
                f"4:2:0 sequences need even dimensions, got {self.width}x{self.height}"
            )
        return self

    @property
    def meta(self) -> SequenceMeta:
        return SequenceMeta(
            width=self.width,
            height=self.height,
            rate_num=self.rate_num,
            rate_den=self.rate_den,
            color_mode=self.color_mode,
            frame_count=self.frame_count,
        )


def _hash(
    xs: npt.NDArray[np.int64], ys: npt.NDArray[np.int64], seed: int
) -> npt.NDArray[np.int64]:
    """Xorshift-mixed 32-bit hash of lattice coordinates, reduced to 0..255."""
    salt = ((seed & _MASK32) * 2246822519) & _MASK32
    h = (xs * 374761393 + ys * 668265263 + salt) & _MASK32
    h = h.astype(np.uint32)
    for _ in range(2):
        h ^= h << np.uint32(13)
        h ^= h >> np.uint32(17)
        h ^= h << np.uint32(5)
        h *= np.uint32(0x27D4EB2D)
    return (h >> np.uint32(24)).astype(np.int64)


def texture(
    xs: npt.NDArray[np.int64], ys: npt.NDArray[np.int64], seed: int, scale: int = 1
) -> npt.NDArray[np.uint8]:
    """
    Texture samples at integer texture coordinates.

    scale > 1 bilinearly interpolates a lattice hashed every `scale` pixels,
    which gives smoother content; integer arithmetic, rounded half up.
    """
    if scale == 1:
        return _hash(xs, ys, seed).astype(np.uint8)

    x0, fx = np.divmod(xs, scale)
    y0, fy = np.divmod(ys, scale)
    gx, gy = scale - fx, scale - fy
    weighted = (
        _hash(x0, y0, seed) * gx * gy
        + _hash(x0 + 1, y0, seed) * fx * gy
        + _hash(x0, y0 + 1, seed) * gx * fy
        + _hash(x0 + 1, y0 + 1, seed) * fx * fy
    )
    area = scale * scale
    return ((weighted + area // 2) // area).astype(np.uint8)


def _integral(value: Fraction, what: str) -> int:
    if value.denominator != 1:
        raise SynthesisError(f"{what} {value} is not a whole pixel")
    return int(value)


def render_frame(spec: SynthSpec, time: Fraction | int) -> Frame:
    """
    Render the scene at `time` frames after the start.

    Non-integral times are allowed as long as every position they imply is a
    whole pixel (for example t + 1/2 with even velocities).
    """
    t = Fraction(time)
    yy, xx = np.indices((spec.height, spec.width), dtype=np.int64)

    bg = spec.background
    if bg.kind == "flat":
        luma = np.full((spec.height, spec.width), bg.value, dtype=np.uint8)
    else:
        ox = _integral(bg.velocity[0] * t, "background offset")
        oy = _integral(bg.velocity[1] * t, "background offset")
        luma = texture(xx - ox, yy - oy, bg.seed, spec.scale)

    for mover in spec.movers:
        mx = _integral(mover.x + mover.vx * t, "mover position")
        my = _integral(mover.y + mover.vy * t, "mover position")
        x0, x1 = max(mx, 0), min(mx + mover.width, spec.width)
        y0, y1 = max(my, 0), min(my + mover.height, spec.height)
        if x0 >= x1 or y0 >= y1:
            continue
        luma[y0:y1, x0:x1] = texture(
            xx[y0:y1, x0:x1] - mx, yy[y0:y1, x0:x1] - my, mover.seed, spec.scale
        )

    meta = spec.meta
    if not meta.has_chroma:
        return Frame(meta, luma)
    chroma = np.full(meta.chroma_shape, 128, dtype=np.uint8)
    return Frame(meta, luma, chroma, chroma)


def synth_sequence(spec: SynthSpec) -> list[Frame]:
    """Frames 0 .. frame_count - 1 of the scene."""
    frames = [render_frame(spec, t) for t in range(spec.frame_count)]
    logger.debug(
        "sequence_synthesized",
        width=spec.width,
        height=spec.height,
        frames=len(frames),
        movers=len(spec.movers),
    )
    return frames


def benchmark_suite(
    width: int = 352, height: int = 288, frame_count: int = 102
) -> list[tuple[str, SynthSpec]]:
    """
    Five named scenes with mixed velocities, textures and movers.

    Every background is a panning noise texture, so content enters at the
    frame edges and no withheld frame is reconstructed exactly. Positions and
    sizes scale with the frame; from 80 pixels high, every mover is at least
    one default bilateral block across.
    """
    side = max(8, min(width, height) // 5)

    def mover(
        seed: int, at: tuple[float, float], v: tuple[int, int], size: int
    ) -> Mover:
        return Mover(
            seed=seed,
            width=size,
            height=size,
            x=int(width * at[0]),
            y=int(height * at[1]),
            vx=v[0],
            vy=v[1],
        )

    def scene(background: Background, *movers: Mover, scale: int = 1) -> SynthSpec:
        return SynthSpec(
            width=width,
            height=height,
            frame_count=frame_count,
            background=background,
            movers=movers,
            scale=scale,
        )

    return [
        ("global_pan", scene(Background(kind="noise", seed=11, velocity=(2, 1)))),
        (
            "smooth_pan_mover",
            scene(
                Background(kind="noise", seed=23, velocity=(1, 0)),
                mover(5, (0.1, 0.2), (3, 1), side),
                scale=4,
            ),
        ),
        (
            "crossing_movers",
            scene(
                Background(kind="noise", seed=7, velocity=(0, 1)),
                mover(9, (0.05, 0.1), (4, 0), side * 2),
                mover(19, (0.55, 0.45), (-2, -2), side * 3 // 2),
                scale=4,
            ),
        ),
        (
            "reverse_pan",
            scene(Background(kind="noise", seed=31, velocity=(-2, -1)), scale=2),
        ),
        (
            "diagonal",
            scene(
                Background(kind="noise", seed=41, velocity=(-1, 1)),
                mover(17, (0.6, 0.6), (-3, -2), side * 2),
                scale=8,
            ),
        ),
    ]


def _ints(text: str, count: int, key: str) -> list[int]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != count:
        raise _usage(f"{key} expects {count} comma-separated integers, got {text!r}")
    try:
        return [int(p) for p in parts]
    except ValueError as e:
        raise _usage(f"{key} expects integers, got {text!r}") from e


def _usage(message: str) -> FrucError:
    return FrucError(message, ErrorContext(category=ErrorCategory.USAGE))


def _background(text: str) -> dict[str, Any]:
    kind, _, arg = text.partition(":")
    if kind == "flat":
        return {"kind": "flat", "value": _ints(arg or "128", 1, "background")[0]}
    if kind == "noise":
        return {"kind": "noise", "seed": _ints(arg or "0", 1, "background")[0]}
    raise _usage(f"background must be flat:<value> or noise:<seed>, got {text!r}")


def spec_from_mapping(values: dict[str, Any]) -> SynthSpec:
    """Validate a plain mapping (CLI pairs or a YAML/JSON spec file)."""
    try:
        return SynthSpec.model_validate(values)
    except ValidationError as e:
        first = e.errors()[0]
        key = ".".join(str(part) for part in first["loc"]) or None
        raise ConfigurationError(
            f"Invalid synthetic sequence spec: {first['msg']}", config_key=key, cause=e
        ) from e


def parse_synth_args(
    pairs: Sequence[str], base: dict[str, Any] | None = None
) -> SynthSpec:
    """
    Build a spec from key=value pairs.

    Keys: width, height, frames, background (flat:<v> | noise:<seed>),
    bg_velocity (vx,vy), color (luma_only | yuv420), mover (repeatable,
    seed,w,h,x,y,vx,vy), scale. Values given here override `base`.
    """
    values: dict[str, Any] = dict(base or {})
    background: dict[str, Any] = dict(values.pop("background", None) or {})
    movers: list[Any] = list(values.pop("movers", None) or [])

    for pair in pairs:
        key, sep, raw = pair.partition("=")
        key, raw = key.strip(), raw.strip()
        if not sep:
            raise _usage(f"Expected key=value, got {pair!r}")
        if key in ("width", "height", "scale"):
            values[key] = _ints(raw, 1, key)[0]
        elif key == "frames":
            values["frame_count"] = _ints(raw, 1, key)[0]
        elif key == "color":
            values["color_mode"] = raw
        elif key == "background":
            velocity = background.get("velocity", (0, 0))
            background = {"velocity": velocity, **_background(raw)}
        elif key == "bg_velocity":
            background["velocity"] = tuple(_ints(raw, 2, key))
        elif key == "mover":
            fields = ("seed", "width", "height", "x", "y", "vx", "vy")
            movers.append(dict(zip(fields, _ints(raw, 7, key), strict=True)))
        else:
            raise _usage(f"Unknown synth key {key!r}")

    values["background"] = background
    values["movers"] = movers
    return spec_from_mapping(values)
