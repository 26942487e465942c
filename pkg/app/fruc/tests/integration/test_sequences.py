"""
End-to-end interpolation on synthetic sequences with known ground truth.
"""

from fractions import Fraction

import numpy as np
import pytest

from app.fruc.config import FrucConfig
from app.fruc.evaluation.metrics import psnr
from app.fruc.evaluation.synth import Background, Mover, SynthSpec, render_frame
from app.fruc.models import ColorMode, InterpolationMode
from app.fruc.pipeline import interpolate_between, interpolate_set
from app.fruc.tests.fixtures.frames import random_frame

pytestmark = pytest.mark.integration


def panning_spec(width, height, frames):
    return SynthSpec(
        width=width,
        height=height,
        frame_count=frames,
        background=Background(kind="noise", seed=17, velocity=(2, 2)),
    )


def assert_mid_frames_reconstructed(spec, cfg, border, threshold_db):
    for t in range(spec.frame_count - 1):
        middle = interpolate_between(
            render_frame(spec, t), render_frame(spec, t + 1), cfg
        )
        truth = render_frame(spec, Fraction(2 * t + 1, 2))
        assert psnr(truth, middle, border) >= threshold_db


class TestStaticIdempotence:
    """Interpolating a frame with itself returns it bit-exactly."""

    def test_random_frames_every_mode(self):
        """20 random 4:2:0 frames, unaligned size, default configuration."""
        rng = np.random.default_rng(1)
        cfg = FrucConfig()
        for _ in range(20):
            frame = random_frame(rng, 40, 24, ColorMode.YUV420)
            for mode in InterpolationMode:
                assert interpolate_between(frame, frame, cfg.with_mode(mode)) == frame

    @pytest.mark.slow
    def test_cif_frames_every_mode(self):
        """20 random frames at full CIF size."""
        rng = np.random.default_rng(2)
        cfg = FrucConfig()
        for _ in range(20):
            frame = random_frame(rng, 352, 288, ColorMode.YUV420)
            for mode in InterpolationMode:
                assert interpolate_between(frame, frame, cfg.with_mode(mode)) == frame


class TestGlobalMotion:
    """A texture translating by (2, 2) per frame."""

    def test_small_frames(self):
        """Proposed mode rebuilds the half-step frame away from the border."""
        assert_mid_frames_reconstructed(
            panning_spec(64, 64, 4), FrucConfig(), border=16, threshold_db=40.0
        )

    @pytest.mark.slow
    def test_cif_sequence(self):
        """352x288, 11 frames, 16-pixel border excluded."""
        assert_mid_frames_reconstructed(
            panning_spec(352, 288, 11), FrucConfig(), border=16, threshold_db=40.0
        )

    def test_every_mode_recovers_translation(self):
        """All three branches agree on a pure translation."""
        spec = panning_spec(64, 64, 2)
        f_p, f_n = render_frame(spec, 0), render_frame(spec, 1)
        truth = render_frame(spec, Fraction(1, 2))
        cfg = FrucConfig()
        for mode in InterpolationMode:
            middle = interpolate_between(f_p, f_n, cfg.with_mode(mode))
            assert psnr(truth, middle, border=16) >= 40.0


class TestHolePipeline:
    """A fast mover over a flat background."""

    @pytest.fixture
    def pair(self):
        spec = SynthSpec(
            width=64,
            height=32,
            background=Background(kind="flat", value=60),
            movers=(Mover(seed=8, width=16, height=16, x=8, y=8, vx=8, vy=0),),
            color_mode=ColorMode.LUMA_ONLY,
        )
        return render_frame(spec, 0), render_frame(spec, 1)

    def test_forward_splat_leaves_holes(self, pair):
        """The forward accumulator has uncovered pixels."""
        chain = interpolate_set(*pair, FrucConfig())
        assert chain.f_f.hole_count() > 0
        assert chain.f_f.hole_mask()[14, 9]

    def test_merge_fills_every_hole(self, pair):
        """Shared holes take the bilateral value; nothing is left uncovered."""
        chain = interpolate_set(*pair, FrucConfig())
        stats = chain.hole_stats()
        shared = chain.f_f.hole_mask() & chain.f_b.hole_mask()

        assert stats.merged_holes == 0
        assert stats.shared_holes == int(shared.sum())
        np.testing.assert_array_equal(chain.f_i.luma[shared], chain.f_bi.luma[shared])
        forward_only = ~chain.f_f.hole_mask() & chain.f_b.hole_mask()
        np.testing.assert_array_equal(
            chain.f_i.luma[forward_only],
            chain.f_f.planes[0].resolve()[forward_only],
        )
