"""
Unit tests for bilateral compensation, OBMC and the non-compensated baselines.
"""

import numpy as np
import pytest

from app.fruc.core.error_handling import DimensionMismatchError, MotionFieldError
from app.fruc.interpolation.bilateral import (
    bilateral_mci,
    compensate_plane,
    frame_average,
    frame_repeat,
    obmc,
)
from app.fruc.models import Anchor, ColorMode
from app.fruc.motion.models import MotionField
from app.fruc.tests.fixtures.frames import (
    constant_frame,
    make_frame,
    random_frame,
    textured_frame,
)
from app.fruc.tests.fixtures.oracles import naive_bilateral


def bilateral_field(vectors, block=8, search=8):
    vectors = np.asarray(vectors, dtype=np.int32)
    return MotionField(
        anchor=Anchor.INTERPOLATED_FRAME,
        block_size=block,
        search_range=search,
        vectors=vectors,
        costs=np.zeros(vectors.shape[:2], dtype=np.int64),
    )


def random_field(rng, rows, cols, search=4, block=8):
    return bilateral_field(
        rng.integers(-search, search + 1, size=(rows, cols, 2)), block, search
    )


class TestBilateralMci:
    """Plain per-block symmetric compensation."""

    def test_static_pair_zero_field(self, rng):
        """f_p = f_n with zero motion reproduces the frame."""
        frame = random_frame(rng, 32, 16, ColorMode.YUV420)
        field = bilateral_field(np.zeros((2, 4, 2)))
        assert bilateral_mci(frame, frame, field) == frame

    def test_constants_average(self, rng):
        """Constant 40 and 60 give 50 whatever the vectors."""
        f_p = constant_frame(32, 32, 40)
        f_n = constant_frame(32, 32, 60)
        result = bilateral_mci(f_p, f_n, random_field(rng, 4, 4))
        assert (result.luma == 50).all()

    def test_rounds_half_up(self):
        """(3 + 4) / 2 rounds to 4."""
        result = bilateral_mci(
            constant_frame(8, 8, 3),
            constant_frame(8, 8, 4),
            bilateral_field(np.zeros((1, 1, 2))),
        )
        assert (result.luma == 4).all()

    def test_matches_per_pixel_oracle(self, rng):
        """Random frames and vectors against the double loop."""
        f_p = random_frame(rng, 32, 24)
        f_n = random_frame(rng, 32, 24)
        field = random_field(rng, 3, 4)
        result = bilateral_mci(f_p, f_n, field)
        np.testing.assert_array_equal(
            result.luma, naive_bilateral(f_p.luma, f_n.luma, field.vectors, 8)
        )

    def test_shifted_texture_matches_midpoint(self):
        """A (4, 2) shift with field (-2, -1) yields the mid-shift texture."""
        f_p = textured_frame(48, 48)
        f_n = textured_frame(48, 48, offset=(4, 2))
        truth = textured_frame(48, 48, offset=(2, 1))
        field = bilateral_field(np.full((6, 6, 2), (-2, -1)))
        result = bilateral_mci(f_p, f_n, field)
        np.testing.assert_array_equal(result.luma[4:-4, 4:-4], truth.luma[4:-4, 4:-4])

    def test_swap_symmetry(self, rng):
        """Swapping frames and negating the field changes nothing."""
        f_p = random_frame(rng, 32, 32)
        f_n = random_frame(rng, 32, 32)
        field = random_field(rng, 4, 4)
        assert bilateral_mci(f_p, f_n, field) == bilateral_mci(
            f_n, f_p, field.negated()
        )

    def test_rejects_unilateral_field(self, rng):
        """Forward fields are not bilateral."""
        frame = random_frame(rng, 8, 8)
        field = MotionField(
            anchor=Anchor.PREVIOUS_FRAME,
            block_size=8,
            search_range=4,
            vectors=np.zeros((1, 1, 2)),
            costs=np.zeros((1, 1)),
        )
        with pytest.raises(MotionFieldError):
            bilateral_mci(frame, frame, field)

    def test_rejects_mismatched_pair(self, rng):
        """Frames must share a layout."""
        with pytest.raises(DimensionMismatchError):
            bilateral_mci(
                random_frame(rng, 8, 8),
                random_frame(rng, 8, 8, ColorMode.YUV420),
                bilateral_field(np.zeros((1, 1, 2))),
            )

    def test_field_must_tile_plane(self, rng):
        """A 1x1 grid of 8-pixel blocks cannot cover 16x16."""
        frame = random_frame(rng, 16, 16)
        with pytest.raises(MotionFieldError):
            bilateral_mci(frame, frame, bilateral_field(np.zeros((1, 1, 2))))


class TestObmc:
    """Overlapped block compensation."""

    def test_all_ones_stay_ones(self):
        """Weights sum to one everywhere, for 50 random fields."""
        rng = np.random.default_rng(4)
        ones = constant_frame(32, 32, 1, ColorMode.YUV420)
        for _ in range(50):
            result = obmc(ones, ones, random_field(rng, 4, 4), margin=2)
            assert result == ones

    def test_uniform_field_equals_bilateral(self, rng):
        """With one shared vector the overlap changes nothing."""
        f_p = random_frame(rng, 32, 32)
        f_n = random_frame(rng, 32, 32)
        field = bilateral_field(np.full((4, 4, 2), (1, -2)))
        assert obmc(f_p, f_n, field, margin=2) == bilateral_mci(f_p, f_n, field)

    def test_region_weights(self):
        """Interior, edge strip and corner pixels by hand."""
        f_p = make_frame(np.tile(np.arange(16) * 10, (16, 1)))
        f_n = constant_frame(16, 16, 0)
        field = bilateral_field([[(0, 0), (1, 0)], [(2, 0), (3, 0)]])
        result = obmc(f_p, f_n, field, margin=2).luma

        # interior of block (0, 0): 40 / 2
        assert result[4, 4] == 20
        # right strip: blocks (0, 0) and (0, 1) read x = 7 and 8
        assert result[4, 7] == 38
        # corner: four blocks read x = 7, 8, 9, 10 -> 340 / 8 rounded up
        assert result[7, 7] == 43
        # frame-left strip has no left neighbour; lower neighbour reads x = 3
        assert result[7, 1] == 10

    def test_margin_zero_is_bilateral(self, rng):
        """margin 0 is plain compensation."""
        f_p = random_frame(rng, 32, 32)
        f_n = random_frame(rng, 32, 32)
        field = random_field(rng, 4, 4)
        assert obmc(f_p, f_n, field, margin=0) == bilateral_mci(f_p, f_n, field)

    def test_swap_symmetry(self, rng):
        """Swap-and-negate also holds with overlap."""
        f_p = random_frame(rng, 32, 32)
        f_n = random_frame(rng, 32, 32)
        field = random_field(rng, 4, 4)
        assert obmc(f_p, f_n, field, 2) == obmc(f_n, f_p, field.negated(), 2)

    def test_output_in_range_and_between_inputs(self, rng):
        """Averages of samples stay within the sample range."""
        f_p = constant_frame(32, 32, 250)
        f_n = constant_frame(32, 32, 255)
        result = obmc(f_p, f_n, random_field(rng, 4, 4), 3)
        assert result.luma.min() >= 250
        assert result.luma.max() <= 255

    def test_margin_too_large(self, rng):
        """Twice the margin must stay below the block size."""
        frame = random_frame(rng, 8, 8)
        with pytest.raises(MotionFieldError):
            obmc(frame, frame, bilateral_field(np.zeros((1, 1, 2))), margin=4)

    def test_chroma_uses_half_vectors(self):
        """Chroma of a (2, 0) field reads one chroma sample over."""
        luma = np.zeros((16, 16), dtype=np.uint8)
        u = np.tile(np.arange(8, dtype=np.uint8) * 10, (8, 1))
        f_p = make_frame(luma, ColorMode.YUV420).with_planes((luma, u, u))
        f_n = f_p.with_planes((luma, np.zeros_like(u), np.zeros_like(u)))
        field = bilateral_field(np.full((2, 2, 2), (2, 0)))
        result = obmc(f_p, f_n, field, margin=2)
        # chroma vector (1, 0): u[y, x + 1] / 2
        assert result.chroma_u[3, 3] == 20


class TestCompensatePlane:
    """Plane-level kernel."""

    def test_int64_result(self, rng):
        """The kernel returns rounded integers before narrowing."""
        plane = rng.integers(0, 256, size=(8, 8), dtype=np.uint8)
        out = compensate_plane(plane, plane, np.zeros((1, 1, 2), np.int32), 8, 2)
        assert out.dtype == np.int64
        np.testing.assert_array_equal(out, plane)


class TestBaselines:
    """Non-compensated interpolators."""

    def test_repeat_returns_previous(self, rng):
        """Zero-order hold."""
        f_p = random_frame(rng, 8, 8)
        assert frame_repeat(f_p, random_frame(rng, 8, 8)) is f_p

    def test_average_rounds_half_up(self):
        """(10 + 11) / 2 -> 11."""
        result = frame_average(constant_frame(4, 4, 10), constant_frame(4, 4, 11))
        assert (result.luma == 11).all()
