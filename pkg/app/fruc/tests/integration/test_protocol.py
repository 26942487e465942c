"""
Integration tests for the odd-frame evaluation protocol.
"""

import math

import pytest

from app.fruc.config import FrucConfig
from app.fruc.core.error_handling import SequenceError
from app.fruc.evaluation.protocol import compare_modes, run_baseline, run_protocol
from app.fruc.evaluation.synth import Background, SynthSpec, benchmark_suite, synth_sequence
from app.fruc.models import Baseline, ColorMode, InterpolationMode
from app.fruc.pipeline import odd_frame_indices, reconstruct_odd
from app.fruc.tests.fixtures.frames import constant_frame, random_frame

pytestmark = pytest.mark.integration


@pytest.fixture(scope="module")
def panning():
    spec = SynthSpec(
        width=64,
        height=64,
        frame_count=7,
        background=Background(kind="noise", seed=23, velocity=(2, 2)),
    )
    return synth_sequence(spec)


class TestRunProtocol:
    """One mode over a sequence."""

    def test_indices_and_quality(self, panning):
        """Frames 3 and 5 are rebuilt well inside the border."""
        report = run_protocol(panning, FrucConfig(), sequence_name="pan", border=16)
        assert [k for k, _ in report.per_frame] == [3, 5]
        assert report.mode is InterpolationMode.PROPOSED
        assert all(value >= 40.0 for _, value in report.per_frame)

    def test_mode_override(self, panning):
        """An explicit mode wins over the configured one."""
        report = run_protocol(panning, FrucConfig(), "bilateral")
        assert report.mode is InterpolationMode.BILATERAL

    def test_three_frames(self):
        """The middle of three frames is the only one withheld."""
        frames = [constant_frame(16, 16, v) for v in (10, 20, 30)]
        report = run_protocol(frames, FrucConfig())
        assert [k for k, _ in report.per_frame] == [2]
        assert report.per_frame[0][1] == math.inf

    def test_too_few_frames(self):
        """Two frames cannot be evaluated."""
        frames = [constant_frame(16, 16, 0)] * 2
        with pytest.raises(SequenceError) as exc_info:
            run_protocol(frames, FrucConfig())
        assert exc_info.value.context.component == "evaluation"


class TestIsolation:
    """Withheld frames only serve as references for scoring."""

    @pytest.mark.parametrize("mode", list(InterpolationMode))
    def test_scrambled_withheld_frames(self, panning, rng, mode):
        """Replacing every withheld frame with noise changes no reconstruction."""
        scrambled = list(panning)
        for k in odd_frame_indices(len(panning)):
            scrambled[k - 1] = random_frame(rng, 64, 64, ColorMode.YUV420)
        assert scrambled[2] != panning[2]

        cfg = FrucConfig().with_mode(mode)
        assert reconstruct_odd(scrambled, cfg) == reconstruct_odd(panning, cfg)

    def test_scores_follow_the_reference(self, panning, rng):
        """Scrambled references lower the score, not the reconstruction."""
        scrambled = list(panning)
        scrambled[2] = random_frame(rng, 64, 64, ColorMode.YUV420)
        clean = run_protocol(panning, FrucConfig(), border=16)
        noisy = run_protocol(scrambled, FrucConfig(), border=16)
        assert noisy.per_frame[0][1] < 20.0 < clean.per_frame[0][1]
        assert noisy.per_frame[1] == clean.per_frame[1]


class TestBaselines:
    """Non-compensated interpolators."""

    def test_repeat_on_static_sequence(self):
        """Repeating a frame of a static sequence is exact."""
        frames = [constant_frame(16, 16, 77)] * 5
        report = run_baseline(frames, Baseline.FRAME_REPEAT)
        assert report.per_frame == ((3, math.inf),)
        assert report.average_db == 100.0

    def test_average_loses_on_motion(self, panning):
        """Plain averaging scores below motion compensation on a pan."""
        averaged = run_baseline(panning, "frame_average", border=16)
        compensated = run_protocol(panning, FrucConfig(), border=16)
        assert averaged.average_db < compensated.average_db


class TestCompareModes:
    """All methods on one sequence."""

    def test_keys(self, panning):
        """Three modes, then both baselines when requested."""
        comparison = compare_modes(panning, FrucConfig(), include_baselines=True)
        assert list(comparison.reports) == [
            "unilateral",
            "bilateral",
            "proposed",
            "frame_repeat",
            "frame_average",
        ]

    def test_csv_is_deterministic(self, panning):
        """Two runs produce byte-identical reports."""
        first = compare_modes(panning, FrucConfig(), sequence_name="pan").to_csv()
        second = compare_modes(panning, FrucConfig(), sequence_name="pan").to_csv()
        assert first == second
        assert first.startswith("frame,unilateral,bilateral,proposed\n")

    def test_parallel_matches_sequential(self, panning):
        """Worker count does not change the numbers."""
        cfg = FrucConfig()
        sequential = run_protocol(panning, cfg, "unilateral")
        parallel = run_protocol(panning, cfg, "unilateral", workers=2)
        assert sequential.per_frame == parallel.per_frame

    def test_benchmark_frames_stay_below_cap(self):
        """No withheld frame of the suite is rebuilt exactly in any mode."""
        for name, spec in benchmark_suite(96, 80, 7):
            comparison = compare_modes(synth_sequence(spec), FrucConfig(), sequence_name=name)
            for report in comparison.reports.values():
                assert all(math.isfinite(value) for _, value in report.per_frame), name

    @pytest.mark.slow
    def test_mode_ordering_on_benchmark_suite(self):
        """Proposed is at least as good as unilateral and close to bilateral."""
        cfg = FrucConfig()
        totals = {mode.value: 0.0 for mode in InterpolationMode}
        suite = benchmark_suite(96, 80, 102)
        for name, spec in suite:
            comparison = compare_modes(synth_sequence(spec), cfg, sequence_name=name)
            for key, value in comparison.averages().items():
                totals[key] += value
        averages = {key: total / len(suite) for key, total in totals.items()}

        assert averages["proposed"] >= averages["unilateral"]
        assert averages["proposed"] >= averages["bilateral"] - 0.25
