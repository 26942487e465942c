"""
Unit tests for logging configuration and stage timing.
"""

import json

import structlog

from app.fruc.core.observability import configure_logging, stage_timer


def json_lines(text):
    return [json.loads(line) for line in text.splitlines() if line.startswith("{")]


class TestConfigureLogging:
    """structlog setup."""

    def test_json_to_stderr(self, capsys):
        """JSON lines go to stderr; stdout stays clean."""
        configure_logging("INFO", json_output=True)
        structlog.get_logger("test").info("sequence_loaded", frames=3)

        captured = capsys.readouterr()
        assert captured.out == ""
        record = json_lines(captured.err)[-1]
        assert record["event"] == "sequence_loaded"
        assert record["frames"] == 3
        assert record["level"] == "info"
        assert "timestamp" in record

    def test_level_filters(self, capsys):
        """Debug records are dropped at INFO."""
        configure_logging("INFO", json_output=True)
        structlog.get_logger("test").debug("hidden")
        assert json_lines(capsys.readouterr().err) == []

    def test_unknown_level_falls_back_to_info(self, capsys):
        """A bad level name does not break logging."""
        configure_logging("CHATTY", json_output=True)
        log = structlog.get_logger("test")
        log.debug("hidden")
        log.info("shown")
        events = [r["event"] for r in json_lines(capsys.readouterr().err)]
        assert events == ["shown"]

    def test_console_renderer(self, capsys):
        """The default renderer prints the event name."""
        configure_logging("INFO")
        structlog.get_logger("test").info("pair_interpolated")
        assert "pair_interpolated" in capsys.readouterr().err


class TestStageTimer:
    """Per-stage wall time."""

    def test_logs_stage_at_debug(self, capsys):
        """A completed stage reports its name, fields and elapsed time."""
        configure_logging("DEBUG", json_output=True)
        with stage_timer("obmc", margin=2):
            pass

        records = json_lines(capsys.readouterr().err)
        record = next(r for r in records if r["event"] == "stage_completed")
        assert record["stage"] == "obmc"
        assert record["margin"] == 2
        assert record["elapsed_ms"] >= 0

    def test_logs_even_on_failure(self, capsys):
        """The timing record is written when the stage raises."""
        configure_logging("DEBUG", json_output=True)
        try:
            with stage_timer("fusion"):
                raise RuntimeError("boom")
        except RuntimeError:
            pass

        records = json_lines(capsys.readouterr().err)
        assert any(r.get("stage") == "fusion" for r in records)
