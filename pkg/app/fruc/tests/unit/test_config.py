"""
Unit tests for configuration loading and validation.
"""

from pathlib import Path

import pytest

import app.fruc
from app.fruc.config import (
    FrucConfig,
    FrucSettings,
    load_config_file,
    load_settings,
    merge_config_sources,
)
from app.fruc.core.error_handling import ConfigurationError
from app.fruc.models import InterpolationMode


@pytest.fixture(autouse=True)
def _clean_env(monkeypatch):
    for name in ("FRUC_WORKERS", "FRUC_LOG_LEVEL", "FRUC_ENGINE__BI_SEARCH"):
        monkeypatch.delenv(name, raising=False)


class TestFrucConfig:
    """Algorithm parameters."""

    def test_defaults(self):
        """Block sizes, windows and margin of the reference setup."""
        cfg = FrucConfig()
        assert (cfg.uni_block, cfg.uni_search) == (8, 16)
        assert (cfg.bi_block, cfg.bi_search) == (16, 8)
        assert cfg.obmc_margin == 2
        assert cfg.mode is InterpolationMode.PROPOSED
        assert cfg.alignment == 16

    def test_alignment_is_lcm(self):
        """Both block grids must tile the padded frame."""
        assert FrucConfig(uni_block=6, bi_block=8).alignment == 24

    def test_margin_must_fit(self):
        """2 * margin must stay below bi_block."""
        with pytest.raises(ConfigurationError) as exc_info:
            FrucConfig.build(bi_block=8, obmc_margin=4)
        assert exc_info.value.exit_code == 1

    def test_sizes_must_be_positive(self):
        """Zero block sizes are rejected with the offending key."""
        with pytest.raises(ConfigurationError) as exc_info:
            FrucConfig.build(uni_block=0)
        assert exc_info.value.context.metadata["config_key"] == "uni_block"

    def test_unknown_key(self):
        """Typos are not silently ignored."""
        with pytest.raises(ConfigurationError):
            FrucConfig.build(bi_blok=16)

    def test_with_mode(self):
        """Mode can be swapped by name."""
        cfg = FrucConfig().with_mode("bilateral")
        assert cfg.mode is InterpolationMode.BILATERAL
        assert cfg.bi_block == 16

    def test_frozen(self):
        """Configs are immutable values."""
        with pytest.raises(ValueError, match="frozen"):
            FrucConfig().bi_block = 4


class TestMergeConfigSources:
    """Layered dictionaries."""

    def test_nested_precedence(self):
        """env > file > defaults, merged key by key."""
        merged = merge_config_sources(
            {"engine": {"bi_block": 16, "bi_search": 8}, "workers": 1},
            {"engine": {"bi_search": 6}, "workers": 2},
            {"engine": {"bi_search": 4}},
        )
        assert merged == {"engine": {"bi_block": 16, "bi_search": 4}, "workers": 2}


class TestLoadSettings:
    """Settings from YAML and the environment."""

    def test_defaults_without_file(self):
        """No file, no environment: built-in defaults."""
        settings = load_settings()
        assert isinstance(settings, FrucSettings)
        assert settings.workers == 1
        assert settings.psnr_cap_db == 100.0

    def test_yaml_file(self, tmp_path):
        """Nested engine keys come from the file."""
        path = tmp_path / "fruc.yaml"
        path.write_text("workers: 3\nengine:\n  bi_search: 6\n  mode: unilateral\n")
        settings = load_settings(path)
        assert settings.workers == 3
        assert settings.engine.bi_search == 6
        assert settings.engine.mode is InterpolationMode.UNILATERAL
        assert settings.engine.bi_block == 16

    def test_shipped_file_matches_defaults(self):
        """The packaged config.yaml documents the built-in defaults."""
        shipped = Path(app.fruc.__file__).parent / "config.yaml"
        assert load_settings(shipped) == load_settings()

    def test_environment_overrides_file(self, tmp_path, monkeypatch):
        """FRUC_ENGINE__BI_SEARCH beats the file value."""
        path = tmp_path / "fruc.yaml"
        path.write_text("engine:\n  bi_search: 6\n  bi_block: 32\n")
        monkeypatch.setenv("FRUC_ENGINE__BI_SEARCH", "4")
        monkeypatch.setenv("FRUC_WORKERS", "2")

        settings = load_settings(path)
        assert settings.engine.bi_search == 4
        assert settings.engine.bi_block == 32
        assert settings.workers == 2

    def test_invalid_value(self, tmp_path):
        """Validation failures become configuration errors."""
        path = tmp_path / "fruc.yaml"
        path.write_text("engine:\n  bi_block: 4\n  obmc_margin: 2\n")
        with pytest.raises(ConfigurationError):
            load_settings(path)


class TestLoadConfigFile:
    """YAML reading."""

    def test_empty_file(self, tmp_path):
        """An empty file is an empty mapping."""
        path = tmp_path / "empty.yaml"
        path.write_text("")
        assert load_config_file(path) == {}

    def test_malformed_yaml(self, tmp_path):
        """Syntax errors are configuration errors."""
        path = tmp_path / "bad.yaml"
        path.write_text("engine: [unclosed\n")
        with pytest.raises(ConfigurationError):
            load_config_file(path)

    def test_non_mapping(self, tmp_path):
        """A top-level list is rejected."""
        path = tmp_path / "list.yaml"
        path.write_text("- 1\n- 2\n")
        with pytest.raises(ConfigurationError):
            load_config_file(path)

    def test_missing_file(self, tmp_path):
        """Unreadable files name the path."""
        with pytest.raises(ConfigurationError) as exc_info:
            load_config_file(tmp_path / "nope.yaml")
        assert "nope.yaml" in exc_info.value.context.metadata["config_key"]
