"""Shared pytest fixtures."""

from __future__ import annotations

from collections.abc import Iterator

import numpy as np
import pytest
import structlog

from app.fruc.config import FrucConfig


@pytest.fixture(autouse=True)
def _reset_structlog() -> Iterator[None]:
    """configure_logging binds the current stderr; drop it after each test."""
    yield
    structlog.reset_defaults()


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def small_cfg() -> FrucConfig:
    """Block sizes and windows small enough for 32x32 frames."""
    return FrucConfig(uni_block=8, uni_search=4, bi_block=8, bi_search=4, obmc_margin=2)
