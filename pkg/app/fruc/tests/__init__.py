"""Tests for the frame-rate up-conversion engine."""
