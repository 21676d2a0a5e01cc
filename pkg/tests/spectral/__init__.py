"""Tests for the spectral library modules."""
