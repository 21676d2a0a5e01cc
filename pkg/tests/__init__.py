"""Tests for the Timoshenko spectral laboratory."""
