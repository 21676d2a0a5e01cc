"""Tests for the lab command layer."""
