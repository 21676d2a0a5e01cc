"""Tests for the logging and error helpers."""
