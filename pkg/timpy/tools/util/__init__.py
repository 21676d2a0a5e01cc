"""Logging and error reporting helpers for the Timoshenko lab."""
