"""Shared types and the base class of the lab commands."""
