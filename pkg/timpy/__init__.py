"""Timoshenko spectral laboratory python tools."""
