"""Numerical tools for the Timoshenko spectral laboratory."""
