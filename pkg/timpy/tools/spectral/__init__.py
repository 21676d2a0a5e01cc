"""Pseudo-spectral analysis of the dissipative Timoshenko system."""
