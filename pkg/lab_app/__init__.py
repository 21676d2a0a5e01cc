"""Command layer of the Timoshenko spectral laboratory."""
