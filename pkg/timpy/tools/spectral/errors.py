"""Exceptions raised by the Timoshenko spectral tools."""


# .....................................................................................
class TimoshenkoError(Exception):
    """Base class for all laboratory errors."""


# .....................................................................................
class ParameterError(TimoshenkoError, ValueError):
    """Invalid parameter, exponent, index range or configuration value."""


# .....................................................................................
class ConsistencyError(TimoshenkoError):
    """Nonlinearity inconsistent with the wave speed or its validity interval."""


# .....................................................................................
class GridError(TimoshenkoError):
    """Field does not match the grid, or the grid is unusable."""


# .....................................................................................
class EigenSolverError(TimoshenkoError):
    """Eigenvalue computation failed at a frequency."""

    def __init__(self, xi, msg=None):
        self.xi = xi
        super().__init__(msg or f"Eigenvalue solver failed at xi={xi!r}")


# .....................................................................................
class StabilityError(TimoshenkoError):
    """Time step violates the CFL guard."""


# .....................................................................................
class BlowUpError(TimoshenkoError):
    """Non-finite state encountered while integrating."""

    def __init__(self, time, msg=None):
        self.time = time
        super().__init__(
            msg or f"Non-finite state at t={time!r}; reduce the data amplitude")


# .....................................................................................
class DecayFloorError(TimoshenkoError):
    """Non-positive norm values inside a fit window."""


# .....................................................................................
class WrapAroundError(TimoshenkoError):
    """Observation window exceeds the periodic wrap-around time."""
