"""Constants for the Timoshenko spectral laboratory."""
import copy

ENCODING = "utf-8"
ERRINFO_KEYS = ("error", "warning", "info")

# Rough log of integrator progress, in steps
LOG_INTERVAL = 1000

# .............................................................................
FIELD_COMPONENTS = ("v", "u", "z", "y")
X_COLUMN = "x"
FIELD_HEADER = (X_COLUMN, *FIELD_COMPONENTS)
CSV_FLOAT_FORMAT = "%.17g"

TRAJECTORY_META_FNAME = "meta.json"
TRAJECTORY_FIELD_PATTERN = "field_{:04d}.csv"

LEDGER_COLUMNS = ("t", "E0", "E1", "E2", "y_l2_sq", "damping_integral", "residual")
REPORT_COLUMNS = (
    "norm", "ell", "slope", "predicted", "tolerance", "residual", "pass")

# Classic RK4 time step restriction, dt <= CFL_SAFETY * dx / max speed
CFL_SAFETY = 0.5
MIN_GRID_POINTS = 8
MIN_ACTIVE_SHELLS = 3
MIN_SWEEP_POINTS = 100
MIN_FIT_POINTS = 8


# .............................................................................
class SIGMA_KIND:
    """Nonlinearity families for the stress function sigma."""
    LINEAR = "linear"
    SINH = "sinh"
    POLYNOMIAL = "polynomial"

    @classmethod
    def values(cls):
        """Return all family names.

        Returns:
            tuple of the family codes
        """
        return (cls.LINEAR, cls.SINH, cls.POLYNOMIAL)


# .............................................................................
class DATA_KIND:
    """Initial data generators."""
    GAUSSIAN = "gaussian"
    COMPACT_BUMP = "compact-bump"
    RANDOM = "band-limited-random"
    SHELL = "shell"

    @classmethod
    def values(cls):
        """Return all data kinds.

        Returns:
            tuple of the data kind codes
        """
        return (cls.GAUSSIAN, cls.COMPACT_BUMP, cls.RANDOM, cls.SHELL)


# .............................................................................
class NORM_SPACE:
    """Spaces in which decay norms of Λ^ℓ U are measured.

    Note:
        L2: ‖Λ^ℓ U‖ in L², equal to ‖∂_x^k U‖ for integer ℓ=k.
        B: ‖Λ^ℓ U‖ in the inhomogeneous B^{1/2-ℓ}_{2,1}.
        BDOT0: ‖Λ^ℓ U‖ in the homogeneous Ḃ^0_{2,1}.
        X1: B for ℓ < 1/2, BDOT0 otherwise.
        BDOT: ‖U‖ in the homogeneous Ḃ^ℓ_{2,1}.
        B32: ‖U‖ in B^{3/2}_{2,1}, a data norm that does not decay.
    """
    L2 = "L2"
    B = "B"
    BDOT0 = "Bdot0"
    X1 = "X1"
    BDOT = "Bdot"
    B32 = "B32"

    @classmethod
    def values(cls):
        """Return all space codes.

        Returns:
            tuple of the space codes
        """
        return (cls.L2, cls.B, cls.BDOT0, cls.X1, cls.BDOT, cls.B32)

    @classmethod
    def decaying(cls):
        """Return the space codes with a predicted decay rate.

        Returns:
            tuple of the space codes
        """
        return (cls.L2, cls.B, cls.BDOT0, cls.X1, cls.BDOT)


# .............................................................................
class EVOLVE_MODE:
    """Evolution paths of the `evolve` command."""
    LINEAR = "linear"
    NONLINEAR = "nonlinear"
    DUHAMEL = "duhamel"

    @classmethod
    def values(cls):
        """Return all evolution modes.

        Returns:
            tuple of the mode codes
        """
        return (cls.LINEAR, cls.NONLINEAR, cls.DUHAMEL)


# .............................................................................
class ETA_KIND:
    """Dissipation rate profiles."""
    ETA1 = "1"
    ETA2 = "2"
    AUTO = "auto"

    @classmethod
    def values(cls):
        """Return all profile codes.

        Returns:
            tuple of the profile codes
        """
        return (cls.ETA1, cls.ETA2, cls.AUTO)


# .............................................................................
class Tolerance:
    """Numerical tolerances used for validation and consistency checks."""
    # sigma'(0) against a**2
    SOUND_SPEED = 1e-12
    # Equality of real parameters such as a == 1
    PARAM_EQUAL = 1e-12
    # Samples used to check sigma' > 0 over a validity interval
    SIGMA_SAMPLES = 2001
    # Relative slack for CFL and snapshot time comparisons
    TIME = 1e-12
    # Partition of unity on the grid
    PARTITION = 1e-12
    # Eigenvector residual for each eigenvalue of the symbol
    EIGEN_RESIDUAL = 1e-10
    # Series switch for sinh(z) - z
    SINH_SERIES = 1e-2


# .............................................................................
class SweepDefaults:
    """Default frequency sweep for the dissipative structure fit."""
    XI_MIN = 1e-3
    XI_MAX = 1e3
    POINTS = 2000
    ENVELOPE_TIMES = (1.0, 10.0, 100.0)


# .............................................................................
class ConfigDefaults:
    """Defaults for experiment configuration files.

    Note: the reference configuration resolves the low-frequency continuum on
        [50, 400] before waves wrap around the periodic domain.
    """
    EXPERIMENT = {
        "label": "reference",
        "mode": EVOLVE_MODE.LINEAR,
        "grid": {"L": 800.0, "N": 2 ** 14},
        "params": {
            "a": 1.0,
            "gamma": 1.0,
            "sigma": {"kind": SIGMA_KIND.LINEAR},
        },
        "data": {
            "kind": DATA_KIND.GAUSSIAN,
            "amplitude": 1.0,
            "width": 1.0,
            "seed": 0,
            "q": 0,
        },
        "times": {"log_range": {"t_min": 1.0, "t_max": 400.0, "count": 50}},
        "fit": {
            "t_lo": 50.0,
            "t_hi": 400.0,
            "tolerances": {},
            "regularity_qs": [-2, -1, 0, 1],
        },
        "norms": [],
        "dt": None,
    }
    # Default decay norms of the linear suite, with slope tolerances
    LINEAR_NORMS = (
        {"ell": 0.0, "space": NORM_SPACE.L2, "tolerance": 0.05},
        {"ell": 1.0, "space": NORM_SPACE.L2, "tolerance": 0.08},
        {"ell": 0.0, "space": NORM_SPACE.B, "tolerance": 0.05},
        {"ell": 0.5, "space": NORM_SPACE.BDOT0, "tolerance": 0.06},
    )
    # Default decay norms of the nonlinear suite, with slope tolerances
    NONLINEAR_NORMS = (
        {"ell": 0.0, "space": NORM_SPACE.X1, "tolerance": 0.08},
        {"ell": 0.5, "space": NORM_SPACE.X1, "tolerance": 0.10},
    )
    DEFAULT_TOLERANCE = 0.08
    NONLINEAR_AMPLITUDE = 1e-2
    # Orders ℓ of the weighted sup-norm tracker in B^{1/2-ℓ}_{2,1}
    TRACKER_ELLS = (0.0, 0.25)

    @classmethod
    def experiment(cls):
        """Return a fresh copy of the default experiment dictionary.

        Returns:
            dict of default configuration values
        """
        return copy.deepcopy(cls.EXPERIMENT)
