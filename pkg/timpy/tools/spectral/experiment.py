"""Experiment configuration and initial data for decay runs."""
import copy
import json

import numpy as np

from timpy.tools.spectral.constants import (
    DATA_KIND, ENCODING, EVOLVE_MODE, ConfigDefaults, Tolerance)
from timpy.tools.spectral.errors import GridError, ParameterError, WrapAroundError
from timpy.tools.spectral.grid import Grid
from timpy.tools.spectral.littlewood_paley import BesovSpec, besov_norm, build_filter_bank
from timpy.tools.spectral.model import ModelParams, StateField

# Relative weights of v, u, z, y in generated data; u and z carry the mass
# that survives at low frequency
DATA_WEIGHTS = (1.0, 0.5, -0.75, 0.25)
# Smallest width in grid spacings
MIN_WIDTH_SAMPLES = 4


# .....................................................................................
def _merge(defaults, overrides):
    merged = copy.deepcopy(defaults)
    for key, val in (overrides or {}).items():
        if isinstance(val, dict) and isinstance(merged.get(key), dict):
            # A time spec replaces, never mixes, snapshots and log_range
            if key == "times":
                merged[key] = copy.deepcopy(val)
            else:
                merged[key] = _merge(merged[key], val)
        else:
            merged[key] = copy.deepcopy(val)
    return merged


# .....................................................................................
class ExperimentConfig:
    """Validated configuration of one decay experiment.

    Attributes:
        label (str): key used to merge parallel results.
        mode (str): EVOLVE_MODE of the run.
        grid (timpy.tools.spectral.grid.Grid): computational grid.
        params (timpy.tools.spectral.model.ModelParams): system parameters.
        data (dict): initial data spec with kind, amplitude, width, seed and q.
        times (numpy.ndarray): snapshot times.
        t_lo (float): start of the fit window.
        t_hi (float): end of the fit window.
        tolerances (dict): slope tolerance per norm label.
        regularity_qs (list of int): shells of the regularity-loss trend run by
            the linear suite when a != 1.
        norms (list of dict): requested norms with ell, space, optional tolerance.
        dt (float): RK4 step, None for the CFL limit.
    """

    # ........................
    def __init__(self, config_dict):
        """Constructor.

        Args:
            config_dict (dict): complete configuration, see ConfigDefaults.

        Raises:
            ParameterError: on invalid entries.
            WrapAroundError: on a fit window beyond the wrap-around time.
        """
        self._raw = copy.deepcopy(config_dict)
        self.label = str(config_dict.get("label", "experiment"))
        self.mode = config_dict["mode"]
        if self.mode not in EVOLVE_MODE.values():
            raise ParameterError(
                f"Unknown mode {self.mode!r}, use one of {EVOLVE_MODE.values()}")
        try:
            self.grid = Grid(config_dict["grid"]["L"], config_dict["grid"]["N"])
        except KeyError as e:
            raise ParameterError(f"Grid spec missing key {e}")
        self.params = ModelParams.init_from_dict(config_dict["params"])
        self.data = dict(config_dict["data"])
        if self.data.get("kind") not in DATA_KIND.values():
            raise ParameterError(
                f"Unknown data kind {self.data.get('kind')!r}, "
                f"use one of {DATA_KIND.values()}")
        self.times = self._parse_times(config_dict["times"])
        fit = config_dict["fit"]
        self.t_lo = float(fit["t_lo"])
        self.t_hi = float(fit["t_hi"])
        self.tolerances = dict(fit.get("tolerances") or {})
        self.regularity_qs = [int(q) for q in fit.get("regularity_qs") or []]
        self.norms = [dict(n) for n in config_dict.get("norms") or []]
        self.dt = None if config_dict.get("dt") is None else float(config_dict["dt"])
        self.validate()

    # ........................
    @staticmethod
    def _parse_times(time_spec):
        if "snapshots" in time_spec:
            times = np.asarray(time_spec["snapshots"], dtype=np.float64)
        elif "log_range" in time_spec:
            rng = time_spec["log_range"]
            t_min, t_max = float(rng["t_min"]), float(rng["t_max"])
            if not 0 < t_min < t_max:
                raise ParameterError("log_range needs 0 < t_min < t_max")
            times = np.logspace(np.log10(t_min), np.log10(t_max), int(rng["count"]))
        else:
            raise ParameterError("Time spec needs `snapshots` or `log_range`")
        if times.ndim != 1 or len(times) == 0 or np.any(np.diff(times) <= 0):
            raise ParameterError("Snapshot times must be strictly increasing")
        if times[0] < 0:
            raise ParameterError("Snapshot times must be >= 0")
        return times

    # ........................
    def validate(self):
        """Check the fit window against the snapshots and the wrap-around time.

        Raises:
            ParameterError: on a window outside the snapshot range.
            WrapAroundError: on t_hi > L / (2 max(1, a)).
        """
        if not self.t_lo < self.t_hi:
            raise ParameterError(f"Fit window [{self.t_lo}, {self.t_hi}] is empty")
        slack = Tolerance.TIME * max(1.0, self.times[-1])
        if self.t_lo < self.times[0] - slack or self.t_hi > self.times[-1] + slack:
            raise ParameterError(
                f"Fit window [{self.t_lo}, {self.t_hi}] outside snapshots "
                f"[{self.times[0]}, {self.times[-1]}]")
        limit = wrap_around_time(self.grid, self.params)
        if self.t_hi > limit * (1 + Tolerance.TIME):
            raise WrapAroundError(
                f"Fit window end {self.t_hi} exceeds the wrap-around time {limit} "
                f"of {self.grid}")

    # ........................
    def tolerance_for(self, label, default):
        """Return the configured slope tolerance for a norm label.

        Args:
            label (str): norm label, e.g. `L2(ell=0)`.
            default (float): tolerance when none is configured.

        Returns:
            float
        """
        return float(self.tolerances.get(label, default))

    # ........................
    def to_dict(self):
        """Return the configuration as a dictionary.

        Returns:
            dict
        """
        return copy.deepcopy(self._raw)

    # ........................
    def replace(self, **changes):
        """Return a copy with top-level or nested changes merged in.

        Args:
            **changes: entries merged into the configuration dictionary.

        Returns:
            timpy.tools.spectral.experiment.ExperimentConfig
        """
        return ExperimentConfig(_merge(self._raw, changes))

    # ........................
    @classmethod
    def init_from_dict(cls, config_dict):
        """Create a configuration, filling missing keys with defaults.

        Args:
            config_dict (dict): possibly partial configuration.

        Returns:
            timpy.tools.spectral.experiment.ExperimentConfig

        Note:
            Nonlinear and Duhamel runs without a data amplitude use the
                small-data amplitude ConfigDefaults.NONLINEAR_AMPLITUDE.
        """
        merged = _merge(ConfigDefaults.experiment(), config_dict)
        given_data = (config_dict or {}).get("data") or {}
        if merged["mode"] != EVOLVE_MODE.LINEAR and "amplitude" not in given_data:
            merged["data"]["amplitude"] = ConfigDefaults.NONLINEAR_AMPLITUDE
        return cls(merged)

    # ........................
    @classmethod
    def init_from_file(cls, filename):
        """Read a JSON configuration file.

        Args:
            filename (str): JSON file.

        Returns:
            timpy.tools.spectral.experiment.ExperimentConfig
        """
        with open(filename, encoding=ENCODING) as inf:
            config_dict = json.load(inf)
        return cls.init_from_dict(config_dict)


# .....................................................................................
def wrap_around_time(grid, params):
    """Time L / (2 max(1, a)) after which waves meet their periodic images."""
    return grid.length / (2.0 * params.max_speed)


# .....................................................................................
def _unit_peak(profile):
    peak = np.max(np.abs(profile))
    if peak == 0:
        raise GridError("Initial data profile vanishes on the grid")
    return profile / peak


# .....................................................................................
def _base_profiles(spec, grid):
    kind = spec["kind"]
    width = float(spec.get("width", 1.0))
    if not width > 0:
        raise ParameterError(f"Data width {width} must be positive")
    if width < MIN_WIDTH_SAMPLES * grid.dx:
        raise GridError(f"Data width {width} is not resolved by {grid}")
    x = grid.x
    if kind == DATA_KIND.GAUSSIAN:
        base = np.exp(-(x / width) ** 2)
        return np.stack([base] * 4)
    if kind == DATA_KIND.COMPACT_BUMP:
        if width >= grid.length / 4:
            raise ParameterError(f"Bump width {width} must be below L/4={grid.length / 4}")
        r = x / width
        inside = np.abs(r) < 1
        base = np.zeros_like(x)
        base[inside] = np.exp(1.0 - 1.0 / (1.0 - r[inside] ** 2))
        return np.stack([base] * 4)
    if kind == DATA_KIND.RANDOM:
        rng = np.random.default_rng(int(spec.get("seed", 0)))
        nh = grid.n // 2 + 1
        kmax = min(nh - 2, int(np.floor(1.0 / (width * grid.dxi))))
        if kmax < 1:
            raise GridError(f"Data width {width} leaves no modes on {grid}")
        coeffs = np.zeros((4, nh), dtype=np.complex128)
        coeffs[:, 1:kmax + 1] = (
            rng.normal(size=(4, kmax)) + 1j * rng.normal(size=(4, kmax)))
        return np.stack([_unit_peak(p) for p in grid.irfft(coeffs)])
    if kind == DATA_KIND.SHELL:
        bank = build_filter_bank(grid)
        q = int(spec.get("q", 0))
        # A broad Gaussian carries every shell below 1/width
        wide = np.exp(-(x / width) ** 2)
        base = _unit_peak(bank.block(wide, q, homogeneous=True))
        return np.stack([base] * 4)
    raise ParameterError(f"Unknown data kind {kind!r}")


# .....................................................................................
def initial_data(spec, grid):
    """Generate smooth initial data.

    Args:
        spec (dict): kind, amplitude, width, seed (random kind) and q (shell kind).
        grid (timpy.tools.spectral.grid.Grid): the grid.

    Returns:
        timpy.tools.spectral.model.StateField: amplitude times a fixed profile of
            unit peak per component, weighted by DATA_WEIGHTS.

    Raises:
        ParameterError: on an unknown kind, a bump wider than L/4 or a
            non-positive width.
        GridError: on a width not resolved by the grid.
    """
    amplitude = float(spec.get("amplitude", 1.0))
    if not np.isfinite(amplitude):
        raise ParameterError(f"Amplitude {amplitude} must be finite")
    base = _base_profiles(spec, grid)
    weights = np.asarray(DATA_WEIGHTS)[:, None]
    return StateField.from_array(grid, amplitude * (weights * base))


# .....................................................................................
def data_norms(U0, bank=None):
    """Norms of initial data used to normalize decay estimates.

    Args:
        U0 (timpy.tools.spectral.model.StateField): initial state.
        bank (timpy.tools.spectral.littlewood_paley.DyadicFilterBank): filter bank.

    Returns:
        dict with L1, B32 (B^{3/2}_{2,1}), Bdot_neg_half (Ḃ^{-1/2}_{2,∞}) and
            M0, the sum of the last two.
    """
    bank = bank or build_filter_bank(U0.grid)
    b32 = besov_norm(bank, U0, BesovSpec(1.5, 2, 1))
    bneg = besov_norm(bank, U0, BesovSpec(-0.5, 2, np.inf, homogeneous=True))
    return {
        "L1": U0.grid.lp_norm(U0.data, 1, vector=True),
        "B32": b32,
        "Bdot_neg_half": bneg,
        "M0": b32 + bneg,
    }
