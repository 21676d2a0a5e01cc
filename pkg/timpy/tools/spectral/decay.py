"""Decay-rate harness: norm trajectories, log-log fits and sup-norm trackers.

Decay norms of Λ^ℓ U are expected to behave like (1+t)^{-1/4-ℓ/2} for L¹-type
data; fits regress log(value) on log(1+t) by ordinary least squares.
"""
from concurrent.futures import ProcessPoolExecutor
import math

import numpy as np
import pandas as pd

from timpy.tools.spectral.constants import (
    MIN_FIT_POINTS, NORM_SPACE, REPORT_COLUMNS, ConfigDefaults, DATA_KIND, EVOLVE_MODE,
    Tolerance)
from timpy.tools.spectral.errors import DecayFloorError, ParameterError
from timpy.tools.spectral.evolution import (
    evolve_linear_trajectory, integrate_rk4, max_stable_dt)
from timpy.tools.spectral.experiment import ExperimentConfig, initial_data
from timpy.tools.spectral.grid import lp_reduce
from timpy.tools.spectral.littlewood_paley import BesovSpec, build_filter_bank
from timpy.tools.util.logtools import logit


# .....................................................................................
class NormSpec:
    """A decay norm: Λ^ℓ U measured in one of NORM_SPACE."""

    # ........................
    def __init__(self, ell, space, tolerance=None):
        """Constructor.

        Args:
            ell (float): derivative order ℓ >= 0.
            space (str): one of NORM_SPACE.
            tolerance (float): slope tolerance, None for the suite default.

        Raises:
            ParameterError: on a negative order or unknown space.
        """
        self.ell = float(ell)
        if not self.ell >= 0:
            raise ParameterError(f"Norm order ell={ell} must be >= 0")
        if space not in NORM_SPACE.values():
            raise ParameterError(
                f"Unknown norm space {space!r}, use one of {NORM_SPACE.values()}")
        if space == NORM_SPACE.B and self.ell >= 0.5:
            raise ParameterError("B^{1/2-ell} needs ell < 1/2, use Bdot0 or X1")
        self.space = space
        self.tolerance = None if tolerance is None else float(tolerance)

    # ........................
    @classmethod
    def init_from_dict(cls, norm_dict):
        """Create from a configuration entry {ell, space, tolerance}."""
        return cls(norm_dict.get("ell", 0.0), norm_dict.get("space", NORM_SPACE.L2),
                   norm_dict.get("tolerance"))

    # ........................
    @property
    def label(self):
        """Return a label such as `L2(ell=0)`.

        Returns:
            str
        """
        return f"{self.space}(ell={self.ell:g})"

    # ........................
    @property
    def predicted_slope(self):
        """Return −1/4 − ℓ/2, None for a norm without predicted decay.

        Returns:
            float or None
        """
        if self.space not in NORM_SPACE.decaying():
            return None
        return -0.25 - 0.5 * self.ell

    # ........................
    def evaluate(self, states, bank):
        """Evaluate the norm on every snapshot.

        Args:
            states (numpy.ndarray): samples of shape (nt, 4, N) or (4, N).
            bank (timpy.tools.spectral.littlewood_paley.DyadicFilterBank): bank.

        Returns:
            numpy.ndarray of shape (nt,) or float.
        """
        grid = bank.grid
        space = self.space
        if space == NORM_SPACE.X1:
            space = NORM_SPACE.B if self.ell < 0.5 else NORM_SPACE.BDOT0
        if space in (NORM_SPACE.BDOT, NORM_SPACE.B32):
            lifted = np.asarray(states)
        else:
            lifted = grid.frac_deriv(states, self.ell)
        if space == NORM_SPACE.L2:
            mag = np.sqrt(np.sum(lifted * lifted, axis=-2))
            return lp_reduce(mag, 2, grid.dx, axes=-1)
        spec = {
            NORM_SPACE.B: BesovSpec(0.5 - self.ell, 2, 1),
            NORM_SPACE.BDOT0: BesovSpec(0.0, 2, 1, homogeneous=True),
            NORM_SPACE.BDOT: BesovSpec(self.ell, 2, 1, homogeneous=True),
            NORM_SPACE.B32: BesovSpec(1.5, 2, 1),
        }[space]
        qs, norms = bank.block_norms(lifted, 2, spec.homogeneous, vector=True)
        return np.sum(spec.weights(qs) * norms, axis=-1)


# .....................................................................................
class DecayFitReport:
    """Fitted log-log slope of a norm trajectory against the predicted exponent."""

    # ........................
    def __init__(self, label, ell, slope, intercept, residual, n_points,
                 predicted=None, tolerance=None):
        """Constructor.

        Args:
            label (str): norm descriptor.
            ell (float): derivative order of the norm.
            slope (float): fitted slope.
            intercept (float): fitted intercept, log of the prefactor.
            residual (float): RMS of the fit residuals in log space.
            n_points (int): samples used.
            predicted (float): predicted slope, None when nothing is asserted.
            tolerance (float): allowed |slope − predicted|.
        """
        self.label = label
        self.ell = ell
        self.slope = float(slope)
        self.intercept = float(intercept)
        self.residual = float(residual)
        self.n_points = int(n_points)
        self.predicted = predicted
        self.tolerance = tolerance

    # ........................
    @property
    def passed(self):
        """Return True when the slope is within tolerance of the prediction.

        Returns:
            bool: False when no prediction or tolerance is set.
        """
        if self.predicted is None or self.tolerance is None:
            return False
        return bool(abs(self.slope - self.predicted) <= self.tolerance)

    # ........................
    def to_dict(self):
        """Return a report row with columns norm, ell, slope, predicted, tolerance,
        residual and pass.

        Returns:
            dict
        """
        return dict(zip(REPORT_COLUMNS, (
            self.label, self.ell, self.slope, self.predicted, self.tolerance,
            self.residual, self.passed)))

    # ........................
    def __repr__(self):
        return (f"DecayFitReport({self.label}: slope={self.slope:.4f}, "
                f"predicted={self.predicted}, pass={self.passed})")


# .....................................................................................
def fit_decay(times, values, window, predicted=None, tolerance=None, label="series",
              ell=0.0):
    """Least-squares slope of log(value) against log(1+t) inside a window.

    Args:
        times (array-like): sample times.
        values (array-like): positive norm values.
        window (tuple): (t_lo, t_hi), inclusive.
        predicted (float): predicted slope.
        tolerance (float): allowed deviation from the prediction.
        label (str): norm descriptor.
        ell (float): derivative order of the norm.

    Returns:
        timpy.tools.spectral.decay.DecayFitReport

    Raises:
        ParameterError: with fewer than 8 samples in the window.
        DecayFloorError: on a non-positive value in the window.
    """
    times = np.asarray(times, dtype=np.float64)
    values = np.asarray(values, dtype=np.float64)
    t_lo, t_hi = window
    slack = Tolerance.TIME * max(1.0, abs(t_hi))
    sel = (times >= t_lo - slack) & (times <= t_hi + slack)
    if np.count_nonzero(sel) < MIN_FIT_POINTS:
        raise ParameterError(
            f"Fit window [{t_lo}, {t_hi}] holds {np.count_nonzero(sel)} samples, "
            f"need {MIN_FIT_POINTS}")
    if np.any(~(values[sel] > 0)):
        raise DecayFloorError(
            f"{label} reached a non-positive value in [{t_lo}, {t_hi}]; use a larger "
            "domain or an earlier window")
    logt = np.log1p(times[sel])
    logv = np.log(values[sel])
    slope, intercept = np.polyfit(logt, logv, 1)
    resid = logv - (slope * logt + intercept)
    return DecayFitReport(
        label, ell, slope, intercept, math.sqrt(np.mean(resid ** 2)), len(logt),
        predicted=predicted, tolerance=tolerance)


# .....................................................................................
class SupNormTracker:
    """Running sup-norms ℰ0 and ℰ1 over a trajectory.

    Attributes:
        times (numpy.ndarray): snapshot times.
        e0 (numpy.ndarray): sup_{τ<=t} ‖U(τ)‖ in B^{3/2}_{2,1}.
        e1 (numpy.ndarray): running sup of the weighted decay norms.
    """

    # ........................
    def __init__(self, times, e0, e1):
        self.times = np.asarray(times, dtype=np.float64)
        self.e0 = np.asarray(e0, dtype=np.float64)
        self.e1 = np.asarray(e1, dtype=np.float64)

    # ........................
    def is_monotone(self):
        """Return True when both trackers are non-decreasing.

        Returns:
            bool
        """
        return bool(np.all(np.diff(self.e0) >= 0) and np.all(np.diff(self.e1) >= 0))

    # ........................
    def plateau_growth(self, fraction=0.5):
        """Relative growth of ℰ1 from time fraction*T to T.

        Args:
            fraction (float): start of the plateau window as a fraction of T.

        Returns:
            float: ℰ1(T)/ℰ1(fraction T) − 1, 0 for a zero tracker.
        """
        start = np.searchsorted(self.times, fraction * self.times[-1])
        start = min(start, len(self.times) - 1)
        if self.e1[start] == 0:
            return 0.0
        return float(self.e1[-1] / self.e1[start] - 1.0)

    # ........................
    def to_dataframe(self):
        """Return the trackers as a table with columns t, E0_sup and E1_sup.

        Returns:
            pandas.DataFrame
        """
        return pd.DataFrame({"t": self.times, "E0_sup": self.e0, "E1_sup": self.e1})


# .....................................................................................
def track_supnorms(traj, bank=None, ells=ConfigDefaults.TRACKER_ELLS):
    """Running sup-norms of a trajectory.

    ℰ1 takes the running maximum of (1+τ)^{1/4+ℓ/2} ‖Λ^ℓ U‖ in B^{1/2-ℓ}_{2,1}
    over the orders ells, plus the running maximum of (1+τ)^{1/2} ‖Λ^{1/2} U‖
    in Ḃ^0_{2,1}.

    Args:
        traj (timpy.tools.spectral.evolution.Trajectory): trajectory.
        bank (timpy.tools.spectral.littlewood_paley.DyadicFilterBank): filter bank.
        ells (tuple): orders in [0, 1/2).

    Returns:
        timpy.tools.spectral.decay.SupNormTracker
    """
    bank = bank or build_filter_bank(traj.grid)
    times = traj.times
    e0 = np.maximum.accumulate(NormSpec(0.0, NORM_SPACE.B32).evaluate(traj.states, bank))
    weighted = np.stack([
        (1 + times) ** (0.25 + 0.5 * ell)
        * NormSpec(ell, NORM_SPACE.B).evaluate(traj.states, bank)
        for ell in ells])
    low = np.maximum.accumulate(np.max(weighted, axis=0))
    half = np.maximum.accumulate(
        (1 + times) ** 0.5 * NormSpec(0.5, NORM_SPACE.BDOT0).evaluate(traj.states, bank))
    return SupNormTracker(times, e0, low + half)


# .....................................................................................
class SuiteReports(list):
    """Fit reports of one suite run, in norm order.

    Attributes:
        trend (pandas.DataFrame): regularity-loss trend with columns q, slope and
            deficit, None when the suite did not run it.
    """

    # ........................
    def __init__(self, reports, trend=None):
        """Constructor.

        Args:
            reports (list of DecayFitReport): fit reports.
            trend (pandas.DataFrame): optional regularity-loss trend.
        """
        super().__init__(reports)
        self.trend = trend

    # ........................
    @property
    def passed(self):
        """Return True iff every fit passed.

        Returns:
            bool
        """
        return all(r.passed for r in self)


# .....................................................................................
def _norm_specs(config, defaults):
    specs = [NormSpec.init_from_dict(n) for n in config.norms]
    if not specs:
        specs = [NormSpec.init_from_dict(n) for n in defaults]
    return specs


# .....................................................................................
def _fit_norms(traj, config, specs, bank, logger, refname):
    reports = []
    for spec in specs:
        values = spec.evaluate(traj.states, bank)
        tolerance = config.tolerance_for(
            spec.label, spec.tolerance if spec.tolerance is not None
            else ConfigDefaults.DEFAULT_TOLERANCE)
        report = fit_decay(
            traj.times, values, (config.t_lo, config.t_hi),
            predicted=spec.predicted_slope, tolerance=tolerance, label=spec.label,
            ell=spec.ell)
        logit(logger, f"{config.label} {report}", refname=refname)
        reports.append(report)
    return reports


# .....................................................................................
def linear_trajectory(config):
    """Exact linear trajectory of a configuration at its snapshot times.

    Args:
        config (timpy.tools.spectral.experiment.ExperimentConfig): configuration.

    Returns:
        timpy.tools.spectral.evolution.Trajectory
    """
    U0 = initial_data(config.data, config.grid)
    return evolve_linear_trajectory(
        U0, config.times, config.params, exact_damping=False, config=config.to_dict())


# .....................................................................................
def nonlinear_trajectory(config, logger=None):
    """RK4 trajectory of a configuration at its snapshot times.

    Args:
        config (timpy.tools.spectral.experiment.ExperimentConfig): configuration.
        logger (timpy.tools.util.logtools.Logger): optional logger.

    Returns:
        timpy.tools.spectral.evolution.Trajectory
    """
    U0 = initial_data(config.data, config.grid)
    dt = config.dt or max_stable_dt(config.grid, config.params)
    return integrate_rk4(
        U0, config.times[-1], dt, config.times, config.params, logger=logger,
        config=config.to_dict())


# .....................................................................................
def run_linear_decay_suite(config, logger=None):
    """Fit decay rates of the exact linear flow.

    For a != 1 the suite also runs the regularity-loss trend over the configured
    shells.

    Args:
        config (timpy.tools.spectral.experiment.ExperimentConfig): configuration.
        logger (timpy.tools.util.logtools.Logger): optional logger.

    Returns:
        timpy.tools.spectral.decay.SuiteReports with the trend attached for a != 1.
    """
    refname = "run_linear_decay_suite"
    logit(logger, f"Linear suite {config.label} on {config.grid}, {config.params}",
          refname=refname)
    bank = build_filter_bank(config.grid)
    traj = linear_trajectory(config)
    specs = _norm_specs(config, ConfigDefaults.LINEAR_NORMS)
    reports = _fit_norms(traj, config, specs, bank, logger, refname)
    trend = None
    if abs(config.params.a - 1.0) > Tolerance.PARAM_EQUAL and config.regularity_qs:
        trend = regularity_loss_trend(config, config.regularity_qs, logger=logger)
    return SuiteReports(reports, trend=trend)


# .....................................................................................
def run_nonlinear_decay_suite(config, logger=None):
    """Fit decay rates of the small-data nonlinear flow.

    Args:
        config (timpy.tools.spectral.experiment.ExperimentConfig): configuration
            with a = 1.
        logger (timpy.tools.util.logtools.Logger): optional logger.

    Returns:
        timpy.tools.spectral.decay.SuiteReports

    Raises:
        ParameterError: for a != 1.
        BlowUpError: when the data are not small enough.
    """
    refname = "run_nonlinear_decay_suite"
    if abs(config.params.a - 1.0) > Tolerance.PARAM_EQUAL:
        raise ParameterError(f"Nonlinear suite requires a = 1, got {config.params.a}")
    logit(logger, f"Nonlinear suite {config.label} on {config.grid}, {config.params}",
          refname=refname)
    bank = build_filter_bank(config.grid)
    traj = nonlinear_trajectory(config, logger=logger)
    specs = _norm_specs(config, ConfigDefaults.NONLINEAR_NORMS)
    return SuiteReports(_fit_norms(traj, config, specs, bank, logger, refname))


# .....................................................................................
def run_suite(config, logger=None):
    """Run the suite matching the configuration mode.

    Args:
        config (timpy.tools.spectral.experiment.ExperimentConfig): configuration.
        logger (timpy.tools.util.logtools.Logger): optional logger.

    Returns:
        timpy.tools.spectral.decay.SuiteReports
    """
    if config.mode == EVOLVE_MODE.LINEAR:
        return run_linear_decay_suite(config, logger=logger)
    return run_nonlinear_decay_suite(config, logger=logger)


# .....................................................................................
def regularity_loss_trend(config, qs, logger=None):
    """Fitted L² slopes of the linear flow for data localized in dyadic shells.

    Args:
        config (timpy.tools.spectral.experiment.ExperimentConfig): configuration;
            its data kind is replaced by shell data.
        qs (list of int): shell indices.
        logger (timpy.tools.util.logtools.Logger): optional logger.

    Returns:
        pandas.DataFrame with columns q, slope and deficit, the slope change
            relative to the first shell; NaN where the norm hits the floor.
    """
    rows = []
    spec = NormSpec(0.0, NORM_SPACE.L2)
    for q in qs:
        shell_cfg = config.replace(data={"kind": DATA_KIND.SHELL, "q": int(q)})
        traj = linear_trajectory(shell_cfg)
        values = spec.evaluate(traj.states, build_filter_bank(shell_cfg.grid))
        try:
            slope = fit_decay(traj.times, values, (config.t_lo, config.t_hi)).slope
        except DecayFloorError:
            slope = np.nan
        rows.append({"q": int(q), "slope": slope})
    table = pd.DataFrame(rows, columns=["q", "slope"])
    table["deficit"] = table["slope"] - table["slope"].iloc[0]
    logit(logger, f"Regularity loss trend for {config.params}", refname="regularity_loss_trend",
          print_obj=table.to_dict(orient="list"))
    return table


# .....................................................................................
def amplitude_sweep(config, amplitudes, logger=None):
    """Fitted slopes of one suite for several data amplitudes.

    Args:
        config (timpy.tools.spectral.experiment.ExperimentConfig): configuration.
        amplitudes (list of float): data amplitudes.
        logger (timpy.tools.util.logtools.Logger): optional logger.

    Returns:
        pandas.DataFrame with columns amplitude, norm, slope.
    """
    rows = []
    for amp in amplitudes:
        reports = run_suite(config.replace(data={"amplitude": float(amp)}), logger=logger)
        rows.extend(
            {"amplitude": float(amp), "norm": r.label, "slope": r.slope} for r in reports)
    return pd.DataFrame(rows, columns=["amplitude", "norm", "slope"])


# .....................................................................................
def _run_from_dict(config_dict):
    config = ExperimentConfig.init_from_dict(config_dict)
    return config.label, [r.to_dict() for r in run_suite(config)]


# .....................................................................................
def run_suites_parallel(configs, max_workers=None):
    """Run suites for several configurations in worker processes.

    Args:
        configs (list of ExperimentConfig): configurations with distinct labels.
        max_workers (int): process count, the executor default when None.

    Returns:
        dict mapping each label to its report rows, in input order.

    Raises:
        ParameterError: on duplicate labels.
    """
    labels = [c.label for c in configs]
    if len(set(labels)) != len(labels):
        raise ParameterError(f"Configuration labels must be unique, got {labels}")
    with ProcessPoolExecutor(max_workers=max_workers) as executor:
        results = dict(executor.map(_run_from_dict, [c.to_dict() for c in configs]))
    return {label: results[label] for label in labels}


# .....................................................................................
def reports_to_dataframe(reports):
    """Return report rows with columns norm, ell, slope, predicted, tolerance,
    residual and pass."""
    return pd.DataFrame([r.to_dict() for r in reports], columns=list(REPORT_COLUMNS))


# .....................................................................................
def write_reports_csv(reports, filename):
    """Write fit reports as CSV.

    Args:
        reports (list of DecayFitReport): reports.
        filename (str): output file.
    """
    reports_to_dataframe(reports).to_csv(filename, index=False)
