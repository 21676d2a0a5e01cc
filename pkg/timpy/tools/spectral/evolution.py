"""Linear, nonlinear and Duhamel evolution of the Timoshenko system.

The linear flow is exact per Fourier mode.  The nonlinear system

    v_t = u_x − y,  u_t = v_x,  z_t = y_x,  y_t = z_x + v − γy + g(z)_x

is advanced by classical RK4 with pseudo-spectral derivatives and a 2/3-rule
dealiased nonlinearity.
"""
import json
import logging
import math
import os

import numpy as np
from scipy.linalg import expm

from timpy.tools.spectral.constants import (
    CFL_SAFETY, ENCODING, LOG_INTERVAL, TRAJECTORY_FIELD_PATTERN, TRAJECTORY_META_FNAME,
    Tolerance)
from timpy.tools.spectral.errors import (
    BlowUpError, GridError, ParameterError, StabilityError)
from timpy.tools.spectral.grid import Grid
from timpy.tools.spectral.littlewood_paley import TimeSeriesField
from timpy.tools.spectral.model import ModelParams, StateField
from timpy.tools.spectral.symbol import semigroup_matrices, symbol
from timpy.tools.util.logtools import logit


# .....................................................................................
class Trajectory:
    """Snapshots of the state at strictly increasing times.

    Attributes:
        grid (timpy.tools.spectral.grid.Grid): shared grid.
        params (timpy.tools.spectral.model.ModelParams): system parameters.
        times (numpy.ndarray): snapshot times.
        states (numpy.ndarray): samples of shape (len(times), 4, N).
        damping (numpy.ndarray): ∫_0^t ‖y‖² dτ per snapshot, None when the
            generator did not integrate it.
        config (dict): generating configuration, if any.
    """

    # ........................
    def __init__(self, grid, params, times, states, damping=None, config=None):
        """Constructor.

        Args:
            grid (timpy.tools.spectral.grid.Grid): shared grid.
            params (timpy.tools.spectral.model.ModelParams): system parameters.
            times (array-like): strictly increasing snapshot times.
            states (array-like): samples of shape (len(times), 4, N).
            damping (array-like): optional damping integral per snapshot.
            config (dict): optional generating configuration.

        Raises:
            ParameterError: on non-increasing times or mismatched lengths.
            GridError: on states that do not match the grid.
        """
        times = np.asarray(times, dtype=np.float64)
        states = grid.check_field(states)
        if states.ndim != 3 or states.shape[:2] != (len(times), 4):
            raise GridError(
                f"States of shape {states.shape} do not match {len(times)} times")
        if len(times) == 0 or np.any(np.diff(times) <= 0):
            raise ParameterError("Snapshot times must be strictly increasing")
        self.grid = grid
        self.params = params
        self.times = times
        self.states = states
        self.damping = None if damping is None else np.asarray(damping, dtype=np.float64)
        if self.damping is not None and self.damping.shape != times.shape:
            raise ParameterError("Damping integral does not match the snapshot times")
        self.config = config

    # ........................
    def __len__(self):
        return len(self.times)

    # ........................
    def snapshot(self, index):
        """Return one snapshot as a state.

        Args:
            index (int): snapshot index.

        Returns:
            timpy.tools.spectral.model.StateField
        """
        return StateField.from_array(self.grid, self.states[index])

    # ........................
    @property
    def final(self):
        """Return the last snapshot.

        Returns:
            timpy.tools.spectral.model.StateField
        """
        return self.snapshot(-1)

    # ........................
    def series(self, samples=None):
        """Return snapshots, or derived samples, as a time series.

        Args:
            samples (numpy.ndarray): samples with time on axis 0; the states when
                None.

        Returns:
            timpy.tools.spectral.littlewood_paley.TimeSeriesField
        """
        if samples is None:
            samples = self.states
        return TimeSeriesField(self.grid, self.times, samples)

    # ........................
    def write(self, outdir):
        """Write `meta.json` and one field CSV per snapshot.

        Args:
            outdir (str): output directory, created when missing.
        """
        os.makedirs(outdir, exist_ok=True)
        fnames = []
        for i in range(len(self)):
            fname = TRAJECTORY_FIELD_PATTERN.format(i)
            self.snapshot(i).write_csv(os.path.join(outdir, fname))
            fnames.append(fname)
        meta = {
            "grid": {"L": self.grid.length, "N": self.grid.n},
            "params": self.params.to_dict(),
            "times": self.times.tolist(),
            "fields": fnames,
            "damping": None if self.damping is None else self.damping.tolist(),
            "config": self.config,
        }
        with open(os.path.join(outdir, TRAJECTORY_META_FNAME), mode="w",
                  encoding=ENCODING) as out:
            json.dump(meta, out, indent=2)

    # ........................
    @classmethod
    def read(cls, outdir):
        """Read a trajectory directory written by `write`.

        Args:
            outdir (str): trajectory directory.

        Returns:
            timpy.tools.spectral.evolution.Trajectory
        """
        with open(os.path.join(outdir, TRAJECTORY_META_FNAME), encoding=ENCODING) as inf:
            meta = json.load(inf)
        grid = Grid(meta["grid"]["L"], meta["grid"]["N"])
        params = ModelParams.init_from_dict(meta["params"])
        states = np.stack([
            StateField.read_csv(os.path.join(outdir, fname), grid).data
            for fname in meta["fields"]])
        return cls(grid, params, meta["times"], states, damping=meta.get("damping"),
                   config=meta.get("config"))


# .....................................................................................
def _generator_xi(grid):
    # The derivative multiplier zeroes the Nyquist mode, leaving only L there
    xi = np.array(grid.xi_half, copy=True)
    xi[-1] = 0.0
    return xi


# .....................................................................................
def green_matrices(grid, params, t):
    """Per-mode Green matrices exp(−tΦ̂(iξ_k)) at the non-negative frequencies.

    Args:
        grid (timpy.tools.spectral.grid.Grid): the grid.
        params (timpy.tools.spectral.model.ModelParams): system parameters.
        t (float): time, >= 0.

    Returns:
        numpy.ndarray of shape (N/2 + 1, 4, 4)
    """
    return semigroup_matrices(_generator_xi(grid), t, params)


# .....................................................................................
def _apply_modes(mats, coeffs):
    # coeffs has components on axis -2 and modes on axis -1
    return np.einsum("kij,...jk->...ik", mats, coeffs)


# .....................................................................................
def apply_green(grid, mats, samples):
    """Apply per-mode matrices to real samples of shape (..., 4, N).

    Args:
        grid (timpy.tools.spectral.grid.Grid): the grid.
        mats (numpy.ndarray): matrices at the non-negative frequencies.
        samples (numpy.ndarray): real samples.

    Returns:
        numpy.ndarray: real samples.
    """
    return grid.irfft(_apply_modes(mats, grid.rfft(samples)))


# .....................................................................................
def evolve_linear(U0, t, params):
    """Exact linear evolution Û(t) = exp(−tΦ̂(iξ)) Û0 per mode.

    Args:
        U0 (timpy.tools.spectral.model.StateField): initial state.
        t (float): time, >= 0.
        params (timpy.tools.spectral.model.ModelParams): system parameters.

    Returns:
        timpy.tools.spectral.model.StateField; U0 itself at t = 0.
    """
    t = float(t)
    if t < 0 or not np.isfinite(t):
        raise ParameterError(f"Time t={t} must be finite and >= 0")
    if t == 0:
        return U0
    grid = U0.grid
    return StateField.from_array(
        grid, apply_green(grid, green_matrices(grid, params, t), U0.data))


# .....................................................................................
def imaginary_residue(U0, t, params):
    """Imaginary part left by a full-spectrum complex evolution, relative to its norm.

    Args:
        U0 (timpy.tools.spectral.model.StateField): initial state.
        t (float): time, >= 0.
        params (timpy.tools.spectral.model.ModelParams): system parameters.

    Returns:
        float: ‖Im U(t)‖ / ‖U(t)‖, 0 for a zero result.
    """
    grid = U0.grid
    xi = np.array(grid.xi, copy=True)
    xi[grid.n // 2] = 0.0
    mats = semigroup_matrices(xi, t, params)
    sfield = grid.transform(U0.data)
    values = np.fft.ifft(_apply_modes(mats, sfield.coeffs), axis=-1)
    total = np.linalg.norm(values)
    if total == 0:
        return 0.0
    return float(np.linalg.norm(values.imag) / total)


# .....................................................................................
def evolve_linear_trajectory(U0, times, params, exact_damping=True, config=None):
    """Exact linear trajectory at the requested times.

    Args:
        U0 (timpy.tools.spectral.model.StateField): initial state.
        times (array-like): strictly increasing times >= 0.
        params (timpy.tools.spectral.model.ModelParams): system parameters.
        exact_damping (bool): also compute ∫_0^t ‖y‖² exactly.
        config (dict): optional generating configuration.

    Returns:
        timpy.tools.spectral.evolution.Trajectory
    """
    times = np.asarray(times, dtype=np.float64)
    states = np.stack([evolve_linear(U0, t, params).data for t in times])
    damping = exact_damping_integral(U0, times, params) if exact_damping else None
    return Trajectory(U0.grid, params, times, states, damping=damping, config=config)


# .....................................................................................
def exact_damping_integral(U0, times, params):
    """Exact ∫_0^t ‖y(τ)‖²_{L²} dτ along the linear flow.

    Per mode, with M = −Φ̂ and Q the projection on y, the block exponential of
    C = [[−Mᴴ, Q], [0, M]] has F22ᴴ F12 = ∫_0^t exp(Mᴴs) Q exp(Ms) ds.

    Args:
        U0 (timpy.tools.spectral.model.StateField): initial state.
        times (array-like): times >= 0.
        params (timpy.tools.spectral.model.ModelParams): system parameters.

    Returns:
        numpy.ndarray: one integral per time.
    """
    grid = U0.grid
    gen = -symbol(_generator_xi(grid), params)
    nh = gen.shape[0]
    block = np.zeros((nh, 8, 8), dtype=np.complex128)
    block[:, :4, :4] = -np.conj(np.swapaxes(gen, -1, -2))
    block[:, 3, 7] = 1.0
    block[:, 4:, 4:] = gen
    coeffs = grid.rfft(U0.data).T
    # Each interior mode stands for itself and its conjugate partner
    weights = np.full(nh, 2.0)
    weights[0] = weights[-1] = 1.0
    weights *= grid.length / grid.n ** 2
    out = []
    for t in np.asarray(times, dtype=np.float64):
        if t == 0:
            out.append(0.0)
            continue
        big = expm(t * block)
        gram = np.conj(np.swapaxes(big[:, 4:, 4:], -1, -2)) @ big[:, :4, 4:]
        per_mode = np.einsum("ki,kij,kj->k", np.conj(coeffs), gram, coeffs).real
        out.append(float(np.sum(weights * per_mode)))
    return np.array(out)


# .....................................................................................
def _check_nonlinear_params(params):
    if params.is_nonlinear and abs(params.a - 1.0) > Tolerance.PARAM_EQUAL:
        raise ParameterError(
            f"Nonlinear evolution requires a = 1, got a={params.a}")


# .....................................................................................
def _rhs_array(data, params, grid, deriv, mask):
    """Right-hand side and ‖y‖² for samples of shape (4, N)."""
    coeffs = grid.rfft(data)
    dx = grid.irfft(coeffs * deriv)
    v, _, z, y = data
    v_x, u_x, z_x, y_x = dx
    a = params.a
    out = np.empty_like(data)
    out[0] = u_x - y
    out[1] = v_x
    out[2] = a * y_x
    out[3] = a * z_x + v - params.gamma * y
    if params.is_nonlinear:
        z_trunc = grid.irfft(coeffs[2] * mask)
        g_coeffs = grid.rfft(params.g(z_trunc)) * mask
        out[3] += grid.irfft(g_coeffs * deriv)
    return out, float(np.sum(y * y) * grid.dx)


# .....................................................................................
def rhs_nonlinear(U, params):
    """Pseudo-spectral right-hand side of the system.

    Args:
        U (timpy.tools.spectral.model.StateField): state.
        params (timpy.tools.spectral.model.ModelParams): system parameters; a = 1
            for nonlinear families.

    Returns:
        timpy.tools.spectral.model.StateField of time derivatives.
    """
    _check_nonlinear_params(params)
    grid = U.grid
    out, _ = _rhs_array(U.data, params, grid, grid.deriv_multiplier(1),
                        grid.dealias_mask())
    return StateField.from_array(grid, out)


# .....................................................................................
def linear_operator_apply(U, params):
    """Apply −(A∂_x + L) mode by mode.

    Args:
        U (timpy.tools.spectral.model.StateField): state.
        params (timpy.tools.spectral.model.ModelParams): system parameters.

    Returns:
        timpy.tools.spectral.model.StateField
    """
    grid = U.grid
    gen = -symbol(_generator_xi(grid), params)
    return StateField.from_array(grid, apply_green(grid, gen, U.data))


# .....................................................................................
def max_stable_dt(grid, params):
    """Largest step allowed by the CFL guard, 0.5 dx / max(1, a).

    Args:
        grid (timpy.tools.spectral.grid.Grid): the grid.
        params (timpy.tools.spectral.model.ModelParams): system parameters.

    Returns:
        float
    """
    return CFL_SAFETY * grid.dx / params.max_speed


# .....................................................................................
def _snapshot_schedule(T, snapshot_times):
    T = float(T)
    if T < 0 or not np.isfinite(T):
        raise ParameterError(f"Final time T={T} must be finite and >= 0")
    requested = np.asarray(
        [] if snapshot_times is None else snapshot_times, dtype=np.float64)
    if np.any(requested < 0) or np.any(requested > T * (1 + Tolerance.TIME)):
        raise ParameterError(f"Snapshot times must lie in [0, {T}]")
    return np.unique(np.concatenate([[0.0], np.minimum(requested, T), [T]]))


# .....................................................................................
def integrate_rk4(U0, T, dt, snapshot_times, params, logger=None, config=None):
    """Classical RK4 integration stepping exactly onto the snapshot times.

    The damping integral ∫_0^t ‖y‖² dτ is integrated as an extra component with
    the same stages, so it shares the fourth order accuracy.

    Args:
        U0 (timpy.tools.spectral.model.StateField): initial state.
        T (float): final time.
        dt (float): largest step, within the CFL guard.
        snapshot_times (array-like): requested times in [0, T]; 0 and T are
            always recorded.
        params (timpy.tools.spectral.model.ModelParams): system parameters.
        logger (timpy.tools.util.logtools.Logger): optional logger.
        config (dict): optional generating configuration.

    Returns:
        timpy.tools.spectral.evolution.Trajectory

    Raises:
        StabilityError: on a step above the CFL guard.
        BlowUpError: on a non-finite state, with the time of the failed step.
    """
    refname = "integrate_rk4"
    _check_nonlinear_params(params)
    grid = U0.grid
    dt = float(dt)
    dt_max = max_stable_dt(grid, params)
    if not (0 < dt <= dt_max * (1 + Tolerance.TIME)):
        raise StabilityError(f"Step dt={dt} outside (0, {dt_max}] allowed by CFL")
    targets = _snapshot_schedule(T, snapshot_times)
    deriv = grid.deriv_multiplier(1)
    mask = grid.dealias_mask()

    def rhs(state):
        # Non-finite stages propagate to the end of the step, where they are reported
        if not np.all(np.isfinite(state)):
            return np.full_like(state, np.nan), np.nan
        return _rhs_array(state, params, grid, deriv, mask)

    state = U0.as_array()
    t = 0.0
    damp = 0.0
    states = [state.copy()]
    damping = [0.0]
    step_count = 0
    logit(logger, f"RK4 on {grid} to T={targets[-1]} with dt<={dt}, "
          f"{len(targets)} snapshots", refname=refname)
    for target in targets[1:]:
        nsteps = max(1, math.ceil((target - t) / dt - Tolerance.TIME))
        h = (target - t) / nsteps
        for i in range(nsteps):
            k1, q1 = rhs(state)
            k2, q2 = rhs(state + 0.5 * h * k1)
            k3, q3 = rhs(state + 0.5 * h * k2)
            k4, q4 = rhs(state + h * k3)
            state = state + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
            damp += (h / 6.0) * (q1 + 2 * q2 + 2 * q3 + q4)
            step_time = t + (i + 1) * h
            if not np.all(np.isfinite(state)):
                logit(logger, f"Non-finite state at t={step_time}", refname=refname,
                      log_level=logging.ERROR)
                raise BlowUpError(step_time)
            step_count += 1
            if step_count % LOG_INTERVAL == 0:
                logit(logger, f"Step {step_count}, t={step_time:.6g}", refname=refname)
        t = target
        states.append(state.copy())
        damping.append(damp)
    return Trajectory(grid, params, targets, np.stack(states), damping=damping,
                      config=config)


# .....................................................................................
def forcing_field(U, params):
    """Nonlinear forcing ℛ = (0, 0, 0, g(z)_x) of a state, dealiased.

    Args:
        U (timpy.tools.spectral.model.StateField): state.
        params (timpy.tools.spectral.model.ModelParams): system parameters.

    Returns:
        numpy.ndarray of shape (4, N), zero for the linear family.
    """
    if not params.is_nonlinear:
        return np.zeros_like(U.data)
    return _forcing_array(U.data, params, U.grid)


# .....................................................................................
def _forcing_array(data, params, grid):
    mask = grid.dealias_mask()
    out = np.zeros_like(data)
    z_trunc = grid.irfft(grid.rfft(data[..., 2, :]) * mask)
    g_coeffs = grid.rfft(params.g(z_trunc)) * mask * grid.deriv_multiplier(1)
    out[..., 3, :] = grid.irfft(g_coeffs)
    return out


# .....................................................................................
def duhamel_forcing(U0, T, dtau, params, logger=None):
    """Forcing ℛ(τ_j) on the states of an RK4 pass with step T/n, n = round(T/dtau).

    Args:
        U0 (timpy.tools.spectral.model.StateField): initial state.
        T (float): final time, > 0.
        dtau (float): requested quadrature step.
        params (timpy.tools.spectral.model.ModelParams): system parameters.
        logger (timpy.tools.util.logtools.Logger): optional logger.

    Returns:
        tuple (taus, numpy.ndarray of shape (n + 1, 4, N))
    """
    T = float(T)
    if T <= 0 or dtau <= 0:
        raise ParameterError(f"Need T > 0 and dtau > 0, got {T}, {dtau}")
    nsteps = max(1, int(round(T / dtau)))
    taus = np.linspace(0.0, T, nsteps + 1)
    grid = U0.grid
    if not params.is_nonlinear:
        return taus, np.zeros((nsteps + 1, 4, grid.n))
    traj = integrate_rk4(U0, T, T / nsteps, taus, params, logger=logger)
    return traj.times, _forcing_array(traj.states, params, grid)


# .....................................................................................
def duhamel_sum(U0, forcing, T, params):
    """Duhamel formula 𝒢(T)U0 + ∫_0^T 𝒢(T−τ)ℛ(τ)dτ with trapezoidal weights.

    Args:
        U0 (timpy.tools.spectral.model.StateField): initial state.
        forcing (numpy.ndarray): ℛ at n + 1 equally spaced τ in [0, T].
        T (float): final time, > 0.
        params (timpy.tools.spectral.model.ModelParams): system parameters.

    Returns:
        numpy.ndarray: samples of shape (4, N).

    Note:
        The sum is accumulated by the recurrence acc ← 𝒢(h)acc + w_j ℛ̂_j, so
        only two matrix exponentials are evaluated.
    """
    grid = U0.grid
    forcing = grid.check_field(forcing)
    if forcing.ndim != 3 or forcing.shape[0] < 2:
        raise GridError(f"Forcing of shape {forcing.shape} needs at least 2 times")
    nsteps = forcing.shape[0] - 1
    h = float(T) / nsteps
    coeffs = grid.rfft(forcing)
    step_mats = green_matrices(grid, params, h)
    acc = 0.5 * h * coeffs[0]
    for j in range(1, nsteps + 1):
        weight = 0.5 * h if j == nsteps else h
        acc = _apply_modes(step_mats, acc) + weight * coeffs[j]
    total = _apply_modes(green_matrices(grid, params, T), grid.rfft(U0.data)) + acc
    return grid.irfft(total)


# .....................................................................................
def evolve_duhamel(U0, T, dtau, params, localize=None, logger=None):
    """Nonlinear state at T from the Duhamel representation.

    Args:
        U0 (timpy.tools.spectral.model.StateField): initial state.
        T (float): final time, > 0.
        dtau (float): quadrature step.
        params (timpy.tools.spectral.model.ModelParams): system parameters.
        localize (callable): optional Fourier multiplier, such as a dyadic block,
            applied to U0 and to the forcing before the sum.
        logger (timpy.tools.util.logtools.Logger): optional logger.

    Returns:
        timpy.tools.spectral.model.StateField
    """
    grid = U0.grid
    _, forcing = duhamel_forcing(U0, T, dtau, params, logger=logger)
    start = U0
    if localize is not None:
        start = StateField.from_array(grid, localize(U0.data))
        forcing = localize(forcing)
    return StateField.from_array(grid, duhamel_sum(start, forcing, T, params))


# .....................................................................................
def duhamel_trajectory(U0, times, dtau, params, logger=None, config=None):
    """Duhamel states at every snapshot time, restarting the sum per interval.

    Between consecutive snapshots t0 < t1 the forcing is taken from an RK4 pass
    over [t0, t1] with step at most dtau, and U(t1) = 𝒢(t1 − t0)U(t0) plus the
    Duhamel integral over the interval.

    Args:
        U0 (timpy.tools.spectral.model.StateField): initial state.
        times (array-like): snapshot times; 0 is always recorded.
        dtau (float): quadrature step, within the CFL guard for nonlinear families.
        params (timpy.tools.spectral.model.ModelParams): system parameters.
        logger (timpy.tools.util.logtools.Logger): optional logger.
        config (dict): optional generating configuration.

    Returns:
        timpy.tools.spectral.evolution.Trajectory without a damping integral.
    """
    times = np.asarray(times, dtype=np.float64)
    if len(times) == 0 or not dtau > 0:
        raise ParameterError("Duhamel trajectory needs snapshot times and dtau > 0")
    grid = U0.grid
    targets = _snapshot_schedule(times[-1], times)
    source = U0
    current = U0
    states = [U0.as_array()]
    for t0, t1 in zip(targets[:-1], targets[1:]):
        span = t1 - t0
        nsteps = max(1, math.ceil(span / dtau - Tolerance.TIME))
        if params.is_nonlinear:
            taus = np.linspace(0.0, span, nsteps + 1)
            segment = integrate_rk4(source, span, span / nsteps, taus, params,
                                    logger=logger)
            source = segment.final
            forcing = _forcing_array(segment.states, params, grid)
        else:
            forcing = np.zeros((nsteps + 1, 4, grid.n))
        current = StateField.from_array(
            grid, duhamel_sum(current, forcing, span, params))
        states.append(current.as_array())
    logit(logger, f"Duhamel trajectory with {len(targets)} snapshots to "
          f"T={targets[-1]}", refname="duhamel_trajectory")
    return Trajectory(grid, params, targets, np.stack(states), config=config)
