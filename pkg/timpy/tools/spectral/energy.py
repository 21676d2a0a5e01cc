"""Energy functionals, the energy ledger and the energy/dissipation norms.

The basic energy equality reads

    E0(U(t)) + 2γ ∫_0^t ‖y‖² dτ = E0(U0),  E0(U) = ‖(v, u, y)‖² + ∫ S(z) dx.
"""
import numpy as np
import pandas as pd
from scipy.integrate import cumulative_trapezoid

from timpy.tools.spectral.constants import LEDGER_COLUMNS
from timpy.tools.spectral.errors import ParameterError
from timpy.tools.spectral.littlewood_paley import (
    BesovSpec, build_filter_bank, chemin_lerner_norm)
from timpy.tools.util.logtools import logit


# .....................................................................................
def energy_E0(U, params):
    """Basic energy ‖(v, u, y)‖²_{L²} + ∫ S(z) dx.

    Args:
        U (timpy.tools.spectral.model.StateField): state.
        params (timpy.tools.spectral.model.ModelParams): system parameters.

    Returns:
        float
    """
    grid = U.grid
    quad = np.sum(U.v ** 2 + U.u ** 2 + U.y ** 2) * grid.dx
    return float(quad + np.sum(params.S(U.z)) * grid.dx)


# .....................................................................................
def energy_E1(U):
    """Cross functional −∫(v y + u z) dx producing dissipation for v."""
    return float(-np.sum(U.v * U.y + U.u * U.z) * U.grid.dx)


# .....................................................................................
def energy_E2(U):
    """Cross functional −∫ z_x y dx producing dissipation for z_x."""
    grid = U.grid
    return float(-np.sum(grid.spatial_deriv(U.z, 1) * U.y) * grid.dx)


# .....................................................................................
def energy_E3_block(U, q, bank):
    """Localized cross functional −∫ Δ_q v ∂_x Δ_q u dx for the dissipation of u_x.

    Args:
        U (timpy.tools.spectral.model.StateField): state.
        q (int): inhomogeneous block index; blocks off the bank range are zero.
        bank (timpy.tools.spectral.littlewood_paley.DyadicFilterBank): filter bank.

    Returns:
        float
    """
    grid = U.grid
    v_q = bank.block(U.v, q)
    u_q = bank.block(U.u, q)
    return float(-np.sum(v_q * grid.spatial_deriv(u_q, 1)) * grid.dx)


# .....................................................................................
def energy_E1_block(U, q, bank):
    """Localized −∫(Δ̇_q v Δ̇_q y + Δ̇_q u Δ̇_q z) dx on a homogeneous block."""
    v_q, u_q, z_q, y_q = bank.block(U.data, q, homogeneous=True)
    return float(-np.sum(v_q * y_q + u_q * z_q) * U.grid.dx)


# .....................................................................................
def localized_energy(U, q, params, bank):
    """Localized energy ∫(|Δ̇_q v|² + |Δ̇_q y|² + |Δ̇_q u|² + σ'(z)|Δ̇_q z|²) dx.

    Args:
        U (timpy.tools.spectral.model.StateField): state.
        q (int): homogeneous block index.
        params (timpy.tools.spectral.model.ModelParams): system parameters.
        bank (timpy.tools.spectral.littlewood_paley.DyadicFilterBank): filter bank.

    Returns:
        float: close to ‖Δ̇_q U‖² for small states.
    """
    v_q, u_q, z_q, y_q = bank.block(U.data, q, homogeneous=True)
    weight = params.sigma_prime(U.z)
    total = v_q ** 2 + y_q ** 2 + u_q ** 2 + weight * z_q ** 2
    return float(np.sum(total) * U.grid.dx)


# .....................................................................................
def y_l2_squared(traj):
    """Return ‖y(t)‖²_{L²} per snapshot of a trajectory."""
    return np.sum(traj.states[:, 3, :] ** 2, axis=-1) * traj.grid.dx


# .....................................................................................
def damping_integral(traj):
    """Cumulative ∫_0^t ‖y‖² dτ per snapshot.

    Args:
        traj (timpy.tools.spectral.evolution.Trajectory): trajectory.

    Returns:
        numpy.ndarray: the integral carried by the trajectory, otherwise the
            trapezoidal rule over its snapshots.
    """
    if traj.damping is not None:
        return traj.damping
    y2 = y_l2_squared(traj)
    if len(traj) == 1:
        return np.zeros(1)
    return cumulative_trapezoid(y2, x=traj.times, initial=0.0)


# .....................................................................................
def energy_ledger(traj, params=None):
    """Energy functionals and the energy identity residual per snapshot.

    Args:
        traj (timpy.tools.spectral.evolution.Trajectory): trajectory.
        params (timpy.tools.spectral.model.ModelParams): parameters; those of the
            trajectory when None.

    Returns:
        pandas.DataFrame with columns t, E0, E1, E2, y_l2_sq, damping_integral
            and residual, where damping_integral is 2γ∫_0^t ‖y‖² dτ and the
            residual is relative to E0 + 2γ∫‖y‖² at the first snapshot (NaN when it
            is 0).
    """
    params = params or traj.params
    snaps = [traj.snapshot(i) for i in range(len(traj))]
    e0 = np.array([energy_E0(s, params) for s in snaps])
    damp = 2.0 * params.gamma * damping_integral(traj)
    # The identity holds between any two snapshots; the first one is the reference
    reference = e0[0] + damp[0]
    if reference > 0:
        residual = np.abs(e0 + damp - reference) / reference
    else:
        residual = np.full_like(e0, np.nan)
    table = {
        "t": traj.times,
        "E0": e0,
        "E1": [energy_E1(s) for s in snaps],
        "E2": [energy_E2(s) for s in snaps],
        "y_l2_sq": y_l2_squared(traj),
        "damping_integral": damp,
        "residual": residual,
    }
    return pd.DataFrame(table, columns=list(LEDGER_COLUMNS))


# .....................................................................................
def check_energy_identity(traj, params=None, logger=None):
    """Largest relative residual of E0(t) + 2γ∫‖y‖² − E0(0).

    Args:
        traj (timpy.tools.spectral.evolution.Trajectory): trajectory.
        params (timpy.tools.spectral.model.ModelParams): parameters; those of the
            trajectory when None.
        logger (timpy.tools.util.logtools.Logger): optional logger.

    Returns:
        float

    Raises:
        ParameterError: when E0 vanishes at the first snapshot.
    """
    params = params or traj.params
    if energy_E0(traj.snapshot(0), params) == 0:
        raise ParameterError("Energy identity undefined for zero initial energy")
    residual = float(energy_ledger(traj, params)["residual"].max())
    logit(logger, f"Energy identity residual {residual:.3e} over {len(traj)} snapshots",
          refname="check_energy_identity")
    return residual


# .....................................................................................
def sqrt_energy_bound(traj, params=None):
    """Square-root form of the energy equality.

    Args:
        traj (timpy.tools.spectral.evolution.Trajectory): trajectory.
        params (timpy.tools.spectral.model.ModelParams): parameters; those of the
            trajectory when None.

    Returns:
        dict with sup_ratio = sup_t ‖U(t)‖/‖U0‖ and damping_ratio =
            sqrt(2γ∫_0^T‖y‖²)/‖U0‖, both at most 1 for the linear family.
    """
    params = params or traj.params
    norms = np.array([traj.snapshot(i).norm_l2() for i in range(len(traj))])
    if norms[0] == 0:
        return {"sup_ratio": 0.0, "damping_ratio": 0.0}
    damp = 2.0 * params.gamma * damping_integral(traj)[-1]
    return {
        "sup_ratio": float(np.max(norms) / norms[0]),
        "damping_ratio": float(np.sqrt(max(damp, 0.0)) / norms[0]),
    }


# .....................................................................................
def functionals_ED(traj, bank=None):
    """Energy and dissipation norms of a trajectory.

    E(T) = ‖U‖ in L̃^∞_T(B^{3/2}_{2,1}) and D(T) is the sum of ‖y‖ in
    L̃²_T(B^{3/2}_{2,1}), ‖(v, z_x)‖ in L̃²_T(B^{1/2}_{2,1}) and ‖u_x‖ in
    L̃²_T(B^{-1/2}_{2,1}).

    Args:
        traj (timpy.tools.spectral.evolution.Trajectory): trajectory, >= 2 snapshots.
        bank (timpy.tools.spectral.littlewood_paley.DyadicFilterBank): filter bank,
            built from the grid when None.

    Returns:
        tuple (E_T, D_T)
    """
    if len(traj) < 2:
        raise ParameterError("E(T) and D(T) need at least 2 snapshots")
    bank = bank or build_filter_bank(traj.grid)
    grid = traj.grid
    states = traj.states
    energy = chemin_lerner_norm(bank, traj.series(), np.inf, BesovSpec(1.5, 2, 1))
    v_zx = np.stack([states[:, 0, :], grid.spatial_deriv(states[:, 2, :], 1)], axis=1)
    u_x = grid.spatial_deriv(states[:, 1, :], 1)
    dissipation = (
        chemin_lerner_norm(bank, traj.series(states[:, 3, :]), 2, BesovSpec(1.5, 2, 1))
        + chemin_lerner_norm(bank, traj.series(v_zx), 2, BesovSpec(0.5, 2, 1))
        + chemin_lerner_norm(bank, traj.series(u_x), 2, BesovSpec(-0.5, 2, 1)))
    return energy, dissipation
