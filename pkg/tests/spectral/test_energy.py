"""Tests for energy functionals, the energy ledger and E(T), D(T)."""
import numpy as np
import pytest

from timpy.tools.spectral.constants import DATA_KIND, LEDGER_COLUMNS, SIGMA_KIND
from timpy.tools.spectral.energy import (
    check_energy_identity, damping_integral, energy_E0, energy_E1, energy_E1_block,
    energy_E2, energy_E3_block, energy_ledger, functionals_ED, localized_energy,
    sqrt_energy_bound)
from timpy.tools.spectral.errors import ParameterError
from timpy.tools.spectral.evolution import (
    Trajectory, evolve_linear_trajectory, integrate_rk4, max_stable_dt)
from timpy.tools.spectral.experiment import data_norms, initial_data
from timpy.tools.spectral.grid import Grid
from timpy.tools.spectral.littlewood_paley import build_filter_bank
from timpy.tools.spectral.model import StateField, make_params

SMALL_GRID = Grid(64.0, 256)


# ...............................................
def _gaussian(grid, amplitude=1.0, width=2.0):
    return initial_data(
        {"kind": DATA_KIND.GAUSSIAN, "amplitude": amplitude, "width": width}, grid)


# ............................
def test_linear_energy_is_squared_norm():
    """For the linear family E0 is the squared L² norm."""
    U0 = _gaussian(SMALL_GRID)
    assert(np.isclose(energy_E0(U0, make_params(2.0, 1.0)), U0.norm_l2() ** 2))
    zero = StateField.zeros(SMALL_GRID)
    assert(energy_E0(zero, make_params(1.0, 1.0)) == 0.0)
    assert(energy_E1(zero) == 0.0)


# ............................
def test_exact_damping_identity():
    """The exact linear flow satisfies the energy identity to rounding."""
    params = make_params(2.0, 0.5)
    U0 = initial_data({"kind": DATA_KIND.RANDOM, "width": 1.0, "seed": 2}, SMALL_GRID)
    traj = evolve_linear_trajectory(U0, [0.0, 1.0, 5.0, 20.0], params)
    ledger = energy_ledger(traj)
    assert(list(ledger.columns) == list(LEDGER_COLUMNS))
    assert(ledger["residual"].max() <= 1e-8)
    assert(np.all(np.diff(ledger["E0"]) <= 1e-12))
    assert(check_energy_identity(traj) <= 1e-8)


# ............................
def test_nonlinear_energy_identity():
    """RK4 keeps E0 + 2γ∫‖y‖² constant for small sinh data."""
    grid = Grid(64.0, 1024)
    params = make_params(1.0, 1.0, SIGMA_KIND.SINH)
    U0 = _gaussian(grid, amplitude=1e-2)
    traj = integrate_rk4(U0, 10.0, 0.025, np.linspace(0, 10, 11), params)
    assert(check_energy_identity(traj) <= 1e-6)


# ............................
def test_ledger_without_integrated_damping():
    """Trajectories without a damping integral use the trapezoidal rule."""
    params = make_params(1.0, 1.0)
    U0 = _gaussian(SMALL_GRID)
    exact = evolve_linear_trajectory(U0, np.linspace(1.0, 3.0, 201), params)
    bare = Trajectory(SMALL_GRID, params, exact.times, exact.states)
    integral = damping_integral(bare)
    assert(integral[0] == 0.0)
    assert(np.isclose(integral[-1], exact.damping[-1] - exact.damping[0], rtol=1e-4))
    ledger = energy_ledger(bare)
    assert(ledger["residual"].iloc[0] == 0.0)
    assert(ledger["residual"].max() <= 1e-4)


# ............................
def test_zero_energy_identity_is_undefined():
    """The relative residual needs positive initial energy."""
    params = make_params(1.0, 1.0)
    traj = evolve_linear_trajectory(StateField.zeros(SMALL_GRID), [0.0, 1.0], params)
    assert(np.all(np.isnan(energy_ledger(traj)["residual"])))
    with pytest.raises(ParameterError):
        check_energy_identity(traj)
    assert(sqrt_energy_bound(traj) == {"sup_ratio": 0.0, "damping_ratio": 0.0})


# ............................
def test_sqrt_energy_bound():
    """‖U(t)‖ and sqrt(2γ∫‖y‖²) stay below ‖U0‖ along the linear flow."""
    params = make_params(1.0, 2.0)
    traj = evolve_linear_trajectory(_gaussian(SMALL_GRID), [0.0, 2.0, 10.0], params)
    bound = sqrt_energy_bound(traj)
    assert(bound["sup_ratio"] <= 1.0 + 1e-12)
    assert(np.isclose(bound["sup_ratio"], 1.0))
    assert(0 < bound["damping_ratio"] <= 1.0 + 1e-12)


# ............................
def test_localized_functionals():
    """Block functionals reduce to squared block norms for the linear family."""
    bank = build_filter_bank(SMALL_GRID)
    U0 = initial_data({"kind": DATA_KIND.RANDOM, "width": 1.0, "seed": 5}, SMALL_GRID)
    params = make_params(1.0, 1.0)
    for q in (-3, 0, 2):
        block = bank.block(U0.data, q, homogeneous=True)
        direct = float(np.sum(block ** 2) * SMALL_GRID.dx)
        assert(np.isclose(localized_energy(U0, q, params, bank), direct))
        assert(np.isfinite(energy_E1_block(U0, q, bank)))
    assert(energy_E3_block(U0, bank.q_max + 2, bank) == 0.0)
    assert(np.isfinite(energy_E3_block(U0, 1, bank)))


# ............................
def test_energy_and_dissipation_norms():
    """E(T) dominates the data norm; both functionals are finite."""
    params = make_params(1.0, 1.0)
    U0 = _gaussian(SMALL_GRID)
    bank = build_filter_bank(SMALL_GRID)
    traj = evolve_linear_trajectory(U0, np.linspace(0.0, 5.0, 26), params)
    energy, dissipation = functionals_ED(traj, bank)
    assert(energy >= data_norms(U0, bank)["B32"] * (1 - 1e-12))
    assert(np.isfinite(dissipation) and dissipation > 0)
    with pytest.raises(ParameterError):
        functionals_ED(Trajectory(SMALL_GRID, params, [0.0], U0.data[None]), bank)


# ............................
def test_closed_form_functionals():
    """Single-mode fields on [0, 2π) give the integrals of sin and cos products."""
    grid = Grid(2 * np.pi, 64)
    sin, cos, zero = np.sin(grid.x), np.cos(grid.x), np.zeros(grid.n)
    assert(np.isclose(energy_E2(StateField(grid, zero, zero, sin, cos)), -np.pi))
    assert(np.isclose(energy_E2(StateField(grid, zero, zero, sin, -cos)), np.pi))
    assert(abs(energy_E2(StateField(grid, zero, zero, zero + 0.3, cos))) <= 1e-12)
    flat = StateField(grid, zero, zero, zero + 0.1, zero)
    assert(np.isclose(energy_E0(flat, make_params(1.0, 1.0, SIGMA_KIND.SINH)),
                      2 * np.pi * 2 * (np.cosh(0.1) - 1), rtol=1e-12))


# ............................
def test_block_cross_functional_parity():
    """The block functional vanishes for v = u = cos and is −π for v = cos, u = sin."""
    grid = Grid(2 * np.pi, 64)
    bank = build_filter_bank(grid)
    sin, cos, zero = np.sin(grid.x), np.cos(grid.x), np.zeros(grid.n)
    even = StateField(grid, cos, cos, zero, zero)
    mixed = StateField(grid, cos, sin, zero, zero)
    for q in bank.q_range():
        assert(abs(energy_E3_block(even, q, bank)) <= 1e-12)
    total = sum(energy_E3_block(mixed, q, bank) for q in bank.q_range())
    assert(np.isclose(total, -np.pi))


# ............................
@pytest.mark.parametrize("seed", [0, 1, 2])
def test_cross_functional_cauchy_schwarz(seed):
    """|E1| is bounded by ‖v‖‖y‖ + ‖u‖‖z‖."""
    U = initial_data({"kind": DATA_KIND.RANDOM, "width": 1.0, "seed": seed}, SMALL_GRID)
    norms = [SMALL_GRID.lp_norm(c) for c in (U.v, U.u, U.z, U.y)]
    bound = norms[0] * norms[3] + norms[1] * norms[2]
    assert(abs(energy_E1(U)) <= bound * (1 + 1e-12))
    assert(bound <= U.norm_l2() ** 2 * (1 + 1e-12))


# ............................
@pytest.mark.slow
def test_energy_inequality_constant_stable_in_time():
    """(E(T) + D(T)) / ‖U0‖ in B^{3/2}_{2,1} moves by less than 20% from T to 2T."""
    grid = Grid(64.0, 1024)
    bank = build_filter_bank(grid)
    params = make_params(1.0, 1.0, SIGMA_KIND.SINH)
    U0 = _gaussian(grid, amplitude=1e-2)
    b32 = data_norms(U0, bank)["B32"]
    dt = max_stable_dt(grid, params)
    constants = []
    for T in (10.0, 20.0):
        traj = integrate_rk4(U0, T, dt, np.linspace(0.0, T, int(4 * T) + 1), params)
        energy, dissipation = functionals_ED(traj, bank)
        constants.append((energy + dissipation) / b32)
    assert(constants[0] > 0)
    assert(abs(constants[1] / constants[0] - 1) < 0.2)
