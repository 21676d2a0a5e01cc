"""Tests for linear, nonlinear and Duhamel evolution."""
import numpy as np
import pytest
from scipy.integrate import trapezoid

from timpy.tools.spectral.constants import DATA_KIND, SIGMA_KIND
from timpy.tools.spectral.errors import (
    BlowUpError, GridError, ParameterError, StabilityError)
from timpy.tools.spectral.evolution import (
    Trajectory, duhamel_trajectory, evolve_duhamel, evolve_linear,
    evolve_linear_trajectory, exact_damping_integral, forcing_field,
    imaginary_residue, integrate_rk4, linear_operator_apply, max_stable_dt,
    rhs_nonlinear)
from timpy.tools.spectral.experiment import initial_data
from timpy.tools.spectral.grid import Grid
from timpy.tools.spectral.littlewood_paley import build_filter_bank
from timpy.tools.spectral.model import make_params

SMALL_GRID = Grid(64.0, 256)


# ...............................................
def _data(amplitude=1.0, grid=SMALL_GRID, kind=DATA_KIND.GAUSSIAN, width=2.0):
    return initial_data(
        {"kind": kind, "amplitude": amplitude, "width": width, "seed": 4}, grid)


# ...............................................
def _rel(a, b):
    return float(np.linalg.norm(a - b) / np.linalg.norm(b))


# ............................
def test_linear_identity_and_semigroup():
    """G(0) is the identity and G(t)G(s) = G(t + s)."""
    params = make_params(2.0, 1.0)
    U0 = _data()
    assert(evolve_linear(U0, 0.0, params) is U0)
    two_steps = evolve_linear(evolve_linear(U0, 1.5, params), 2.5, params)
    one_step = evolve_linear(U0, 4.0, params)
    assert(_rel(two_steps.data, one_step.data) < 1e-10)
    with pytest.raises(ParameterError):
        evolve_linear(U0, -1.0, params)


# ............................
def test_linear_flow_stays_real():
    """The full-spectrum complex evolution has no imaginary part."""
    U0 = _data(kind=DATA_KIND.RANDOM)
    assert(imaginary_residue(U0, 3.0, make_params(1.5, 0.5)) < 1e-12)


# ............................
def test_linear_operator_matches_rhs():
    """−(A∂x + L)U equals the pseudo-spectral right-hand side for g = 0."""
    params = make_params(1.3, 0.7)
    U0 = _data(kind=DATA_KIND.RANDOM)
    lhs = linear_operator_apply(U0, params).data
    rhs = rhs_nonlinear(U0, params).data
    assert(np.allclose(lhs, rhs, atol=1e-10 * np.max(np.abs(rhs))))
    assert(np.all(forcing_field(U0, params) == 0))


# ............................
def test_rk4_matches_exact_linear_flow():
    """RK4 with a small step reproduces the exact linear flow and damping."""
    params = make_params(1.0, 1.0)
    U0 = _data()
    times = [0.0, 0.5, 1.0]
    rk4 = integrate_rk4(U0, 1.0, 1e-3, times, params)
    exact = evolve_linear_trajectory(U0, times, params)
    assert(np.allclose(rk4.times, times))
    assert(_rel(rk4.final.data, exact.final.data) < 1e-8)
    assert(np.allclose(rk4.damping, exact.damping, rtol=1e-8, atol=1e-14))


# ............................
def test_rk4_fourth_order_convergence():
    """Halving the step cuts the error against the exact flow by about 16."""
    params = make_params(1.5, 1.0)
    U0 = _data()
    exact = evolve_linear(U0, 1.0, params)
    errors = [
        _rel(integrate_rk4(U0, 1.0, dt, None, params).final.data, exact.data)
        for dt in (0.04, 0.02)]
    assert(errors[1] > 0)
    assert(errors[0] / errors[1] >= 12)


# ............................
def test_exact_damping_integral():
    """The exact integral matches the quadrature of ‖y‖² for the linear flow."""
    params = make_params(1.5, 2.0)
    U0 = _data()
    taus = np.linspace(0.0, 2.0, 401)
    y2 = [SMALL_GRID.lp_norm(evolve_linear(U0, t, params).y) ** 2 for t in taus]
    quad = trapezoid(y2, x=taus)
    exact = exact_damping_integral(U0, [0.0, 2.0], params)
    assert(exact[0] == 0.0)
    assert(np.isclose(exact[1], quad, rtol=1e-4))


# ............................
def test_cfl_guard():
    """Steps above 0.5 dx / max(1, a) are refused."""
    params = make_params(2.0, 1.0)
    assert(np.isclose(max_stable_dt(SMALL_GRID, params), 0.5 * 0.25 / 2.0))
    with pytest.raises(StabilityError):
        integrate_rk4(_data(), 1.0, 0.1, None, params)
    with pytest.raises(StabilityError):
        integrate_rk4(_data(), 1.0, -0.01, None, params)


# ............................
def test_nonlinear_requires_unit_speed():
    """Nonlinear families are integrated only for a = 1."""
    params = make_params(2.0, 1.0, SIGMA_KIND.POLYNOMIAL,
                         coefficients=[0.0, 4.0, 0.0, 1.0], interval=[-1.0, 1.0])
    with pytest.raises(ParameterError):
        integrate_rk4(_data(0.01), 1.0, 0.01, None, params)
    with pytest.raises(ParameterError):
        rhs_nonlinear(_data(0.01), params)


# ............................
def test_blow_up_is_reported():
    """Overflowing data stops the integration at the failed step."""
    params = make_params(1.0, 1.0, SIGMA_KIND.SINH)
    with np.errstate(all="ignore"):
        with pytest.raises(BlowUpError) as info:
            integrate_rk4(_data(1000.0), 1.0, 0.05, None, params)
    assert(0 < info.value.time <= 1.0)


# ............................
def test_snapshot_validation():
    """Snapshot times lie in [0, T] and are always bracketed by 0 and T."""
    params = make_params(1.0, 1.0)
    with pytest.raises(ParameterError):
        integrate_rk4(_data(), 1.0, 0.05, [2.0], params)
    traj = integrate_rk4(_data(), 1.0, 0.05, [0.3], params)
    assert(np.allclose(traj.times, [0.0, 0.3, 1.0]))
    assert(traj.damping[0] == 0.0)


# ............................
def test_duhamel_linear_matches_exact():
    """With g = 0 the Duhamel trajectory is the linear flow."""
    params = make_params(2.0, 1.0)
    U0 = _data(kind=DATA_KIND.RANDOM)
    traj = duhamel_trajectory(U0, [1.0, 2.5], 0.05, params)
    assert(np.allclose(traj.times, [0.0, 1.0, 2.5]))
    assert(traj.damping is None)
    exact = evolve_linear(U0, 2.5, params)
    assert(_rel(traj.final.data, exact.data) < 1e-10)
    with pytest.raises(ParameterError):
        duhamel_trajectory(U0, [1.0], 0.0, params)


# ............................
def test_duhamel_matches_rk4():
    """The Duhamel representation agrees with direct RK4 for small data."""
    params = make_params(1.0, 1.0, SIGMA_KIND.SINH)
    U0 = _data(0.2)
    rk4 = integrate_rk4(U0, 2.0, 0.02, [1.0], params)
    duh = duhamel_trajectory(U0, [1.0, 2.0], 0.02, params)
    assert(np.allclose(duh.times, rk4.times))
    assert(_rel(duh.final.data, rk4.final.data) < 1e-5)
    single = evolve_duhamel(U0, 2.0, 0.02, params)
    assert(_rel(single.data, rk4.final.data) < 1e-5)


# ............................
def test_duhamel_matches_rk4_fine_quadrature():
    """Small sinh data with a fine quadrature step agree with RK4 at T = 1."""
    params = make_params(1.0, 1.0, SIGMA_KIND.SINH)
    U0 = _data(1e-2)
    rk4 = integrate_rk4(U0, 1.0, 1e-3, None, params)
    duh = evolve_duhamel(U0, 1.0, 1e-3, params)
    assert(_rel(duh.data, rk4.final.data) <= 1e-4)


# ............................
def test_localized_duhamel_commutes_with_blocks():
    """Localizing the sinh Duhamel formula gives the block of the full sum."""
    params = make_params(1.0, 1.0, SIGMA_KIND.SINH)
    U0 = _data(0.2, kind=DATA_KIND.RANDOM)
    assert(np.max(np.abs(forcing_field(U0, params))) > 0)
    bank = build_filter_bank(SMALL_GRID)

    def localize(samples):
        return bank.block(samples, 1)

    local = evolve_duhamel(U0, 1.0, 0.05, params, localize=localize)
    expected = bank.block(evolve_duhamel(U0, 1.0, 0.05, params), 1)
    assert(np.max(np.abs(local.data - expected)) <= 1e-12)
    linear = evolve_duhamel(U0, 1.0, 0.05, make_params(1.0, 1.0), localize=localize)
    assert(np.max(np.abs(local.data - linear.data)) > 1e-12)


# ............................
def test_trajectory_files(tmp_path):
    """Trajectories survive a write and read with their damping integral."""
    params = make_params(1.0, 1.0)
    traj = integrate_rk4(_data(), 0.5, 0.05, [0.25], params, config={"label": "x"})
    outdir = str(tmp_path / "traj")
    traj.write(outdir)
    back = Trajectory.read(outdir)
    assert(back.grid == traj.grid and back.params == traj.params)
    assert(np.array_equal(back.times, traj.times))
    assert(np.array_equal(back.states, traj.states))
    assert(np.allclose(back.damping, traj.damping))
    assert(back.config == {"label": "x"})
    assert(len(back) == 3)
    series = back.series()
    assert(series.fields.shape == (3, 4, SMALL_GRID.n))


# ............................
def test_trajectory_validation():
    """Snapshots must match the times and the grid."""
    params = make_params(1.0, 1.0)
    states = np.zeros((2, 4, SMALL_GRID.n))
    with pytest.raises(ParameterError):
        Trajectory(SMALL_GRID, params, [1.0, 0.5], states)
    with pytest.raises(GridError):
        Trajectory(SMALL_GRID, params, [0.0, 1.0, 2.0], states)
    with pytest.raises(ParameterError):
        Trajectory(SMALL_GRID, params, [0.0, 1.0], states, damping=[0.0])
