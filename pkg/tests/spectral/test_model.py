"""Tests for parameters, nonlinearity families and states."""
from hypothesis import given, settings
from hypothesis import strategies as st
import numpy as np
import pandas as pd
import pytest

from timpy.tools.spectral.constants import SIGMA_KIND
from timpy.tools.spectral.errors import ConsistencyError, GridError, ParameterError
from timpy.tools.spectral.grid import Grid
from timpy.tools.spectral.model import (
    ModelParams, PrimalData, StateField, S_eval, check_sigma_positive, g_eval,
    make_params, primal_to_first_order, sigma_prime_eval)

POLY = {"kind": SIGMA_KIND.POLYNOMIAL, "coefficients": [0.0, 1.0, 0.0, 0.5],
        "interval": [-2.0, 2.0]}


# ...............................................
def _wave(grid, k=3):
    return np.sin(2 * np.pi * k * grid.x / grid.length)


# ............................
@pytest.mark.parametrize("a, gamma", [(0.0, 1.0), (-1.0, 1.0), (1.0, 0.0),
                                      (1.0, -0.5), (np.inf, 1.0), ("x", 1.0)])
def test_make_params_rejects_invalid(a, gamma):
    """Wave speed and damping must be positive numbers."""
    with pytest.raises(ParameterError):
        make_params(a, gamma)


# ............................
def test_sinh_requires_unit_speed():
    """σ'(0) = 1 for sinh, so only a = 1 is consistent."""
    params = make_params(1.0, 1.0, SIGMA_KIND.SINH)
    assert(params.is_nonlinear)
    with pytest.raises(ConsistencyError):
        make_params(2.0, 1.0, SIGMA_KIND.SINH)


# ............................
def test_unknown_family():
    """Unknown families are rejected."""
    with pytest.raises(ParameterError):
        make_params(1.0, 1.0, "cubic")
    with pytest.raises(ParameterError):
        make_params(1.0, 1.0, SIGMA_KIND.LINEAR, coefficients=[0.0, 1.0])


# ............................
def test_linear_family():
    """The linear family has g = 0 and S(z) = z² for every a."""
    params = make_params(2.5, 1.0)
    z = np.linspace(-3, 3, 11)
    assert(not params.is_nonlinear)
    assert(np.all(g_eval(params, z) == 0))
    assert(np.allclose(S_eval(params, z), z * z))
    assert(params.max_speed == 2.5)


# ............................
def test_polynomial_family():
    """Polynomial σ: g and S follow from the coefficients."""
    params = ModelParams.init_from_dict({"a": 1.0, "gamma": 0.5, "sigma": POLY})
    z = np.linspace(-1.5, 1.5, 13)
    assert(np.allclose(g_eval(params, z), 0.5 * z ** 3))
    assert(np.allclose(S_eval(params, z), z ** 2 + 0.25 * z ** 4))
    assert(np.allclose(sigma_prime_eval(params, z), 1 + 1.5 * z ** 2))
    with pytest.raises(ConsistencyError):
        params.sigma(np.array([2.5]))


# ............................
def test_polynomial_invalid():
    """A polynomial with σ' <= 0 on its interval or bad data is rejected."""
    with pytest.raises(ConsistencyError):
        make_params(1.0, 1.0, SIGMA_KIND.POLYNOMIAL, coefficients=[0.0, 1.0, -1.0],
                    interval=[-1.0, 1.0])
    with pytest.raises(ConsistencyError):
        make_params(2.0, 1.0, SIGMA_KIND.POLYNOMIAL, coefficients=[0.0, 1.0],
                    interval=[-1.0, 1.0])
    with pytest.raises(ParameterError):
        make_params(1.0, 1.0, SIGMA_KIND.POLYNOMIAL, coefficients=[0.0, 1.0],
                    interval=[0.5, 1.0])
    with pytest.raises(ParameterError):
        make_params(1.0, 1.0, SIGMA_KIND.POLYNOMIAL, coefficients=[0.0, 1.0])


# ............................
def test_check_sigma_positive():
    """cosh is positive everywhere."""
    params = make_params(1.0, 1.0, SIGMA_KIND.SINH)
    assert(check_sigma_positive(params, (-5.0, 5.0)))
    with pytest.raises(ParameterError):
        check_sigma_positive(params, (1.0, -1.0))


# ............................
@given(st.floats(min_value=-3.0, max_value=3.0, allow_nan=False))
@settings(max_examples=200, deadline=None)
def test_sinh_energy_density(z):
    """S is non-negative and equals 2(cosh z − 1)."""
    params = make_params(1.0, 1.0, SIGMA_KIND.SINH)
    s_val = float(S_eval(params, z))
    assert(s_val >= 0)
    assert(np.isclose(s_val, 2 * (np.cosh(z) - 1), rtol=1e-12, atol=1e-14))


# ............................
@given(st.floats(min_value=1e-6, max_value=0.05))
@settings(max_examples=200, deadline=None)
def test_sinh_g_series(z):
    """g(z) = sinh z − z is odd and ~ z³/6 near 0, across the series switch."""
    params = make_params(1.0, 1.0, SIGMA_KIND.SINH)
    val = float(g_eval(params, z))
    assert(np.isclose(val, -float(g_eval(params, -z)), rtol=1e-14))
    exact = z ** 3 / 6 + z ** 5 / 120 + z ** 7 / 5040
    assert(np.isclose(val, exact, rtol=1e-8))


# ............................
def test_params_dict_round_trip():
    """to_dict and init_from_dict describe the same parameters."""
    params = ModelParams.init_from_dict({"a": 1.0, "gamma": 0.5, "sigma": POLY})
    assert(ModelParams.init_from_dict(params.to_dict()) == params)
    assert(ModelParams.init_from_dict({"a": 1, "gamma": 2, "sigma": "sinh"}).sigma_kind
           == SIGMA_KIND.SINH)
    with pytest.raises(ParameterError):
        ModelParams.init_from_dict({"gamma": 1.0})


# ............................
def test_state_validation():
    """States need four finite components on one grid."""
    grid = Grid(16.0, 64)
    ok = np.zeros(64)
    with pytest.raises(GridError):
        StateField(grid, ok, ok, ok, np.zeros(32))
    bad = ok.copy()
    bad[3] = np.nan
    with pytest.raises(ParameterError):
        StateField(grid, ok, ok, bad, ok)
    with pytest.raises(GridError):
        StateField.from_array(grid, np.zeros((3, 64)))
    state = StateField.zeros(grid)
    with pytest.raises(ValueError):
        state.data[0, 0] = 1.0


# ............................
def test_state_arithmetic():
    """Sums, differences and scalar multiples act componentwise."""
    grid = Grid(16.0, 64)
    w = _wave(grid)
    one = StateField(grid, w, 2 * w, 3 * w, 4 * w)
    two = 2 * one
    assert(np.allclose((two - one).data, one.data))
    assert(np.allclose((one + one).data, two.data))
    assert(np.isclose(two.norm_l2(), 2 * one.norm_l2()))
    other = StateField.zeros(Grid(8.0, 64))
    with pytest.raises(GridError):
        one + other


# ............................
def test_state_mean_and_norm():
    """Mean and L² norm of simple states."""
    grid = Grid(16.0, 64)
    state = StateField(grid, np.ones(64), np.zeros(64), _wave(grid), np.zeros(64))
    means = state.mean()
    assert(np.isclose(means["v"], 1.0))
    assert(abs(means["z"]) < 1e-14)
    # ∫ 1 + sin² = L + L/2
    assert(np.isclose(state.norm_l2() ** 2, 24.0))
    assert(state.is_finite())


# ............................
def test_state_csv(tmp_path):
    """Field CSV files reproduce the samples exactly and are validated."""
    grid = Grid(16.0, 64)
    w = _wave(grid)
    state = StateField(grid, w, w ** 2, np.cos(w), 0.1 * w)
    fname = str(tmp_path / "field.csv")
    state.write_csv(fname)
    back = StateField.read_csv(fname)
    assert(back.grid == grid)
    assert(np.array_equal(back.data, state.data))
    with pytest.raises(GridError):
        StateField.read_csv(fname, Grid(16.0, 128))
    pd.read_csv(fname).drop(columns=["y"]).to_csv(fname, index=False)
    with pytest.raises(GridError):
        StateField.read_csv(fname)


# ............................
def test_primal_to_first_order():
    """v = φ_x − ψ, u = φ_t, z = aψ_x and y = ψ_t for trigonometric data."""
    grid = Grid(2 * np.pi, 64)
    x = grid.x
    params = make_params(2.0, 1.0)
    data = PrimalData(grid, np.sin(2 * x), np.cos(x), np.cos(3 * x), np.sin(x))
    state = primal_to_first_order(data, params)
    assert(np.allclose(state.v, 2 * np.cos(2 * x) - np.cos(3 * x), atol=1e-12))
    assert(np.allclose(state.u, np.cos(x)))
    assert(np.allclose(state.z, -6 * np.sin(3 * x), atol=1e-12))
    assert(np.allclose(state.y, np.sin(x)))
    with pytest.raises(GridError):
        primal_to_first_order(data, params, grid=Grid(np.pi, 64))
