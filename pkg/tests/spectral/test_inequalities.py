"""Tests for the numerical checks of the harmonic-analysis estimates."""
import numpy as np

from timpy.tools.spectral.grid import Grid
from timpy.tools.spectral.inequalities import (
    band_limited_random_field, bernstein_table, commutator_table, embedding_constant,
    linf_embedding_constant, low_frequency_bernstein_table, monotonicity_violations,
    random_series, run_inequality_battery, smooth_random_field)
from timpy.tools.spectral.littlewood_paley import build_filter_bank


# ............................
def test_random_fields(grid, rng):
    """Band-limited fields have zero mean and no Nyquist content."""
    f = band_limited_random_field(grid, rng, k_max=20)
    coeffs = grid.rfft(f)
    assert(abs(np.mean(f)) < 1e-12)
    assert(np.all(np.abs(coeffs[21:]) < 1e-9 * np.max(np.abs(coeffs))))
    g = smooth_random_field(grid, rng)
    assert(g.shape == (grid.n,) and np.all(np.isfinite(g)))


# ............................
def test_smooth_field_is_resolution_independent():
    """The same seed gives the same continuum function on a refined grid."""
    coarse, fine = Grid(64.0, 512), Grid(64.0, 1024)
    f_c = smooth_random_field(coarse, np.random.default_rng(7))
    f_f = smooth_random_field(fine, np.random.default_rng(7))
    assert(np.allclose(f_f[::2], f_c, atol=1e-12))


# ............................
def test_bernstein(bank, rng):
    """Single-block and low-pass ratios lie inside their bounds."""
    table = bernstein_table(bank, rng)
    assert(len(table) > 0)
    assert(table["within"].all())
    low = low_frequency_bernstein_table(bank, rng)
    assert(low["within"].all())


# ............................
def test_embedding_constants(bank, grid, rng):
    """Fitted embedding constants are positive and finite."""
    fields = [smooth_random_field(grid, rng) for _ in range(6)]
    for const in (embedding_constant(bank, fields),
                  linf_embedding_constant(bank, fields)):
        assert(np.isfinite(const) and const > 0)
    assert(monotonicity_violations(bank, fields) == 0)


# ............................
def test_commutator_table(bank, grid, rng):
    """The scaled commutator stays bounded uniformly in q."""
    f, g = smooth_random_field(grid, rng), smooth_random_field(grid, rng)
    table = commutator_table(bank, f, g)
    assert(list(table.columns) == ["q", "ratio"])
    assert(list(table["q"]) == bank.q_range(homogeneous=True))
    assert(np.all(np.isfinite(table["ratio"])))
    assert(table["ratio"].max() < 1e3)


# ............................
def test_random_series(grid, rng):
    """Random series have the requested snapshots."""
    series = random_series(grid, rng, count=5, t_max=2.0)
    assert(np.allclose(series.times, [0.0, 0.5, 1.0, 1.5, 2.0]))
    assert(series.fields.shape == (5, grid.n))


# ............................
def test_battery_is_stable_under_refinement():
    """Constants exist and change little when the grid is refined."""
    small = run_inequality_battery(build_filter_bank(Grid(64.0, 512)), count=10, seed=3)
    big = run_inequality_battery(build_filter_bank(Grid(64.0, 1024)), count=10, seed=3)
    assert(small["bernstein_within"] and big["bernstein_within"])
    assert(small["low_frequency_bernstein_within"])
    assert(small["monotonicity_violations"] == 0)
    for key in ("embedding_constant", "linf_embedding_constant", "moser_constant",
                "product_constant", "commutator_constant", "chemin_lerner_constant"):
        assert(np.isfinite(small[key]) and small[key] > 0)
        assert(np.isclose(small[key], big[key], rtol=0.5))
    assert(small["grid"] == {"L": 64.0, "N": 512})
