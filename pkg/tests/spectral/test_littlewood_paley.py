"""Tests for the dyadic filter bank, Besov and Chemin-Lerner norms."""
from hypothesis import given, settings
from hypothesis import strategies as st
import numpy as np
import pytest

from timpy.tools.spectral.constants import Tolerance
from timpy.tools.spectral.errors import GridError, ParameterError
from timpy.tools.spectral.grid import Grid
from timpy.tools.spectral.inequalities import band_limited_random_field
from timpy.tools.spectral.littlewood_paley import (
    BesovSpec, TimeSeriesField, besov_norm, block, block_norm_table, build_filter_bank,
    chemin_lerner_norm, chi_profile, commutator, phi_profile, sequence_norm,
    smooth_step, time_norm, time_norm_of_besov)
from timpy.tools.spectral.model import StateField


# ...............................................
def _series(grid, rng, count=11):
    times = np.linspace(0.0, 2.0, count)
    f, g = band_limited_random_field(grid, rng), band_limited_random_field(grid, rng)
    fields = np.cos(times)[:, None] * f + np.sin(2 * times)[:, None] * g
    return TimeSeriesField(grid, times, fields)


# ............................
def test_profiles():
    """χ and φ have the stated plateaus and supports."""
    assert(smooth_step(0.0) == 0.0 and smooth_step(1.0) == 1.0)
    assert(np.isclose(smooth_step(0.5), 0.5))
    t = np.linspace(-0.5, 1.5, 201)
    assert(np.all(np.diff(smooth_step(t)) >= 0))
    assert(np.all(chi_profile(np.linspace(-1, 1, 51)) == 1.0))
    assert(np.all(chi_profile(np.array([4 / 3, 2.0, -5.0])) == 0.0))
    assert(np.all(phi_profile(np.array([0.0, 0.5, 1.0, 8 / 3, 4.0])) == 0.0))
    assert(np.all(phi_profile(np.linspace(1.01, 2.65, 40)) > 0))


# ............................
def test_block_range(bank, grid):
    """Block indices follow the grid spacing and Nyquist frequency."""
    assert(bank.q_min == int(np.floor(np.log2(grid.dxi))) - 2)
    assert(bank.q_max == int(np.ceil(np.log2(grid.xi_nyquist))) + 1)
    assert(bank.q_range()[0] == -1)
    assert(bank.q_range(homogeneous=True)[0] == bank.q_min)
    assert(bank.profile(-2) is None and bank.profile(bank.q_max + 1) is None)
    assert(bank.profile(bank.q_min - 1, homogeneous=True) is None)
    assert(np.array_equal(bank.profile(-1), bank.chi))


# ............................
@pytest.mark.parametrize("length, n", [(64.0, 1024), (800.0, 2 ** 12), (2 * np.pi, 8)])
def test_partition_of_unity(length, n):
    """Both partitions of unity hold on the grid to rounding."""
    bank = build_filter_bank(Grid(length, n))
    assert(bank.partition_residual() <= Tolerance.PARTITION)
    assert(bank.partition_residual(homogeneous=True) <= Tolerance.PARTITION)


# ............................
def test_partition_check_rejects_perturbed_shell(bank):
    """A shell scaled off the telescoping sum breaks the partition check."""
    bank.check_partition()
    bank._shells[0] = 1.01 * bank._shells[0]
    with pytest.raises(GridError):
        bank.check_partition()


# ............................
def test_block_reconstruction(bank, grid, rng):
    """Blocks sum back to the field; homogeneous blocks miss only the mean."""
    f = band_limited_random_field(grid, rng) + 0.3
    _, inhom = bank.blocks(f)
    scale = np.max(np.abs(f))
    assert(np.max(np.abs(inhom.sum(axis=0) - f)) <= 1e-10 * scale)
    _, hom = bank.blocks(f, homogeneous=True)
    assert(np.max(np.abs(hom.sum(axis=0) - (f - np.mean(f)))) <= 1e-10 * scale)


# ............................
def test_block_helpers(bank, grid, rng):
    """Module helpers agree with the bank methods and zero out inactive blocks."""
    f = band_limited_random_field(grid, rng)
    assert(np.array_equal(block(bank, f, 2), bank.block(f, 2)))
    assert(np.all(bank.block(f, bank.q_max + 3) == 0))
    qs, norms = bank.block_norms(f)
    table = block_norm_table(bank, f, BesovSpec(0.0))
    assert(list(table.columns) == ["q", "weighted_norm"])
    assert(np.allclose(table["weighted_norm"], norms))
    assert(list(table["q"]) == qs)


# ............................
def test_besov_spec():
    """Invalid indices raise and weights treat the low-pass block as order 0."""
    with pytest.raises(ParameterError):
        BesovSpec(np.nan)
    with pytest.raises(ParameterError):
        BesovSpec(1.0, p=0.5)
    with pytest.raises(ParameterError):
        BesovSpec(1.0, r="zero")
    spec = BesovSpec(1.5, 2, "inf")
    assert(spec.r == np.inf)
    assert(np.allclose(spec.weights([-1, 0, 2]), [1.0, 1.0, 8.0]))
    assert(np.allclose(BesovSpec(1.0, homogeneous=True).weights([-2, 1]), [0.25, 2.0]))
    assert(sequence_norm(np.array([3.0, 4.0]), 2) == 5.0)


# ............................
def test_besov_l2_equivalence(bank, grid, rng):
    """Σ‖Δ_q f‖² lies between ‖f‖²/2 and ‖f‖² since Σφ_q² ∈ [1/2, 1]."""
    f = band_limited_random_field(grid, rng)
    b022 = besov_norm(bank, f, BesovSpec(0.0, 2, 2))
    l2 = grid.lp_norm(f, 2)
    assert(0.5 * l2 ** 2 <= b022 ** 2 * (1 + 1e-12))
    assert(b022 <= l2 * (1 + 1e-12))


# ............................
def test_state_field_norm(bank, grid, rng):
    """State fields combine their components pointwise."""
    comps = [band_limited_random_field(grid, rng) for _ in range(4)]
    state = StateField(grid, *comps)
    spec = BesovSpec(0.5)
    assert(np.isclose(besov_norm(bank, state, spec),
                      besov_norm(bank, np.stack(comps), spec, vector=True)))
    single = besov_norm(bank, comps[0], spec)
    assert(single <= besov_norm(bank, state, spec) * (1 + 1e-12))


# ............................
@given(st.integers(min_value=0, max_value=2 ** 20))
@settings(max_examples=25, deadline=None)
def test_besov_monotonicity(seed):
    """Inhomogeneous norms grow with s; both flavors shrink as r grows."""
    grid = Grid(64.0, 512)
    bank = build_filter_bank(grid)
    f = band_limited_random_field(grid, np.random.default_rng(seed))
    by_s = [besov_norm(bank, f, BesovSpec(s)) for s in (-1.0, -0.5, 0.0, 0.5, 1.5)]
    assert(all(lo <= hi for lo, hi in zip(by_s, by_s[1:])))
    for homogeneous in (False, True):
        by_r = [besov_norm(bank, f, BesovSpec(0.5, 2, r, homogeneous))
                for r in (1, 2, "inf")]
        assert(all(hi * (1 + 1e-14) >= lo for hi, lo in zip(by_r, by_r[1:])))


# ............................
def test_time_series_validation(grid):
    """Times must increase and match the snapshots."""
    with pytest.raises(ParameterError):
        TimeSeriesField(grid, [0.0, 0.0], np.zeros((2, grid.n)))
    with pytest.raises(ParameterError):
        TimeSeriesField(grid, [0.0, 1.0, 2.0], np.zeros((2, grid.n)))
    with pytest.raises(ParameterError):
        time_norm(np.ones((1, 3)), np.array([0.0]), 2.0)
    assert(np.array_equal(time_norm(np.ones((1, 3)), np.array([0.0]), np.inf),
                          np.ones(3)))


# ............................
def test_chemin_lerner_ordering(bank, grid, rng):
    """For r = 1, the sup-in-time norm dominates and θ = 1 matches Fubini."""
    series = _series(grid, rng)
    spec = BesovSpec(0.5)
    sup_cl = chemin_lerner_norm(bank, series, "inf", spec)
    sup_plain = time_norm_of_besov(bank, series, "inf", spec)
    assert(sup_cl >= sup_plain * (1 - 1e-12))
    one_cl = chemin_lerner_norm(bank, series, 1, spec)
    one_plain = time_norm_of_besov(bank, series, 1, spec)
    assert(np.isclose(one_cl, one_plain, rtol=1e-12))


# ............................
def test_commutator_with_constant(bank, grid, rng):
    """Multiplication by a constant commutes with every block."""
    g = band_limited_random_field(grid, rng)
    const = np.full(grid.n, 2.5)
    for q in (-2, 0, 3):
        res = commutator(bank, const, q, g)
        assert(np.max(np.abs(res)) <= 1e-12 * np.max(np.abs(g)))
