"""Numerical checks of Bernstein, embedding, product and commutator estimates.

Constants of the estimates are fitted as the largest observed ratio over a
battery of random fields; only their existence and stability under grid
refinement are meaningful.
"""
import numpy as np
import pandas as pd

from timpy.tools.spectral.littlewood_paley import (
    BesovSpec, TimeSeriesField, besov_norm, chemin_lerner_norm, chi_profile, commutator,
    time_norm)
from timpy.tools.util.logtools import logit


# .....................................................................................
def smooth_random_field(grid, rng, n_bumps=4, width_range=(1.0, 3.0)):
    """Sum of random Gaussians defined independently of the grid resolution.

    Args:
        grid (timpy.tools.spectral.grid.Grid): the grid.
        rng (numpy.random.Generator): random source.
        n_bumps (int): number of Gaussians.
        width_range (tuple): bounds of the Gaussian widths.

    Returns:
        numpy.ndarray: samples of the field on the grid.

    Note:
        Centers lie in |x| <= L/8, so a field drawn with the same generator
        state is the same continuum function on any refinement of the grid.
    """
    centers = rng.uniform(-grid.length / 8, grid.length / 8, n_bumps)
    widths = rng.uniform(width_range[0], width_range[1], n_bumps)
    amps = rng.normal(size=n_bumps)
    x = grid.x[np.newaxis, :]
    return np.sum(
        amps[:, None] * np.exp(-((x - centers[:, None]) / widths[:, None]) ** 2),
        axis=0)


# .....................................................................................
def band_limited_random_field(grid, rng, k_max=None):
    """Random real field with Fourier modes 1 <= |k| <= k_max.

    Args:
        grid (timpy.tools.spectral.grid.Grid): the grid.
        rng (numpy.random.Generator): random source.
        k_max (int): highest mode index, below N/2; defaults to N/2 − 1.

    Returns:
        numpy.ndarray: samples of a mean-zero field without Nyquist content.
    """
    nh = grid.n // 2 + 1
    if k_max is None:
        k_max = grid.n // 2 - 1
    k_max = min(int(k_max), grid.n // 2 - 1)
    coeffs = np.zeros(nh, dtype=np.complex128)
    coeffs[1:k_max + 1] = rng.normal(size=k_max) + 1j * rng.normal(size=k_max)
    return grid.irfft(coeffs * grid.n)


# .....................................................................................
def bernstein_table(bank, rng, alphas=(0.5, 1.0, 1.5)):
    """Ratios ‖Λ^α f‖/‖f‖ for single-block fields f = Δ̇_q h.

    Args:
        bank (timpy.tools.spectral.littlewood_paley.DyadicFilterBank): filter bank.
        rng (numpy.random.Generator): random source for h.
        alphas (tuple): orders α.

    Returns:
        pandas.DataFrame with columns q, alpha, ratio, lower, upper, within.
    """
    grid = bank.grid
    h = band_limited_random_field(grid, rng)
    floor = 1e-12 * grid.lp_norm(h)
    rows = []
    for q in bank.q_range(homogeneous=True):
        f = bank.block(h, q, homogeneous=True)
        fnorm = grid.lp_norm(f)
        if fnorm <= floor:
            continue
        for alpha in alphas:
            ratio = grid.lp_norm(grid.frac_deriv(f, alpha)) / fnorm
            lower = (0.75 ** alpha) * 2.0 ** (q * alpha)
            upper = ((8.0 / 3.0) ** alpha) * 2.0 ** (q * alpha)
            rows.append({
                "q": q, "alpha": alpha, "ratio": ratio, "lower": lower,
                "upper": upper, "within": bool(lower <= ratio <= upper)})
    return pd.DataFrame(rows, columns=["q", "alpha", "ratio", "lower", "upper", "within"])


# .....................................................................................
def low_frequency_bernstein_table(bank, rng, alphas=(0.5, 1.0, 1.5)):
    """Ratios ‖Λ^α f‖/‖f‖ for low-pass fields f = S_q h, support |ξ| <= 4/3 2^q.

    Args:
        bank (timpy.tools.spectral.littlewood_paley.DyadicFilterBank): filter bank.
        rng (numpy.random.Generator): random source for h.
        alphas (tuple): orders α.

    Returns:
        pandas.DataFrame with columns q, alpha, ratio, upper, within.
    """
    grid = bank.grid
    h = band_limited_random_field(grid, rng)
    floor = 1e-12 * grid.lp_norm(h)
    rows = []
    for q in bank.q_range(homogeneous=True):
        f = grid.apply_multiplier(h, chi_profile(grid.xi_half * 2.0 ** (-q)))
        fnorm = grid.lp_norm(f)
        if fnorm <= floor:
            continue
        for alpha in alphas:
            ratio = grid.lp_norm(grid.frac_deriv(f, alpha)) / fnorm
            upper = (4.0 / 3.0 * 2.0 ** q) ** alpha
            rows.append({
                "q": q, "alpha": alpha, "ratio": ratio, "upper": upper,
                "within": bool(ratio <= upper * (1 + 1e-12))})
    return pd.DataFrame(rows, columns=["q", "alpha", "ratio", "upper", "within"])


# .....................................................................................
def embedding_constant(bank, fields):
    """Fit C in ‖f‖_{Ḃ^{-1/2}_{2,∞}} <= C ‖f‖_{L¹}.

    Args:
        bank (timpy.tools.spectral.littlewood_paley.DyadicFilterBank): filter bank.
        fields (list of numpy.ndarray): test fields.

    Returns:
        float: largest observed ratio.
    """
    spec = BesovSpec(-0.5, 2, np.inf, homogeneous=True)
    return max(
        besov_norm(bank, f, spec) / bank.grid.lp_norm(f, 1) for f in fields)


# .....................................................................................
def linf_embedding_constant(bank, fields):
    """Fit C in ‖f‖_{L^∞} <= C ‖f‖_{B^{1/2}_{2,1}}."""
    spec = BesovSpec(0.5, 2, 1, homogeneous=False)
    return max(
        bank.grid.lp_norm(f, np.inf) / besov_norm(bank, f, spec) for f in fields)


# .....................................................................................
def moser_constant(bank, pairs, s=0.5):
    """Fit C in ‖fg‖_{Ḃ^s} <= C(‖f‖_∞‖g‖_{Ḃ^s} + ‖g‖_∞‖f‖_{Ḃ^s}), Ḃ^s = Ḃ^s_{2,1}.

    Args:
        bank (timpy.tools.spectral.littlewood_paley.DyadicFilterBank): filter bank.
        pairs (list of tuple): pairs (f, g) of test fields.
        s (float): regularity index, > 0.

    Returns:
        float: largest observed ratio.
    """
    grid = bank.grid
    spec = BesovSpec(s, 2, 1, homogeneous=True)
    ratios = []
    for f, g in pairs:
        lhs = besov_norm(bank, grid.dealiased_product(f, g), spec)
        rhs = (grid.lp_norm(f, np.inf) * besov_norm(bank, g, spec)
               + grid.lp_norm(g, np.inf) * besov_norm(bank, f, spec))
        ratios.append(lhs / rhs)
    return max(ratios)


# .....................................................................................
def product_constant(bank, pairs):
    """Fit C in ‖fg‖_{Ḃ^{1/2}_{2,1}} <= C ‖f‖_{Ḃ^{1/2}_{2,1}} ‖g‖_{Ḃ^{1/2}_{2,1}}."""
    grid = bank.grid
    spec = BesovSpec(0.5, 2, 1, homogeneous=True)
    return max(
        besov_norm(bank, grid.dealiased_product(f, g), spec)
        / (besov_norm(bank, f, spec) * besov_norm(bank, g, spec))
        for f, g in pairs)


# .....................................................................................
def commutator_table(bank, f, g, s=0.5):
    """Scaled commutator norms 2^{q(s+1)} ‖[f, Δ̇_q] g‖ per block.

    Args:
        bank (timpy.tools.spectral.littlewood_paley.DyadicFilterBank): filter bank.
        f (numpy.ndarray): multiplier field.
        g (numpy.ndarray): operand field.
        s (float): regularity of g.

    Returns:
        pandas.DataFrame with columns q and ratio, where ratio divides the
            scaled commutator norm by ‖∂_x f‖_{Ḃ^{1/2}_{2,1}} ‖g‖_{Ḃ^s_{2,1}}.
    """
    grid = bank.grid
    denom = (
        besov_norm(bank, grid.spatial_deriv(f, 1), BesovSpec(0.5, 2, 1, True))
        * besov_norm(bank, g, BesovSpec(s, 2, 1, True)))
    rows = []
    for q in bank.q_range(homogeneous=True):
        cnorm = grid.lp_norm(commutator(bank, f, q, g))
        rows.append({"q": q, "ratio": 2.0 ** (q * (s + 1)) * cnorm / denom})
    return pd.DataFrame(rows, columns=["q", "ratio"])


# .....................................................................................
def commutator_constant(bank, pairs, s=0.5):
    """Fit the uniform-in-q commutator constant over pairs (f, g)."""
    return max(float(commutator_table(bank, f, g, s)["ratio"].max()) for f, g in pairs)


# .....................................................................................
def chemin_lerner_domination_constant(bank, series_list, theta=2.0, s=1.5):
    """Fit C in ‖f‖_{L̃^θ_T(B^s)} <= C(‖f‖_{L^θ_T(L²)} + ‖f‖_{L̃^θ_T(Ḃ^s)}), s > 0.

    Args:
        bank (timpy.tools.spectral.littlewood_paley.DyadicFilterBank): filter bank.
        series_list (list of TimeSeriesField): scalar time series.
        theta (float): time exponent.
        s (float): regularity index, > 0.

    Returns:
        float: largest observed ratio.
    """
    inhom = BesovSpec(s, 2, 1, homogeneous=False)
    hom = BesovSpec(s, 2, 1, homogeneous=True)
    ratios = []
    for series in series_list:
        l2_time = _time_l2(bank, series, theta)
        lhs = chemin_lerner_norm(bank, series, theta, inhom)
        rhs = l2_time + chemin_lerner_norm(bank, series, theta, hom)
        ratios.append(lhs / rhs)
    return max(ratios)


# .....................................................................................
def _time_l2(bank, series, theta):
    grid = bank.grid
    norms = np.array([grid.lp_norm(f) for f in series.fields])
    return float(time_norm(norms, series.times, theta))


# .....................................................................................
def monotonicity_violations(bank, fields, s_values=(-0.5, 0.0, 0.5, 1.5)):
    """Count violations of Besov monotonicity in s (inhomogeneous) and in r.

    Args:
        bank (timpy.tools.spectral.littlewood_paley.DyadicFilterBank): filter bank.
        fields (list of numpy.ndarray): test fields.
        s_values (tuple): increasing regularity indices.

    Returns:
        int: number of failed comparisons; 0 expected.
    """
    bad = 0
    for f in fields:
        norms = [besov_norm(bank, f, BesovSpec(s, 2, 1)) for s in s_values]
        bad += sum(1 for lo, hi in zip(norms, norms[1:]) if lo > hi * (1 + 1e-14))
        for homogeneous in (False, True):
            by_r = [besov_norm(bank, f, BesovSpec(0.5, 2, r, homogeneous))
                    for r in (1, 2, np.inf)]
            bad += sum(1 for lo, hi in zip(by_r[1:], by_r) if lo > hi * (1 + 1e-14))
    return bad


# .....................................................................................
def random_series(grid, rng, count=21, t_max=1.0):
    """Scalar time series of smooth random fields with random time modulation.

    Args:
        grid (timpy.tools.spectral.grid.Grid): the grid.
        rng (numpy.random.Generator): random source.
        count (int): number of snapshots.
        t_max (float): final time.

    Returns:
        timpy.tools.spectral.littlewood_paley.TimeSeriesField
    """
    times = np.linspace(0.0, t_max, count)
    f = smooth_random_field(grid, rng)
    g = smooth_random_field(grid, rng)
    omega = rng.uniform(1.0, 4.0)
    fields = (np.cos(omega * times)[:, None] * f[None, :]
              + np.sin(omega * times)[:, None] * g[None, :])
    return TimeSeriesField(grid, times, fields)


# .....................................................................................
def run_inequality_battery(bank, count=100, seed=0, logger=None):
    """Fit the constants of the harmonic-analysis estimates on random fields.

    Args:
        bank (timpy.tools.spectral.littlewood_paley.DyadicFilterBank): filter bank.
        count (int): number of random fields.
        seed (int): seed of the random generator.
        logger (timpy.tools.util.logtools.Logger): optional logger.

    Returns:
        dict of fitted constants and pass flags.
    """
    refname = "run_inequality_battery"
    grid = bank.grid
    rng = np.random.default_rng(seed)
    fields = [smooth_random_field(grid, rng) for _ in range(count)]
    pairs = list(zip(fields[0::2], fields[1::2]))
    series = [random_series(grid, rng) for _ in range(max(1, count // 20))]
    bern = bernstein_table(bank, rng)
    low = low_frequency_bernstein_table(bank, rng)
    results = {
        "grid": {"L": grid.length, "N": grid.n},
        "count": count,
        "seed": seed,
        "bernstein_within": bool(bern["within"].all()),
        "low_frequency_bernstein_within": bool(low["within"].all()),
        "embedding_constant": embedding_constant(bank, fields),
        "linf_embedding_constant": linf_embedding_constant(bank, fields),
        "moser_constant": moser_constant(bank, pairs),
        "product_constant": product_constant(bank, pairs),
        "commutator_constant": commutator_constant(bank, pairs[:5]),
        "chemin_lerner_constant": chemin_lerner_domination_constant(bank, series),
        "monotonicity_violations": monotonicity_violations(bank, fields),
    }
    logit(logger, f"Fitted constants on {grid}", refname=refname, print_obj=results)
    return results
