"""Fourier symbol of the linearized Timoshenko system and its dissipative structure.

The linear system U_t + A U_x + L U = 0 has the symbol Φ̂(iξ) = iξA + L and the
per-mode solution Û(t) = exp(−tΦ̂(iξ)) Û(0).  Eigenvalues λ of −Φ̂ satisfy

    Re λ(iξ) <= −c η(ξ),  η1(ξ) = ξ²/(1+ξ²) for a = 1,  η2(ξ) = ξ²/(1+ξ²)² else.
"""
import json

import numpy as np
import pandas as pd
from scipy.linalg import expm

from timpy.tools.spectral.constants import (
    ENCODING, ETA_KIND, MIN_SWEEP_POINTS, SweepDefaults, Tolerance)
from timpy.tools.spectral.errors import EigenSolverError, ParameterError
from timpy.tools.util.logtools import logit


# .....................................................................................
class SymbolMatrices:
    """Constant matrices A and L of the linearized first-order system."""

    # ........................
    def __init__(self, params):
        """Constructor.

        Args:
            params (timpy.tools.spectral.model.ModelParams): system parameters.
        """
        a = params.a
        self.A = -np.array([
            [0.0, 1.0, 0.0, 0.0],
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, a],
            [0.0, 0.0, a, 0.0]])
        self.L = np.array([
            [0.0, 0.0, 0.0, 1.0],
            [0.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 0.0],
            [-1.0, 0.0, 0.0, params.gamma]])
        self.A.flags.writeable = False
        self.L.flags.writeable = False

    # ........................
    def check(self):
        """Check the structural invariants of A and L.

        Returns:
            bool: True when A is symmetric and L has the damping pattern.
        """
        off = self.L - np.diag(np.diag(self.L))
        return bool(
            np.array_equal(self.A, self.A.T)
            and np.count_nonzero(off) == 2
            and sorted(off[off != 0].tolist()) == [-1.0, 1.0]
            and np.count_nonzero(np.diag(self.L)) == 1)


# .....................................................................................
def symbol_matrices(params):
    """Return the matrices A and L for params."""
    return SymbolMatrices(params)


# .....................................................................................
def symbol(xi, params):
    """Evaluate Φ̂(iξ) = iξA + L.

    Args:
        xi (float or numpy.ndarray): frequencies.
        params (timpy.tools.spectral.model.ModelParams): system parameters.

    Returns:
        numpy.ndarray: complex array of shape xi.shape + (4, 4).
    """
    mats = SymbolMatrices(params)
    xi = np.asarray(xi, dtype=np.float64)
    return 1j * xi[..., None, None] * mats.A + mats.L


# .....................................................................................
def char_poly_coefficients(xi, params):
    """Coefficients of det(λI + Φ̂(iξ)), highest degree first.

    The determinant is (λ² + ξ²)(λ² + γλ + a²ξ²) + λ², so the monic quartic has
    coefficients 1, γ, (1 + a²)ξ² + 1, γξ², a²ξ⁴.

    Args:
        xi (float or numpy.ndarray): frequencies.
        params (timpy.tools.spectral.model.ModelParams): system parameters.

    Returns:
        numpy.ndarray of shape xi.shape + (5,)
    """
    xi2 = np.asarray(xi, dtype=np.float64) ** 2
    a2 = params.a ** 2
    gamma = params.gamma
    return np.stack([
        np.ones_like(xi2), np.full_like(xi2, gamma), (1.0 + a2) * xi2 + 1.0,
        gamma * xi2, a2 * xi2 * xi2], axis=-1)


# .....................................................................................
def _horner(coefs, lam):
    val = np.zeros_like(lam)
    dval = np.zeros_like(lam)
    for k in range(coefs.shape[-1]):
        dval = dval * lam + val
        val = val * lam + coefs[..., k:k + 1]
    return val, dval


# .....................................................................................
def _first_bad_xi(xi, mask):
    return float(np.asarray(xi).reshape(-1)[np.argmax(mask.reshape(-1))])


# .....................................................................................
def eigenvalues(xi, params):
    """Eigenvalues of −Φ̂(iξ) from the characteristic quartic.

    Roots come from balanced companion matrices and receive one Newton step,
    kept only where it lowers |p(λ)|.  When ξ² underflows the quartic
    deflates to λ²(λ² + γλ + 1).

    Args:
        xi (float or numpy.ndarray): frequencies.
        params (timpy.tools.spectral.model.ModelParams): system parameters.

    Returns:
        numpy.ndarray: complex array of shape xi.shape + (4,), sorted by real part.

    Raises:
        EigenSolverError: when the eigen solver fails or returns non-finite roots.
    """
    xi = np.asarray(xi, dtype=np.float64)
    if not np.all(np.isfinite(xi)):
        raise EigenSolverError(_first_bad_xi(xi, ~np.isfinite(xi)), "Non-finite frequency")
    coefs = char_poly_coefficients(xi, params).reshape(-1, 5)
    count = coefs.shape[0]
    comp = np.zeros((count, 4, 4))
    comp[:, 0, :] = -coefs[:, 1:]
    comp[:, 1, 0] = comp[:, 2, 1] = comp[:, 3, 2] = 1.0
    try:
        roots = np.linalg.eigvals(comp).astype(np.complex128)
    except np.linalg.LinAlgError as e:
        raise EigenSolverError(float(xi.reshape(-1)[0]), f"Eigen solver failed: {e}")

    polished = roots.copy()
    val, dval = _horner(coefs.astype(np.complex128), roots)
    with np.errstate(divide="ignore", invalid="ignore"):
        step = roots - val / dval
    new_val, _ = _horner(coefs.astype(np.complex128), step)
    better = np.isfinite(step) & (np.abs(new_val) <= np.abs(val))
    polished[better] = step[better]

    deflate = (coefs[:, 3] == 0) & (coefs[:, 4] == 0)
    if np.any(deflate):
        gamma = params.gamma
        disc = np.sqrt(complex(gamma * gamma - 4.0))
        quad = np.array([0.0, 0.0, (-gamma + disc) / 2, (-gamma - disc) / 2])
        polished[deflate] = quad

    bad = ~np.all(np.isfinite(polished), axis=-1)
    if np.any(bad):
        raise EigenSolverError(_first_bad_xi(xi, bad))
    order = np.argsort(polished.real, axis=-1, kind="stable")
    polished = np.take_along_axis(polished, order, axis=-1)
    return polished.reshape(xi.shape + (4,))


# .....................................................................................
def eigen_residuals(xi, params, lam=None):
    """Smallest singular value of −Φ̂(iξ) − λI for each eigenvalue.

    Args:
        xi (float or numpy.ndarray): frequencies.
        params (timpy.tools.spectral.model.ModelParams): system parameters.
        lam (numpy.ndarray): eigenvalues, computed when None.

    Returns:
        numpy.ndarray of shape xi.shape + (4,): the residual ‖(−Φ̂ − λI)v‖ of
            the best unit eigenvector v.
    """
    xi = np.asarray(xi, dtype=np.float64)
    if lam is None:
        lam = eigenvalues(xi, params)
    gen = -symbol(xi, params)
    shifted = gen[..., None, :, :] - lam[..., :, None, None] * np.eye(4)
    return np.linalg.svd(shifted, compute_uv=False)[..., -1]


# .....................................................................................
def check_eigenvalues(xi, params, lam=None):
    """Check that every eigenvalue has a near-null eigenvector.

    Residuals are scaled by 1 + max(1, a)|ξ| + γ, a bound on the size of Φ̂.

    Args:
        xi (float or numpy.ndarray): frequencies.
        params (timpy.tools.spectral.model.ModelParams): system parameters.
        lam (numpy.ndarray): eigenvalues, computed when None.

    Returns:
        float: the largest scaled residual.

    Raises:
        EigenSolverError: at the first frequency whose scaled residual exceeds
            Tolerance.EIGEN_RESIDUAL.
    """
    xi = np.asarray(xi, dtype=np.float64)
    scale = np.asarray(1.0 + params.max_speed * np.abs(xi) + params.gamma)
    scaled = eigen_residuals(xi, params, lam) / scale[..., None]
    bad = np.any(scaled > Tolerance.EIGEN_RESIDUAL, axis=-1)
    if np.any(bad):
        xi_bad = _first_bad_xi(xi, bad)
        raise EigenSolverError(
            xi_bad,
            f"Eigenvector residual above {Tolerance.EIGEN_RESIDUAL} at xi={xi_bad!r}")
    return float(np.max(scaled))


# .....................................................................................
def eta(xi, kind):
    """Dissipation rate profile.

    Args:
        xi (float or numpy.ndarray): frequencies.
        kind (int or str): 1 for ξ²/(1+ξ²), 2 for ξ²/(1+ξ²)².

    Returns:
        numpy.ndarray or float

    Raises:
        ParameterError: on an unknown kind.
    """
    kind = str(kind)
    xi2 = np.asarray(xi, dtype=np.float64) ** 2
    if kind == ETA_KIND.ETA1:
        return xi2 / (1.0 + xi2)
    if kind == ETA_KIND.ETA2:
        return xi2 / (1.0 + xi2) ** 2
    raise ParameterError(f"Unknown eta kind {kind!r}, use 1 or 2")


# .....................................................................................
def resolve_eta_kind(params, kind=ETA_KIND.AUTO):
    """Return the profile matching params: η1 for a = 1, η2 otherwise.

    Args:
        params (timpy.tools.spectral.model.ModelParams): system parameters.
        kind (str): 1, 2 or auto.

    Returns:
        str: ETA_KIND.ETA1 or ETA_KIND.ETA2
    """
    kind = str(kind)
    if kind not in ETA_KIND.values():
        raise ParameterError(f"Unknown eta kind {kind!r}, use one of {ETA_KIND.values()}")
    if kind != ETA_KIND.AUTO:
        return kind
    if abs(params.a - 1.0) <= Tolerance.PARAM_EQUAL:
        return ETA_KIND.ETA1
    return ETA_KIND.ETA2


# .....................................................................................
def standard_xi_grid(xi_min=SweepDefaults.XI_MIN, xi_max=SweepDefaults.XI_MAX,
                     points=SweepDefaults.POINTS):
    """Log-spaced positive frequency grid.

    Args:
        xi_min (float): smallest frequency, > 0.
        xi_max (float): largest frequency, > xi_min.
        points (int): number of frequencies.

    Returns:
        numpy.ndarray
    """
    if not (0 < xi_min < xi_max):
        raise ParameterError(f"Need 0 < xi_min < xi_max, got {xi_min}, {xi_max}")
    return np.logspace(np.log10(xi_min), np.log10(xi_max), int(points))


# .....................................................................................
class SymbolReport:
    """Eigenvalue sweep and dissipative ratio fit over a frequency grid.

    Attributes:
        xi (numpy.ndarray): frequencies.
        eigenvalues (numpy.ndarray): eigenvalues of −Φ̂, shape (len(xi), 4).
        max_re_lambda (numpy.ndarray): largest real part per frequency.
        ratio (numpy.ndarray): −max_re_lambda / η(ξ).
        eta_kind (str): profile used for the ratio.
        c_best (float): smallest ratio.
        a (float): wave speed.
        gamma (float): damping.
    """

    # ........................
    def __init__(self, xi, eigvals, eta_kind, a, gamma):
        """Constructor.

        Args:
            xi (numpy.ndarray): frequencies, all nonzero.
            eigvals (numpy.ndarray): eigenvalues per frequency.
            eta_kind (str): ETA_KIND.ETA1 or ETA_KIND.ETA2.
            a (float): wave speed.
            gamma (float): damping.
        """
        self.xi = np.asarray(xi, dtype=np.float64)
        self.eigenvalues = eigvals
        self.max_re_lambda = np.max(eigvals.real, axis=-1)
        self.eta_kind = eta_kind
        self.ratio = -self.max_re_lambda / eta(self.xi, eta_kind)
        self.c_best = float(np.min(self.ratio))
        self.a = a
        self.gamma = gamma

    # ........................
    @property
    def passed(self):
        """Return True when the dissipative constant is positive.

        Returns:
            bool
        """
        return bool(self.c_best > 0)

    # ........................
    @property
    def ratio_max(self):
        """Return the largest ratio over the grid.

        Returns:
            float
        """
        return float(np.max(self.ratio))

    # ........................
    def loglog_slope(self, xi_lo, xi_hi):
        """Least-squares slope of log ratio against log ξ on a sub-range.

        Args:
            xi_lo (float): lower frequency.
            xi_hi (float): upper frequency.

        Returns:
            float

        Raises:
            ParameterError: with fewer than 2 usable frequencies in the range.
        """
        sel = (self.xi >= xi_lo) & (self.xi <= xi_hi) & (self.ratio > 0)
        if np.count_nonzero(sel) < 2:
            raise ParameterError(f"Too few positive ratios on [{xi_lo}, {xi_hi}]")
        slope, _ = np.polyfit(np.log(self.xi[sel]), np.log(self.ratio[sel]), 1)
        return float(slope)

    # ........................
    def trace_residual(self):
        """Largest |Σλ + γ| over the grid.

        Returns:
            float
        """
        return float(np.max(np.abs(np.sum(self.eigenvalues, axis=-1) + self.gamma)))

    # ........................
    def to_dict(self):
        """Return the JSON report.

        Returns:
            dict with keys xi, max_re_lambda, ratio, c_best and pass, plus the
                parameters and the profile used.
        """
        return {
            "a": self.a,
            "gamma": self.gamma,
            "eta": self.eta_kind,
            "xi": self.xi.tolist(),
            "max_re_lambda": self.max_re_lambda.tolist(),
            "ratio": self.ratio.tolist(),
            "c_best": self.c_best,
            "ratio_max": self.ratio_max,
            "pass": self.passed,
        }

    # ........................
    def to_dataframe(self):
        """Return per-frequency values as a table.

        Returns:
            pandas.DataFrame with columns xi, max_re_lambda, ratio and the real and
                imaginary parts of each eigenvalue.
        """
        table = {"xi": self.xi, "max_re_lambda": self.max_re_lambda, "ratio": self.ratio}
        for j in range(self.eigenvalues.shape[-1]):
            table[f"re_lambda_{j}"] = self.eigenvalues[:, j].real
            table[f"im_lambda_{j}"] = self.eigenvalues[:, j].imag
        return pd.DataFrame(table)

    # ........................
    def write_json(self, filename):
        """Write the JSON report.

        Args:
            filename (str): output file.
        """
        with open(filename, mode="w", encoding=ENCODING) as out:
            json.dump(self.to_dict(), out, indent=2)

    # ........................
    def write_csv(self, filename):
        """Write the per-frequency table as CSV.

        Args:
            filename (str): output file.
        """
        self.to_dataframe().to_csv(filename, index=False)


# .....................................................................................
def dissipative_fit(params, xi_grid, eta_kind=ETA_KIND.AUTO, logger=None):
    """Fit the dissipative constant c in Re λ(iξ) <= −c η(ξ).

    Args:
        params (timpy.tools.spectral.model.ModelParams): system parameters.
        xi_grid (numpy.ndarray): nonzero frequencies, at least 100.
        eta_kind (str): 1, 2 or auto (η1 for a = 1, η2 otherwise).
        logger (timpy.tools.util.logtools.Logger): optional logger.

    Returns:
        timpy.tools.spectral.symbol.SymbolReport

    Raises:
        ParameterError: on a grid containing 0 or with fewer than 100 points.
        EigenSolverError: propagated from the eigen solver.
    """
    refname = "dissipative_fit"
    xi_grid = np.asarray(xi_grid, dtype=np.float64).reshape(-1)
    if xi_grid.size < MIN_SWEEP_POINTS:
        raise ParameterError(
            f"Sweep needs at least {MIN_SWEEP_POINTS} frequencies, got {xi_grid.size}")
    if np.any(xi_grid == 0):
        raise ParameterError("Sweep grid must exclude xi = 0")
    kind = resolve_eta_kind(params, eta_kind)
    logit(logger, f"Sweeping {xi_grid.size} frequencies in "
          f"[{xi_grid.min():.3g}, {xi_grid.max():.3g}] for {params}", refname=refname)
    lam = eigenvalues(xi_grid, params)
    check_eigenvalues(xi_grid, params, lam)
    report = SymbolReport(xi_grid, lam, kind, params.a, params.gamma)
    logit(logger, f"eta{kind} ratio in [{report.c_best:.6g}, {report.ratio_max:.6g}], "
          f"pass={report.passed}", refname=refname)
    return report


# .....................................................................................
def semigroup_matrices(xi, t, params):
    """Green matrices exp(−tΦ̂(iξ)) by scaling and squaring.

    Args:
        xi (float or numpy.ndarray): frequencies.
        t (float): time, >= 0.
        params (timpy.tools.spectral.model.ModelParams): system parameters.

    Returns:
        numpy.ndarray: complex array of shape xi.shape + (4, 4).
    """
    t = float(t)
    if t < 0 or not np.isfinite(t):
        raise ParameterError(f"Time t={t} must be finite and >= 0")
    gen = -t * symbol(xi, params)
    if t == 0:
        return np.broadcast_to(np.eye(4, dtype=np.complex128), gen.shape).copy()
    return expm(gen)


# .....................................................................................
def semigroup_norm(xi, t, params):
    """Operator 2-norm of exp(−tΦ̂(iξ)).

    Args:
        xi (float or numpy.ndarray): frequencies.
        t (float): time, >= 0.
        params (timpy.tools.spectral.model.ModelParams): system parameters.

    Returns:
        numpy.ndarray or float with the shape of xi.
    """
    xi = np.asarray(xi, dtype=np.float64)
    if float(t) == 0:
        norms = np.ones(xi.shape)
    else:
        norms = np.linalg.svd(semigroup_matrices(xi, t, params), compute_uv=False)[..., 0]
    return float(norms) if norms.ndim == 0 else norms


# .....................................................................................
def fit_semigroup_envelope(
        params, xi_grid, times=SweepDefaults.ENVELOPE_TIMES, c=None,
        eta_kind=ETA_KIND.AUTO, logger=None):
    """Fit one constant C in ‖exp(−tΦ̂(iξ))‖ <= C exp(−c η(ξ) t).

    Args:
        params (timpy.tools.spectral.model.ModelParams): system parameters.
        xi_grid (numpy.ndarray): frequencies.
        times (tuple): times t.
        c (float): dissipative constant; fitted with dissipative_fit when None.
        eta_kind (str): 1, 2 or auto.
        logger (timpy.tools.util.logtools.Logger): optional logger.

    Returns:
        tuple (C, pandas.DataFrame with columns xi, t, norm, envelope_ratio)
    """
    xi_grid = np.asarray(xi_grid, dtype=np.float64).reshape(-1)
    kind = resolve_eta_kind(params, eta_kind)
    if c is None:
        c = dissipative_fit(params, xi_grid, kind, logger=logger).c_best
    frames = []
    for t in times:
        norms = semigroup_norm(xi_grid, t, params)
        frames.append(pd.DataFrame({
            "xi": xi_grid, "t": float(t), "norm": norms,
            "envelope_ratio": norms * np.exp(c * eta(xi_grid, kind) * t)}))
    table = pd.concat(frames, ignore_index=True)
    big_c = float(table["envelope_ratio"].max())
    logit(logger, f"Semigroup envelope C={big_c:.6g} with c={c:.6g} over "
          f"{len(times)} times", refname="fit_semigroup_envelope")
    return big_c, table
