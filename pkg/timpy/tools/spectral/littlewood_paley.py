"""Dyadic Littlewood-Paley decomposition, Besov and Chemin-Lerner norms.

The low-pass profile χ equals 1 on |ξ| <= 1 and vanishes on |ξ| >= 4/3, and the
shell profile is φ(ξ) = χ(ξ/2) − χ(ξ), supported in 1 <= |ξ| <= 8/3.  Sums of
shells telescope, so both partitions of unity hold as algebraic identities:

    χ(ξ) + Σ_{q=0}^{Q} φ(2^{-q}ξ) = χ(2^{-Q-1}ξ),
    Σ_{q=P}^{Q} φ(2^{-q}ξ) = χ(2^{-Q-1}ξ) − χ(2^{-P}ξ).
"""
import math

import numpy as np
import pandas as pd
from scipy.integrate import trapezoid

from timpy.tools.spectral.constants import MIN_ACTIVE_SHELLS, Tolerance
from timpy.tools.spectral.errors import GridError, ParameterError
from timpy.tools.spectral.grid import check_exponent, lp_reduce
from timpy.tools.spectral.model import StateField


# .....................................................................................
def smooth_step(t):
    """C^∞ transition from 0 at t <= 0 to 1 at t >= 1.

    Args:
        t (float or numpy.ndarray): argument.

    Returns:
        numpy.ndarray: B(t) / (B(t) + B(1 − t)) with B(t) = exp(−1/t) for t > 0.
    """
    t = np.asarray(t, dtype=np.float64)

    def _bump(s):
        pos = s > 0
        return np.where(pos, np.exp(-1.0 / np.where(pos, s, 1.0)), 0.0)

    left = _bump(t)
    right = _bump(1.0 - t)
    return left / (left + right)


# .....................................................................................
def chi_profile(xi):
    """Low-pass profile χ, 1 on |ξ| <= 1 and 0 on |ξ| >= 4/3."""
    return smooth_step(3.0 * (4.0 / 3.0 - np.abs(np.asarray(xi, dtype=np.float64))))


# .....................................................................................
def phi_profile(xi):
    """Shell profile φ(ξ) = χ(ξ/2) − χ(ξ)."""
    xi = np.asarray(xi, dtype=np.float64)
    return chi_profile(0.5 * xi) - chi_profile(xi)


# .....................................................................................
class BesovSpec:
    """Indices of a Besov space B^s_{p,r} or its homogeneous version."""

    # ........................
    def __init__(self, s, p=2, r=1, homogeneous=False):
        """Constructor.

        Args:
            s (float): regularity index.
            p (float or str): integrability exponent in [1, inf].
            r (float or str): summation exponent in [1, inf].
            homogeneous (bool): use the homogeneous blocks.

        Raises:
            ParameterError: on invalid exponents.
        """
        self.s = float(s)
        if not np.isfinite(self.s):
            raise ParameterError(f"Regularity index s={s!r} must be finite")
        self.p = check_exponent(p, "p")
        self.r = check_exponent(r, "r")
        self.homogeneous = bool(homogeneous)

    # ........................
    def __repr__(self):
        kind = "Bdot" if self.homogeneous else "B"
        return f"{kind}^{self.s}_{{{self.p},{self.r}}}"

    # ........................
    def weights(self, qs):
        """Dyadic weights per block index.

        Args:
            qs (numpy.ndarray): block indices.

        Returns:
            numpy.ndarray: 2^{qs} homogeneous; the inhomogeneous low-pass block
                q = -1 has weight 1.
        """
        qs = np.asarray(qs, dtype=np.float64)
        if self.homogeneous:
            return 2.0 ** (qs * self.s)
        return 2.0 ** (np.maximum(qs, 0.0) * self.s)


# .....................................................................................
def sequence_norm(values, r, axis=-1):
    """ℓ^r norm of non-negative values along an axis.

    Args:
        values (numpy.ndarray): non-negative values.
        r (float): exponent in [1, inf].
        axis (int): axis to reduce.

    Returns:
        numpy.ndarray or float
    """
    if np.isinf(r):
        return np.max(values, axis=axis)
    if r == 1:
        return np.sum(values, axis=axis)
    return np.sum(values ** r, axis=axis) ** (1.0 / r)


# .....................................................................................
def _as_samples(f):
    """Return (samples, vector) for a StateField or an array."""
    if isinstance(f, StateField):
        return f.data, True
    arr = np.asarray(f, dtype=np.float64)
    return arr, arr.ndim == 2


# .....................................................................................
class DyadicFilterBank:
    """Samples of χ and φ(2^{-q}·) on the non-negative frequencies of a grid.

    Attributes:
        grid (timpy.tools.spectral.grid.Grid): the grid.
        q_min (int): floor(log2 Δξ) − 2, lowest homogeneous block.
        q_max (int): ceil(log2 ξ_Nyq) + 1, highest block.
    """

    # ........................
    def __init__(self, grid):
        """Constructor.

        Args:
            grid (timpy.tools.spectral.grid.Grid): the grid.

        Raises:
            GridError: on a grid with fewer than 3 shells carrying frequencies,
                or when a partition of unity fails on the grid.
        """
        self.grid = grid
        self.q_min = int(math.floor(math.log2(grid.dxi))) - 2
        self.q_max = int(math.ceil(math.log2(grid.xi_nyquist))) + 1
        xi = grid.xi_half
        self._chi = chi_profile(xi)
        self._chi.flags.writeable = False
        self._shells = {}
        for q in range(min(self.q_min, 0), self.q_max + 1):
            prof = phi_profile(xi * 2.0 ** (-q))
            prof.flags.writeable = False
            self._shells[q] = prof
        active = [
            q for q in range(self.q_min, self.q_max + 1)
            if np.any(self._shells[q][1:] > 0)]
        if len(active) < MIN_ACTIVE_SHELLS:
            raise GridError(
                f"{grid} hosts only {len(active)} dyadic shells, "
                f"at least {MIN_ACTIVE_SHELLS} required")
        self.check_partition()

    # ........................
    @property
    def chi(self):
        """Return χ sampled at the non-negative grid frequencies.

        Returns:
            numpy.ndarray
        """
        return self._chi

    # ........................
    def shell(self, q):
        """Return φ(2^{-q}·) at the non-negative grid frequencies.

        Args:
            q (int): block index.

        Returns:
            numpy.ndarray or None when the shell carries no grid frequency.
        """
        return self._shells.get(int(q))

    # ........................
    def q_range(self, homogeneous=False):
        """Return the block indices carrying grid frequencies.

        Args:
            homogeneous (bool): homogeneous blocks if True.

        Returns:
            list of int
        """
        if homogeneous:
            return list(range(self.q_min, self.q_max + 1))
        return list(range(-1, self.q_max + 1))

    # ........................
    def profile(self, q, homogeneous=False):
        """Return the multiplier of block q.

        Args:
            q (int): block index.
            homogeneous (bool): Δ̇_q if True, Δ_q otherwise.

        Returns:
            numpy.ndarray or None for a block that is zero on the grid.

        Note:
            The inhomogeneous block q = -1 is the low-pass χ and q <= -2 is zero.
        """
        q = int(q)
        if homogeneous:
            if self.q_min <= q <= self.q_max:
                return self._shells[q]
            return None
        if q == -1:
            return self._chi
        if 0 <= q <= self.q_max:
            return self._shells[q]
        return None

    # ........................
    def partition_residual(self, homogeneous=False):
        """Largest deviation of the summed profiles from 1 on the grid.

        Args:
            homogeneous (bool): check the homogeneous partition on ξ != 0.

        Returns:
            float
        """
        total = np.zeros_like(self.grid.xi_half)
        for q in self.q_range(homogeneous):
            total += self.profile(q, homogeneous)
        if homogeneous:
            total = total[1:]
        return float(np.max(np.abs(total - 1.0)))

    # ........................
    def check_partition(self):
        """Check both partitions of unity on the grid.

        Raises:
            GridError: when the summed profiles deviate from 1 by more than
                Tolerance.PARTITION.
        """
        for homogeneous in (False, True):
            residual = self.partition_residual(homogeneous)
            if residual > Tolerance.PARTITION:
                kind = "homogeneous" if homogeneous else "inhomogeneous"
                raise GridError(
                    f"{kind.capitalize()} partition of unity on {self.grid} off by "
                    f"{residual:.3e}")

    # ........................
    def block(self, f, q, homogeneous=False):
        """Apply Δ_q or Δ̇_q.

        Args:
            f (array-like or StateField): real samples, last axis of length N.
            q (int): block index.
            homogeneous (bool): Δ̇_q if True.

        Returns:
            numpy.ndarray: block samples, zero outside the active range.
        """
        samples, _ = _as_samples(f)
        samples = self.grid.check_field(samples)
        prof = self.profile(q, homogeneous)
        if prof is None:
            return np.zeros_like(samples)
        return self.grid.irfft(self.grid.rfft(samples) * prof)

    # ........................
    def blocks(self, f, homogeneous=False):
        """Apply every block of the active range.

        Args:
            f (array-like or StateField): real samples, last axis of length N.
            homogeneous (bool): homogeneous blocks if True.

        Returns:
            tuple (qs, numpy.ndarray of shape (len(qs), *f.shape))
        """
        samples, _ = _as_samples(f)
        samples = self.grid.check_field(samples)
        coeffs = self.grid.rfft(samples)
        qs = self.q_range(homogeneous)
        out = np.empty((len(qs),) + samples.shape)
        for i, q in enumerate(qs):
            out[i] = self.grid.irfft(coeffs * self.profile(q, homogeneous))
        return qs, out

    # ........................
    def block_norms(self, f, p=2, homogeneous=False, vector=None):
        """L^p norms of every block.

        Args:
            f (array-like or StateField): real samples.  Leading axes other than
                the component axis are kept as batch axes.
            p (float or str): integrability exponent.
            homogeneous (bool): homogeneous blocks if True.
            vector (bool): combine the axis before last with the pointwise
                Euclidean norm; defaults to True for a StateField or 2-d input.

        Returns:
            tuple (qs, numpy.ndarray with the block axis last)
        """
        samples, default_vector = _as_samples(f)
        if vector is None:
            vector = default_vector
        p = check_exponent(p)
        samples = self.grid.check_field(samples)
        coeffs = self.grid.rfft(samples)
        qs = self.q_range(homogeneous)
        norms = []
        for q in qs:
            blk = self.grid.irfft(coeffs * self.profile(q, homogeneous))
            if vector:
                mag = np.sqrt(np.sum(blk * blk, axis=-2))
            else:
                mag = np.abs(blk)
            norms.append(lp_reduce(mag, p, self.grid.dx, axes=-1))
        return qs, np.stack(norms, axis=-1)


# .....................................................................................
def build_filter_bank(grid):
    """Build the dyadic filter bank of a grid.

    Args:
        grid (timpy.tools.spectral.grid.Grid): the grid.

    Returns:
        timpy.tools.spectral.littlewood_paley.DyadicFilterBank
    """
    return DyadicFilterBank(grid)


# .....................................................................................
def block(bank, f, q, homogeneous=False):
    """Apply Δ_q (or Δ̇_q) from a filter bank."""
    return bank.block(f, q, homogeneous)


# .....................................................................................
def besov_norm(bank, f, spec, vector=None):
    """Besov norm: ℓ^r over q of 2^{qs} ‖block‖_{L^p}.

    Args:
        bank (DyadicFilterBank): filter bank of the grid.
        f (array-like or StateField): real samples, components combined
            pointwise when vector.
        spec (BesovSpec): space indices.
        vector (bool): see DyadicFilterBank.block_norms.

    Returns:
        float
    """
    qs, norms = bank.block_norms(f, spec.p, spec.homogeneous, vector=vector)
    return float(sequence_norm(spec.weights(qs) * norms, spec.r))


# .....................................................................................
def block_norm_table(bank, f, spec, vector=None):
    """Weighted block norms as a table.

    Args:
        bank (DyadicFilterBank): filter bank of the grid.
        f (array-like or StateField): real samples.
        spec (BesovSpec): space indices.
        vector (bool): see DyadicFilterBank.block_norms.

    Returns:
        pandas.DataFrame with columns q and weighted_norm.
    """
    qs, norms = bank.block_norms(f, spec.p, spec.homogeneous, vector=vector)
    return pd.DataFrame({"q": qs, "weighted_norm": spec.weights(qs) * norms})


# .....................................................................................
class TimeSeriesField:
    """Snapshots of a field at strictly increasing times on one grid."""

    # ........................
    def __init__(self, grid, times, fields):
        """Constructor.

        Args:
            grid (timpy.tools.spectral.grid.Grid): shared grid.
            times (array-like): strictly increasing snapshot times.
            fields (array-like): samples with the time axis first, shape (nt, N)
                for scalar or (nt, 4, N) for state fields.

        Raises:
            ParameterError: on non-increasing times or a time/field mismatch.
            GridError: on samples that do not match the grid.
        """
        times = np.asarray(times, dtype=np.float64)
        fields = grid.check_field(fields)
        if times.ndim != 1 or len(times) == 0:
            raise ParameterError("Time series needs at least one snapshot")
        if fields.shape[0] != len(times) or fields.ndim not in (2, 3):
            raise ParameterError(
                f"{len(times)} times do not match fields of shape {fields.shape}")
        if np.any(np.diff(times) <= 0):
            raise ParameterError("Snapshot times must be strictly increasing")
        self.grid = grid
        self.times = times
        self.fields = fields

    # ........................
    @property
    def is_vector(self):
        """Return True for state-valued snapshots.

        Returns:
            bool
        """
        return self.fields.ndim == 3

    # ........................
    def __len__(self):
        return len(self.times)


# .....................................................................................
def time_norm(values, times, theta):
    """L^θ norm in time by trapezoidal quadrature, sup for θ = inf.

    Args:
        values (numpy.ndarray): non-negative values with time on axis 0.
        times (numpy.ndarray): snapshot times.
        theta (float): time exponent in [1, inf].

    Returns:
        numpy.ndarray over the remaining axes.

    Raises:
        ParameterError: on a single snapshot with finite θ.
    """
    if np.isinf(theta):
        return np.max(values, axis=0)
    if len(times) < 2:
        raise ParameterError("A finite time exponent needs at least 2 snapshots")
    return trapezoid(values ** theta, x=times, axis=0) ** (1.0 / theta)


# .....................................................................................
def chemin_lerner_norm(bank, series, theta, spec):
    """Chemin-Lerner norm: ℓ^r over q of 2^{qs} ‖Δ_q f‖_{L^θ_T(L^p)}.

    Args:
        bank (DyadicFilterBank): filter bank of the grid.
        series (TimeSeriesField): snapshots of the field.
        theta (float or str): time exponent in [1, inf].
        spec (BesovSpec): space indices.

    Returns:
        float
    """
    theta = check_exponent(theta, "theta")
    qs, norms = bank.block_norms(
        series.fields, spec.p, spec.homogeneous, vector=series.is_vector)
    per_block = time_norm(norms, series.times, theta)
    return float(sequence_norm(spec.weights(qs) * per_block, spec.r))


# .....................................................................................
def time_norm_of_besov(bank, series, theta, spec):
    """Time norm of the Besov norm, ‖ ‖f(t)‖_B ‖_{L^θ_T}.

    Args:
        bank (DyadicFilterBank): filter bank of the grid.
        series (TimeSeriesField): snapshots of the field.
        theta (float or str): time exponent in [1, inf].
        spec (BesovSpec): space indices.

    Returns:
        float
    """
    theta = check_exponent(theta, "theta")
    qs, norms = bank.block_norms(
        series.fields, spec.p, spec.homogeneous, vector=series.is_vector)
    besov = sequence_norm(spec.weights(qs) * norms, spec.r)
    return float(time_norm(besov, series.times, theta))


# .....................................................................................
def commutator(bank, f, q, g):
    """Commutator [f, Δ̇_q] g = f Δ̇_q g − Δ̇_q(f g) with dealiased products.

    Args:
        bank (DyadicFilterBank): filter bank of the grid.
        f (array-like): real samples.
        q (int): homogeneous block index.
        g (array-like): real samples.

    Returns:
        numpy.ndarray
    """
    grid = bank.grid
    first = grid.dealiased_product(f, bank.block(g, q, homogeneous=True))
    second = bank.block(grid.dealiased_product(f, g), q, homogeneous=True)
    return first - second
