"""Periodic grid, discrete Fourier transform contract and spectral derivatives."""
import numpy as np

from timpy.tools.spectral.constants import MIN_GRID_POINTS
from timpy.tools.spectral.errors import GridError, ParameterError


# .....................................................................................
def is_power_of_two(n):
    """Test whether an integer is a positive power of two.

    Args:
        n (int): value to test

    Returns:
        bool: True if n is 2**k for some k >= 0.
    """
    n = int(n)
    return n > 0 and (n & (n - 1)) == 0


# .....................................................................................
def check_exponent(p, name="p"):
    """Validate an integrability or summation exponent in [1, inf].

    Args:
        p (float or str): exponent, "inf" accepted for infinity.
        name (str): exponent name for error messages.

    Returns:
        float: the exponent, np.inf for infinity.

    Raises:
        ParameterError: on an exponent below 1 or not a number.
    """
    try:
        val = float(p)
    except (TypeError, ValueError):
        raise ParameterError(f"Exponent {name}={p!r} is not a number")
    if np.isnan(val) or val < 1:
        raise ParameterError(f"Exponent {name}={p!r} must lie in [1, inf]")
    return val


# .....................................................................................
def lp_reduce(values, p, dx, axes):
    """Rectangle-rule L^p norm of non-negative samples over the given axes.

    Args:
        values (numpy.ndarray): non-negative pointwise magnitudes.
        p (float): exponent in [1, inf].
        dx (float): quadrature weight per sample.
        axes (tuple): axes to reduce.

    Returns:
        numpy.ndarray or float: norms over the remaining axes.
    """
    if np.isinf(p):
        return np.max(values, axis=axes)
    if p == 2:
        return np.sqrt(np.sum(values * values, axis=axes) * dx)
    return (np.sum(values ** p, axis=axes) * dx) ** (1.0 / p)


# .....................................................................................
class SpectralField:
    """Fourier coefficients of a field in numpy `fft` ordering.

    The coefficient of frequency xi_k sits at index k for 0 <= k < N/2 and at
    index N + k for -N/2 <= k < 0.  Coefficients are unnormalized, so that the
    torus L² norm is sqrt(L / N**2 * sum |c_k|**2).
    """

    # ........................
    def __init__(self, coeffs, grid, is_real=True):
        """Constructor.

        Args:
            coeffs (numpy.ndarray): complex coefficients, last axis of length N.
            grid (timpy.tools.spectral.grid.Grid): the grid of the sampled field.
            is_real (bool): flag for conjugate symmetric coefficients.

        Raises:
            GridError: on a last axis that does not match the grid.
        """
        coeffs = np.array(coeffs, dtype=np.complex128)
        if coeffs.ndim == 0 or coeffs.shape[-1] != grid.n:
            raise GridError(
                f"Coefficient array of shape {coeffs.shape} does not match N={grid.n}")
        coeffs.flags.writeable = False
        self._coeffs = coeffs
        self._grid = grid
        self._is_real = bool(is_real)

    # ........................
    @property
    def coeffs(self):
        """Return the read-only coefficient array.

        Returns:
            numpy.ndarray of complex coefficients
        """
        return self._coeffs

    # ........................
    @property
    def grid(self):
        """Return the grid of the field.

        Returns:
            timpy.tools.spectral.grid.Grid
        """
        return self._grid

    # ........................
    @property
    def is_real(self):
        """Return the conjugate symmetry flag.

        Returns:
            bool
        """
        return self._is_real

    # ........................
    def conjugate_symmetry_residual(self):
        """Largest deviation from c(-xi) = conj(c(xi)) over the spectrum.

        Returns:
            float: max |c_{-k} - conj(c_k)|.

        Note:
            The index N/2 mode is its own partner under the numpy ordering.
        """
        mirrored = np.roll(self._coeffs[..., ::-1], 1, axis=-1)
        return float(np.max(np.abs(mirrored - np.conj(self._coeffs))))


# .....................................................................................
class Grid:
    """Uniform periodic grid on [-L/2, L/2) with N samples.

    Attributes:
        length (float): period L of the domain.
        n (int): number of samples, a power of two.
    """

    # ........................
    def __init__(self, length, n):
        """Constructor.

        Args:
            length (float): period L of the domain, > 0.
            n (int): number of samples, a power of two >= 8.

        Raises:
            ParameterError: on a non-positive or non-finite length.
            GridError: on N not a power of two or smaller than 8.
        """
        length = float(length)
        if not np.isfinite(length) or length <= 0:
            raise ParameterError(f"Grid length {length} must be positive and finite")
        if int(n) != n or not is_power_of_two(n) or n < MIN_GRID_POINTS:
            raise GridError(
                f"Grid size {n} must be a power of two >= {MIN_GRID_POINTS}")
        self._length = length
        self._n = int(n)
        self._dx = length / self._n
        self._dxi = 2.0 * np.pi / length
        self._x = -0.5 * length + self._dx * np.arange(self._n)
        self._x.flags.writeable = False
        self._xi = 2.0 * np.pi * np.fft.fftfreq(self._n, d=self._dx)
        self._xi.flags.writeable = False
        self._xi_half = self._dxi * np.arange(self._n // 2 + 1)
        self._xi_half.flags.writeable = False

    # ........................
    def __eq__(self, other):
        if not isinstance(other, Grid):
            return NotImplemented
        return self._n == other._n and self._length == other._length

    # ........................
    def __hash__(self):
        return hash((self._length, self._n))

    # ........................
    def __repr__(self):
        return f"Grid(length={self._length!r}, n={self._n!r})"

    # ........................
    @property
    def length(self):
        """Return the period L.

        Returns:
            float
        """
        return self._length

    # ........................
    @property
    def n(self):
        """Return the number of samples N.

        Returns:
            int
        """
        return self._n

    # ........................
    @property
    def dx(self):
        """Return the sample spacing L/N.

        Returns:
            float
        """
        return self._dx

    # ........................
    @property
    def dxi(self):
        """Return the frequency spacing 2π/L.

        Returns:
            float
        """
        return self._dxi

    # ........................
    @property
    def xi_nyquist(self):
        """Return the Nyquist frequency πN/L.

        Returns:
            float
        """
        return np.pi * self._n / self._length

    # ........................
    @property
    def x(self):
        """Return the read-only sample positions in ascending order.

        Returns:
            numpy.ndarray
        """
        return self._x

    # ........................
    @property
    def xi(self):
        """Return the read-only frequency axis in numpy `fft` ordering.

        Returns:
            numpy.ndarray
        """
        return self._xi

    # ........................
    @property
    def xi_half(self):
        """Return the non-negative frequencies of the real transform.

        Returns:
            numpy.ndarray of length N/2 + 1, last entry the Nyquist frequency.
        """
        return self._xi_half

    # ........................
    def check_field(self, f):
        """Validate samples of a real field against the grid.

        Args:
            f (array-like): real samples, last axis of length N.

        Returns:
            numpy.ndarray: float64 view or copy of the samples.

        Raises:
            ParameterError: on complex or non-finite samples.
            GridError: on a size mismatch.
        """
        if np.iscomplexobj(f):
            raise ParameterError("Field samples must be real")
        arr = np.asarray(f, dtype=np.float64)
        if arr.ndim == 0 or arr.shape[-1] != self._n:
            raise GridError(f"Field of shape {arr.shape} does not match N={self._n}")
        if not np.all(np.isfinite(arr)):
            raise ParameterError("Field samples must be finite")
        return arr

    # ........................
    def transform(self, f):
        """Forward transform of a real field.

        Args:
            f (array-like): real samples, last axis of length N.

        Returns:
            timpy.tools.spectral.grid.SpectralField
        """
        arr = self.check_field(f)
        return SpectralField(np.fft.fft(arr, axis=-1), self, is_real=True)

    # ........................
    def inverse_transform(self, sfield):
        """Inverse transform back to real samples.

        Args:
            sfield (timpy.tools.spectral.grid.SpectralField): coefficients on this grid.

        Returns:
            numpy.ndarray: real samples.

        Raises:
            GridError: on coefficients belonging to another grid.
        """
        if sfield.grid != self:
            raise GridError(f"Spectral field on {sfield.grid} used with {self}")
        return np.fft.ifft(sfield.coeffs, axis=-1).real

    # ........................
    def parseval_norm(self, sfield):
        """L² norm on the torus computed from Fourier coefficients.

        Args:
            sfield (timpy.tools.spectral.grid.SpectralField): coefficients on this grid.

        Returns:
            float: sqrt(L / N**2 * sum |c_k|**2), components combined.
        """
        total = np.sum(np.abs(sfield.coeffs) ** 2)
        return float(np.sqrt(self._length / self._n ** 2 * total))

    # ........................
    def rfft(self, f):
        """Half-spectrum transform along the last axis, no validation.

        Args:
            f (numpy.ndarray): real samples.

        Returns:
            numpy.ndarray: coefficients at xi_half.
        """
        return np.fft.rfft(f, axis=-1)

    # ........................
    def irfft(self, coeffs):
        """Inverse of `rfft`, returning N real samples along the last axis.

        Args:
            coeffs (numpy.ndarray): coefficients at xi_half.

        Returns:
            numpy.ndarray
        """
        return np.fft.irfft(coeffs, n=self._n, axis=-1)

    # ........................
    def apply_multiplier(self, f, multiplier):
        """Apply an even real Fourier multiplier sampled at xi_half.

        Args:
            f (array-like): real samples, last axis of length N.
            multiplier (numpy.ndarray): multiplier values at xi_half.

        Returns:
            numpy.ndarray: real samples of the filtered field.
        """
        arr = self.check_field(f)
        return self.irfft(self.rfft(arr) * multiplier)

    # ........................
    def frac_deriv_multiplier(self, alpha):
        """Return |xi|**alpha at xi_half with the Nyquist mode zeroed.

        Args:
            alpha (float): order, >= 0.

        Returns:
            numpy.ndarray

        Raises:
            ParameterError: on a negative order.
        """
        alpha = float(alpha)
        if not np.isfinite(alpha) or alpha < 0:
            raise ParameterError(f"Fractional order alpha={alpha} must be >= 0")
        if alpha == 0:
            return np.ones_like(self._xi_half)
        mult = self._xi_half ** alpha
        mult[-1] = 0.0
        return mult

    # ........................
    def frac_deriv(self, f, alpha):
        """Fractional derivative Λ^α f, the multiplier |xi|**alpha.

        Args:
            f (array-like): real samples, last axis of length N.
            alpha (float): order, >= 0; 0 is the identity.

        Returns:
            numpy.ndarray: real samples.
        """
        mult = self.frac_deriv_multiplier(alpha)
        if float(alpha) == 0:
            return np.array(self.check_field(f), copy=True)
        return self.apply_multiplier(f, mult)

    # ........................
    def deriv_multiplier(self, order):
        """Return (i xi)**k at xi_half with the Nyquist mode zeroed for k >= 1.

        Args:
            order (int): derivative order k >= 0.

        Returns:
            numpy.ndarray of complex values

        Raises:
            ParameterError: on a negative or non-integer order.
        """
        if int(order) != order or order < 0:
            raise ParameterError(f"Derivative order {order} must be a nonnegative integer")
        mult = (1j * self._xi_half) ** int(order)
        if order > 0:
            mult[-1] = 0.0
        return mult

    # ........................
    def spatial_deriv(self, f, order=1):
        """Spectral derivative ∂_x^k f.

        Args:
            f (array-like): real samples, last axis of length N.
            order (int): derivative order k >= 0; 0 is the identity.

        Returns:
            numpy.ndarray: real samples.
        """
        mult = self.deriv_multiplier(order)
        if order == 0:
            return np.array(self.check_field(f), copy=True)
        return self.apply_multiplier(f, mult)

    # ........................
    def dealias_mask(self):
        """Return the 2/3-rule mask at xi_half, keeping |k| <= N/3.

        Returns:
            numpy.ndarray of 0.0 and 1.0
        """
        k = np.arange(self._n // 2 + 1)
        return (3 * k <= self._n).astype(np.float64)

    # ........................
    def dealias(self, f):
        """Truncate a field to the modes |k| <= N/3.

        Args:
            f (array-like): real samples, last axis of length N.

        Returns:
            numpy.ndarray: real samples.
        """
        return self.apply_multiplier(f, self.dealias_mask())

    # ........................
    def dealiased_product(self, f, g):
        """Pointwise product of two fields free of aliasing on the kept modes.

        Args:
            f (array-like): real samples, last axis of length N.
            g (array-like): real samples broadcastable against f.

        Returns:
            numpy.ndarray: the 2/3-rule truncation of trunc(f) * trunc(g).
        """
        return self.dealias(self.dealias(f) * self.dealias(g))

    # ........................
    def integrate(self, f):
        """Rectangle-rule integral over the period.

        Args:
            f (array-like): real samples, last axis of length N.

        Returns:
            float or numpy.ndarray over the leading axes.
        """
        arr = self.check_field(f)
        return np.sum(arr, axis=-1) * self._dx

    # ........................
    def l2_inner(self, f, g):
        """Rectangle-rule L² inner product.

        Args:
            f (array-like): real samples, last axis of length N.
            g (array-like): real samples of the same shape.

        Returns:
            float or numpy.ndarray over the leading axes.
        """
        return self.integrate(self.check_field(f) * self.check_field(g))

    # ........................
    def lp_norm(self, f, p=2, vector=None):
        """Rectangle-rule L^p norm, sup norm for p = inf.

        Args:
            f (array-like): real samples, last axis of length N.
            p (float or str): exponent in [1, inf].
            vector (bool): combine the axis before last pointwise with the
                Euclidean norm.  Defaults to True for 2-d input.

        Returns:
            float: the norm.
        """
        arr = self.check_field(f)
        p = check_exponent(p)
        if vector is None:
            vector = arr.ndim == 2
        if vector and arr.ndim >= 2:
            mag = np.sqrt(np.sum(arr * arr, axis=-2))
        else:
            mag = np.abs(arr)
        return float(lp_reduce(mag, p, self._dx, axes=None))
