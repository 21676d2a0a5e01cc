"""Parameters, nonlinearity and state of the dissipative Timoshenko system.

The second-order beam system for the displacement φ and the rotation angle ψ is
written as a first-order system for U = (v, u, z, y) with

    v = φ_x − ψ,  u = φ_t,  z = a ψ_x,  y = ψ_t,

where a² = σ'(0) is the sound speed of the stress function σ.
"""
import numpy as np
import pandas as pd

from timpy.tools.spectral.constants import (
    CSV_FLOAT_FORMAT, ENCODING, FIELD_COMPONENTS, FIELD_HEADER, SIGMA_KIND, Tolerance,
    X_COLUMN)
from timpy.tools.spectral.errors import ConsistencyError, GridError, ParameterError
from timpy.tools.spectral.grid import Grid


# .....................................................................................
class ModelParams:
    """Validated parameters of the Timoshenko system.

    Attributes:
        a (float): wave speed of the rotation equation, > 0.
        gamma (float): frictional damping coefficient, > 0.
        sigma_kind (str): one of SIGMA_KIND.
        coefficients (tuple): polynomial coefficients c_0..c_m, for the
            polynomial family only, with σ(z) = Σ c_k z^k.
        interval (tuple): (lo, hi) validity interval of the polynomial family.

    Note:
        In the first-order variables the linear family reads σ(z) = z, so
        g ≡ 0 and S(z) = z² for every a.
    """

    # ........................
    def __init__(
            self, a, gamma, sigma_kind=SIGMA_KIND.LINEAR, coefficients=None,
            interval=None):
        """Constructor, validating all invariants.

        Args:
            a (float): wave speed, > 0.
            gamma (float): damping, > 0.
            sigma_kind (str): nonlinearity family code.
            coefficients (list of float): c_0..c_m for the polynomial family.
            interval (list of float): (lo, hi) with lo < 0 < hi for the polynomial
                family.

        Raises:
            ParameterError: on invalid a, gamma, family or polynomial data.
            ConsistencyError: on σ'(0) != a², or σ' <= 0 on the validity interval.
        """
        self._a = _positive(a, "a")
        self._gamma = _positive(gamma, "gamma")
        if sigma_kind not in SIGMA_KIND.values():
            raise ParameterError(
                f"Unknown sigma family {sigma_kind!r}, use one of {SIGMA_KIND.values()}")
        self._sigma_kind = sigma_kind
        self._coefficients = None
        self._interval = None
        if sigma_kind == SIGMA_KIND.POLYNOMIAL:
            self._init_polynomial(coefficients, interval)
        elif coefficients is not None or interval is not None:
            raise ParameterError(
                f"Coefficients and interval only apply to the {SIGMA_KIND.POLYNOMIAL} "
                "family")
        if sigma_kind != SIGMA_KIND.LINEAR:
            slope0 = float(self.sigma_prime(0.0))
            if abs(slope0 - self._a ** 2) > Tolerance.SOUND_SPEED * max(1.0, slope0):
                raise ConsistencyError(
                    f"sigma'(0)={slope0} differs from a**2={self._a ** 2} for the "
                    f"{sigma_kind} family")

    # ........................
    def _init_polynomial(self, coefficients, interval):
        if coefficients is None or len(coefficients) < 2:
            raise ParameterError("Polynomial family needs coefficients c_0..c_m, m >= 1")
        coefs = np.asarray(coefficients, dtype=np.float64)
        if not np.all(np.isfinite(coefs)):
            raise ParameterError("Polynomial coefficients must be finite")
        if interval is None or len(interval) != 2:
            raise ParameterError("Polynomial family needs a validity interval (lo, hi)")
        lo, hi = float(interval[0]), float(interval[1])
        if not (lo < 0.0 < hi) or not np.isfinite(lo) or not np.isfinite(hi):
            raise ParameterError(
                f"Validity interval ({lo}, {hi}) must be finite and contain 0")
        self._coefficients = tuple(float(c) for c in coefs)
        self._interval = (lo, hi)
        self._poly = np.polynomial.Polynomial(coefs)
        self._dpoly = self._poly.deriv()
        # S(z) = 2 ∫_0^z (σ(η) − σ(0)) dη
        self._spoly = 2.0 * (self._poly - coefs[0]).integ()
        check_sigma_positive(self, self._interval)

    # ........................
    def __repr__(self):
        return (
            f"ModelParams(a={self._a!r}, gamma={self._gamma!r}, "
            f"sigma_kind={self._sigma_kind!r})")

    # ........................
    def __eq__(self, other):
        if not isinstance(other, ModelParams):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    # ........................
    @property
    def a(self):
        """Return the wave speed a.

        Returns:
            float
        """
        return self._a

    # ........................
    @property
    def gamma(self):
        """Return the damping coefficient γ.

        Returns:
            float
        """
        return self._gamma

    # ........................
    @property
    def sigma_kind(self):
        """Return the nonlinearity family code.

        Returns:
            str
        """
        return self._sigma_kind

    # ........................
    @property
    def coefficients(self):
        """Return polynomial coefficients, None outside the polynomial family.

        Returns:
            tuple of float or None
        """
        return self._coefficients

    # ........................
    @property
    def interval(self):
        """Return the polynomial validity interval, None outside that family.

        Returns:
            tuple of float or None
        """
        return self._interval

    # ........................
    @property
    def is_nonlinear(self):
        """Return True when g is not identically zero.

        Returns:
            bool
        """
        return self._sigma_kind != SIGMA_KIND.LINEAR

    # ........................
    @property
    def max_speed(self):
        """Return the largest characteristic speed max(1, a).

        Returns:
            float
        """
        return max(1.0, self._a)

    # ........................
    def _check_domain(self, z):
        zarr = np.asarray(z, dtype=np.float64)
        if not np.all(np.isfinite(zarr)):
            raise ParameterError("Nonlinearity evaluated at non-finite values")
        if self._interval is not None:
            lo, hi = self._interval
            if np.any(zarr < lo) or np.any(zarr > hi):
                raise ConsistencyError(
                    f"Polynomial sigma evaluated outside its validity interval "
                    f"[{lo}, {hi}]")
        return zarr

    # ........................
    def sigma(self, z):
        """Evaluate σ(z) in the first-order variables.

        Args:
            z (float or numpy.ndarray): argument.

        Returns:
            numpy.ndarray or float
        """
        zarr = self._check_domain(z)
        if self._sigma_kind == SIGMA_KIND.SINH:
            return np.sinh(zarr)
        if self._sigma_kind == SIGMA_KIND.POLYNOMIAL:
            return self._poly(zarr)
        return zarr.copy() if zarr.ndim else float(zarr)

    # ........................
    def sigma_prime(self, z):
        """Evaluate σ'(z).

        Args:
            z (float or numpy.ndarray): argument.

        Returns:
            numpy.ndarray or float
        """
        zarr = self._check_domain(z)
        if self._sigma_kind == SIGMA_KIND.SINH:
            return np.cosh(zarr)
        if self._sigma_kind == SIGMA_KIND.POLYNOMIAL:
            return self._dpoly(zarr)
        return np.ones_like(zarr) if zarr.ndim else 1.0

    # ........................
    def g(self, z):
        """Evaluate g(z) = σ(z) − σ(0) − z.

        Args:
            z (float or numpy.ndarray): argument.

        Returns:
            numpy.ndarray or float
        """
        zarr = self._check_domain(z)
        if self._sigma_kind == SIGMA_KIND.SINH:
            return _sinh_minus_identity(zarr)
        if self._sigma_kind == SIGMA_KIND.POLYNOMIAL:
            return self._poly(zarr) - self._coefficients[0] - zarr
        return np.zeros_like(zarr) if zarr.ndim else 0.0

    # ........................
    def S(self, z):
        """Evaluate the energy density S(z) = 2∫_0^z (σ(η) − σ(0)) dη.

        Args:
            z (float or numpy.ndarray): argument.

        Returns:
            numpy.ndarray or float
        """
        zarr = self._check_domain(z)
        if self._sigma_kind == SIGMA_KIND.SINH:
            # 2(cosh z − 1) without cancellation
            return 4.0 * np.sinh(0.5 * zarr) ** 2
        if self._sigma_kind == SIGMA_KIND.POLYNOMIAL:
            return self._spoly(zarr)
        return zarr * zarr

    # ........................
    def to_dict(self):
        """Return a JSON-ready description of the parameters.

        Returns:
            dict with keys a, gamma and sigma
        """
        sigma = {"kind": self._sigma_kind}
        if self._coefficients is not None:
            sigma["coefficients"] = list(self._coefficients)
            sigma["interval"] = list(self._interval)
        return {"a": self._a, "gamma": self._gamma, "sigma": sigma}

    # ........................
    @classmethod
    def init_from_dict(cls, param_dict):
        """Create validated parameters from a configuration dictionary.

        Args:
            param_dict (dict): keys a, gamma and optional sigma, where sigma is a
                family code or a dict with kind, coefficients and interval.

        Returns:
            timpy.tools.spectral.model.ModelParams

        Raises:
            ParameterError: on missing keys.
        """
        try:
            a = param_dict["a"]
            gamma = param_dict["gamma"]
        except KeyError as e:
            raise ParameterError(f"Model parameters missing key {e}")
        sigma = param_dict.get("sigma", SIGMA_KIND.LINEAR)
        if isinstance(sigma, str):
            sigma = {"kind": sigma}
        return make_params(
            a, gamma, sigma.get("kind", SIGMA_KIND.LINEAR),
            coefficients=sigma.get("coefficients"), interval=sigma.get("interval"))


# .....................................................................................
def _positive(value, name):
    try:
        val = float(value)
    except (TypeError, ValueError):
        raise ParameterError(f"{name}={value!r} is not a number")
    if not np.isfinite(val) or val <= 0:
        raise ParameterError(f"{name} must be positive, got {value!r}")
    return val


# .....................................................................................
def _sinh_minus_identity(z):
    small = np.abs(z) < Tolerance.SINH_SERIES
    z2 = z * z
    # z³/3! + z⁵/5! + z⁷/7! + z⁹/9!, exact to rounding for |z| < 1e-2
    series = z * z2 * (1.0 / 6 + z2 * (1.0 / 120 + z2 * (1.0 / 5040 + z2 / 362880)))
    return np.where(small, series, np.sinh(z) - z)


# .....................................................................................
def make_params(a, gamma, sigma_kind=SIGMA_KIND.LINEAR, coefficients=None, interval=None):
    """Validate and bundle the system parameters.

    Args:
        a (float): wave speed, > 0.
        gamma (float): damping, > 0.
        sigma_kind (str): nonlinearity family code.
        coefficients (list of float): polynomial coefficients c_0..c_m.
        interval (list of float): polynomial validity interval.

    Returns:
        timpy.tools.spectral.model.ModelParams

    Raises:
        ParameterError: on non-positive a or gamma.
        ConsistencyError: on a family with σ'(0) != a².
    """
    return ModelParams(
        a, gamma, sigma_kind=sigma_kind, coefficients=coefficients, interval=interval)


# .....................................................................................
def sigma_eval(params, z):
    """Evaluate σ(z) for the family of params."""
    return params.sigma(z)


# .....................................................................................
def sigma_prime_eval(params, z):
    """Evaluate σ'(z) for the family of params."""
    return params.sigma_prime(z)


# .....................................................................................
def g_eval(params, z):
    """Evaluate g(z) = σ(z) − σ(0) − z, so that g(0) = g'(0) = 0."""
    return params.g(z)


# .....................................................................................
def S_eval(params, z):
    """Evaluate the energy density S(z), equivalent to σ'(0) z² near 0."""
    return params.S(z)


# .....................................................................................
def check_sigma_positive(params, interval, samples=Tolerance.SIGMA_SAMPLES):
    """Check σ' > 0 on a closed interval by dense sampling.

    Args:
        params (timpy.tools.spectral.model.ModelParams): parameters to check.
        interval (tuple): (lo, hi) evaluation range.
        samples (int): number of equally spaced samples, endpoints included.

    Returns:
        bool: True when every sample is positive.

    Raises:
        ConsistencyError: on a non-positive sample.
    """
    lo, hi = float(interval[0]), float(interval[1])
    if hi < lo:
        raise ParameterError(f"Empty interval ({lo}, {hi})")
    etas = np.linspace(lo, hi, int(samples))
    vals = params.sigma_prime(etas)
    if np.any(vals <= 0):
        bad = etas[np.argmin(vals)]
        raise ConsistencyError(f"sigma' <= 0 at eta={bad} in [{lo}, {hi}]")
    return True


# .....................................................................................
class StateField:
    """The state U = (v, u, z, y) sampled on a periodic grid.

    Samples are held as a read-only array of shape (4, N).
    """

    # ........................
    def __init__(self, grid, v, u, z, y):
        """Constructor.

        Args:
            grid (timpy.tools.spectral.grid.Grid): shared grid.
            v (array-like): shear strain samples.
            u (array-like): transversal velocity samples.
            z (array-like): scaled bending strain samples.
            y (array-like): angular velocity samples.

        Raises:
            GridError: on size mismatches.
            ParameterError: on non-finite samples.
        """
        data = np.stack([grid.check_field(c) for c in (v, u, z, y)])
        data.flags.writeable = False
        self._grid = grid
        self._data = data

    # ........................
    @classmethod
    def from_array(cls, grid, data):
        """Create a state from an array of shape (4, N).

        Args:
            grid (timpy.tools.spectral.grid.Grid): shared grid.
            data (array-like): components v, u, z, y along the first axis.

        Returns:
            timpy.tools.spectral.model.StateField

        Raises:
            GridError: on an array not of shape (4, N).
        """
        arr = np.asarray(data)
        if arr.ndim != 2 or arr.shape[0] != len(FIELD_COMPONENTS):
            raise GridError(f"State array must have shape (4, N), got {arr.shape}")
        return cls(grid, *arr)

    # ........................
    @classmethod
    def zeros(cls, grid):
        """Create the zero state on a grid.

        Args:
            grid (timpy.tools.spectral.grid.Grid): shared grid.

        Returns:
            timpy.tools.spectral.model.StateField
        """
        return cls.from_array(grid, np.zeros((len(FIELD_COMPONENTS), grid.n)))

    # ........................
    @property
    def grid(self):
        """Return the shared grid.

        Returns:
            timpy.tools.spectral.grid.Grid
        """
        return self._grid

    # ........................
    @property
    def data(self):
        """Return the read-only (4, N) sample array.

        Returns:
            numpy.ndarray
        """
        return self._data

    # ........................
    @property
    def v(self):
        """Return samples of v = φ_x − ψ."""
        return self._data[0]

    # ........................
    @property
    def u(self):
        """Return samples of u = φ_t."""
        return self._data[1]

    # ........................
    @property
    def z(self):
        """Return samples of z = a ψ_x."""
        return self._data[2]

    # ........................
    @property
    def y(self):
        """Return samples of y = ψ_t."""
        return self._data[3]

    # ........................
    def component(self, name):
        """Return the samples of one component by name.

        Args:
            name (str): one of v, u, z, y.

        Returns:
            numpy.ndarray

        Raises:
            ParameterError: on an unknown component.
        """
        try:
            return self._data[FIELD_COMPONENTS.index(name)]
        except ValueError:
            raise ParameterError(
                f"Unknown component {name!r}, use one of {FIELD_COMPONENTS}")

    # ........................
    def as_array(self):
        """Return a writable copy of the samples.

        Returns:
            numpy.ndarray of shape (4, N)
        """
        return np.array(self._data, copy=True)

    # ........................
    def _check_other(self, other):
        if not isinstance(other, StateField):
            return NotImplemented
        if other.grid != self._grid:
            raise GridError(f"States on {self._grid} and {other.grid} cannot combine")
        return other

    # ........................
    def __add__(self, other):
        other = self._check_other(other)
        if other is NotImplemented:
            return other
        return StateField.from_array(self._grid, self._data + other.data)

    # ........................
    def __sub__(self, other):
        other = self._check_other(other)
        if other is NotImplemented:
            return other
        return StateField.from_array(self._grid, self._data - other.data)

    # ........................
    def __mul__(self, scalar):
        if not np.isscalar(scalar):
            return NotImplemented
        return StateField.from_array(self._grid, float(scalar) * self._data)

    __rmul__ = __mul__

    # ........................
    def norm_l2(self):
        """Return the L² norm with pointwise Euclidean combination.

        Returns:
            float: sqrt(∫ v² + u² + z² + y² dx).
        """
        return self._grid.lp_norm(self._data, 2, vector=True)

    # ........................
    def mean(self):
        """Return the spatial mean of each component.

        Returns:
            dict mapping component name to its mean value.
        """
        means = self._grid.integrate(self._data) / self._grid.length
        return dict(zip(FIELD_COMPONENTS, (float(m) for m in means)))

    # ........................
    def is_finite(self):
        """Return True when all samples are finite.

        Returns:
            bool
        """
        return bool(np.all(np.isfinite(self._data)))

    # ........................
    def to_dataframe(self):
        """Return the samples as a table with columns x, v, u, z, y.

        Returns:
            pandas.DataFrame
        """
        table = {X_COLUMN: self._grid.x}
        for name, col in zip(FIELD_COMPONENTS, self._data):
            table[name] = col
        return pd.DataFrame(table, columns=list(FIELD_HEADER))

    # ........................
    def write_csv(self, filename):
        """Write the state as CSV with header `x,v,u,z,y`.

        Args:
            filename (str): output file.
        """
        self.to_dataframe().to_csv(
            filename, index=False, float_format=CSV_FLOAT_FORMAT, encoding=ENCODING)

    # ........................
    @classmethod
    def read_csv(cls, filename, grid=None):
        """Read a state written as CSV with header `x,v,u,z,y`.

        Args:
            filename (str): input file.
            grid (timpy.tools.spectral.grid.Grid): expected grid; if None the grid
                is recovered from the number of rows and the x spacing.

        Returns:
            timpy.tools.spectral.model.StateField

        Raises:
            GridError: on a missing column, or a row count or spacing that does
                not match the grid.
        """
        df = pd.read_csv(filename, encoding=ENCODING, float_precision="round_trip")
        missing = [col for col in FIELD_HEADER if col not in df.columns]
        if missing:
            raise GridError(f"Field file {filename} lacks columns {missing}")
        xs = df[X_COLUMN].to_numpy(dtype=np.float64)
        if grid is None:
            if len(xs) < 2:
                raise GridError(f"Field file {filename} has too few rows")
            grid = Grid((xs[1] - xs[0]) * len(xs), len(xs))
        if len(df) != grid.n:
            raise GridError(
                f"Field file {filename} has {len(df)} rows, expected N={grid.n}")
        if not np.allclose(xs, grid.x, rtol=0, atol=1e-9 * grid.length):
            raise GridError(f"Sample positions in {filename} do not match {grid}")
        return cls(grid, *(df[name].to_numpy(dtype=np.float64)
                           for name in FIELD_COMPONENTS))


# .....................................................................................
class PrimalData:
    """Initial data (φ, φ_t, ψ, ψ_t) of the second-order beam system."""

    # ........................
    def __init__(self, grid, phi0, phi1, psi0, psi1):
        """Constructor.

        Args:
            grid (timpy.tools.spectral.grid.Grid): shared grid.
            phi0 (array-like): displacement φ at t=0.
            phi1 (array-like): velocity φ_t at t=0.
            psi0 (array-like): rotation angle ψ at t=0.
            psi1 (array-like): angular velocity ψ_t at t=0.
        """
        self.grid = grid
        self.phi0, self.phi1, self.psi0, self.psi1 = (
            np.array(grid.check_field(f), copy=True) for f in (phi0, phi1, psi0, psi1))


# .....................................................................................
def primal_to_first_order(data, params, grid=None):
    """Convert beam data to the first-order state by spectral differentiation.

    Args:
        data (timpy.tools.spectral.model.PrimalData): initial data.
        params (timpy.tools.spectral.model.ModelParams): system parameters.
        grid (timpy.tools.spectral.grid.Grid): optional grid that must match
            the grid of data.

    Returns:
        timpy.tools.spectral.model.StateField with v = φ_x − ψ, u = φ_t,
            z = a ψ_x and y = ψ_t.

    Raises:
        GridError: on mismatched grids.
    """
    if grid is not None and grid != data.grid:
        raise GridError(f"Primal data on {data.grid} does not match {grid}")
    grid = data.grid
    v = grid.spatial_deriv(data.phi0, 1) - data.psi0
    z = params.a * grid.spatial_deriv(data.psi0, 1)
    return StateField(grid, v, data.phi1, z, data.psi1)
