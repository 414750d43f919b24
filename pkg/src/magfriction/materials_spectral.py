"""Polarizability spectra, the Drude metal, and the thermal pair factors.

A material's low-frequency response enters through the spectral density
s(m) = m^2 alpha(m^2); metals described by the Drude model have a linear
small-m density s(m) = D*m with D fixed by the plasma frequency, damping,
and number density. This module converts between the imaginary-frequency
response h(K^2) and the density, and builds the thermal factors H (sharp
pair), H0 (thermally smoothed pair), and the universal quartic integral I.
Reduced units hbar = 1 unless a factor is passed explicitly.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import zeta

from magfriction import numerics


class ExtractionError(RuntimeError):
    """Spectral extraction from a response function failed."""


@dataclass(frozen=True)
class SpectralAmplitude:
    """Slope D >= 0 of a linear spectral density s(m) = D*m."""

    D: float

    def __post_init__(self):
        if self.D < 0.0 or not np.isfinite(self.D):
            raise ValueError("D must be finite and >= 0")

    is_linear = True

    def density(self, m):
        return self.D * np.asarray(m, dtype=np.float64)


class LinearSpectralDensity:
    """Linear density s(m) = D*m, optionally truncated at m_max.

    The response integral h needs the truncation; the thermally damped
    factors (H0, J) converge without one.
    """

    def __init__(self, D, m_max=None):
        if D < 0.0:
            raise ValueError("D must be >= 0")
        if m_max is not None and m_max <= 0.0:
            raise ValueError("m_max must be positive")
        self.D = float(D)
        self.m_max = m_max

    @property
    def is_linear(self):
        return self.m_max is None

    def density(self, m):
        m = np.asarray(m, dtype=np.float64)
        s = self.D * m
        if self.m_max is not None:
            s = np.where(m > self.m_max, 0.0, s)
        return s

    def h(self, K2):
        if self.m_max is None:
            raise ValueError("response integral diverges; requires explicit m_max")
        K = np.sqrt(K2)
        if K == 0.0:
            return 2.0 * self.D * self.m_max
        return 2.0 * self.D * (self.m_max - K * np.arctan(self.m_max / K))


class TabulatedSpectralDensity:
    """Density sampled on a strictly increasing m grid; linear interpolation,
    zero outside the support."""

    def __init__(self, m, s):
        m = np.asarray(m, dtype=np.float64)
        s = np.asarray(s, dtype=np.float64)
        if m.ndim != 1 or m.size < 2 or m.shape != s.shape:
            raise ValueError("need matching 1-d grids with at least 2 points")
        if np.any(np.diff(m) <= 0.0):
            raise ValueError("m grid must be strictly increasing")
        if np.any(m < 0.0):
            raise ValueError("m grid must be nonnegative")
        if np.any(s < 0.0):
            raise ValueError("density must be nonnegative (passivity)")
        self.m = m
        self.s = s

    is_linear = False

    @classmethod
    def from_text(cls, path):
        """Load from two-column whitespace-separated text; '#' comments."""
        data = np.loadtxt(path, comments="#", ndmin=2)
        if data.shape[1] != 2:
            raise ValueError("expected two columns (m, density), got %d" % data.shape[1])
        return cls(data[:, 0], data[:, 1])

    def density(self, m):
        return np.interp(m, self.m, self.s, left=0.0, right=0.0)

    def h(self, K2):
        # trapezoid of 2 m s(m)/(K^2 + m^2) on the tabulated grid
        return float(np.trapezoid(2.0 * self.m * self.s / (K2 + self.m**2), self.m))


class AnalyticSpectralDensity:
    """Density defined through a callable response h(K^2); the density
    itself comes from boundary-value extraction."""

    def __init__(self, h_callable):
        self._h = h_callable

    is_linear = False

    def h(self, K2):
        return self._h(K2)

    def density(self, m):
        if np.ndim(m) == 0:
            return spectrum_from_h(self._h, float(m))
        return np.asarray([spectrum_from_h(self._h, float(mi)) for mi in np.ravel(m)]).reshape(
            np.shape(m)
        )


@dataclass(frozen=True)
class DrudeParams:
    """Drude metal: plasma frequency, damping rate, number density."""

    omega_p: float
    nu: float
    rho: float

    def __post_init__(self):
        if self.omega_p <= 0.0 or self.nu < 0.0 or self.rho <= 0.0:
            raise ValueError("omega_p, rho must be positive and nu >= 0")


def h_from_spectrum(spec, K2, m_max=None):
    r"""Imaginary-frequency response h(K^2) of a spectral density.

    h(K^2) is the integral of alpha(m^2) m^2/(K^2 + m^2) over m^2:
    closed form for linear densities (cutoff required), trapezoid on the
    grid for tabulated ones, direct call for analytic ones.
    """
    if K2 < 0.0:
        raise ValueError("K2 must be >= 0")
    if isinstance(spec, SpectralAmplitude):
        spec = LinearSpectralDensity(spec.D, m_max)
    elif m_max is not None and isinstance(spec, LinearSpectralDensity) and spec.m_max is None:
        spec = LinearSpectralDensity(spec.D, m_max)
    return spec.h(K2)


def spectrum_from_h(h, m, gamma=None):
    r"""Recover the spectral density at m from a response callable.

    Evaluates -(1/pi) Im h(-m^2 + i*gamma) on a gamma ladder
    (1e-2, 1e-3, 1e-4)*m by default and extrapolates linearly to
    gamma -> 0+.

    Raises
    ------
    ExtractionError
        If the callable fails off the real axis or returns non-finite
        values.
    """
    if m <= 0.0:
        raise ValueError("m must be positive")
    base = 1e-2 * m if gamma is None else float(gamma)
    rungs = np.asarray([base, base / 10.0, base / 100.0])
    vals = []
    for g in rungs:
        try:
            v = h(-m * m + 1j * g)
        except Exception as exc:
            raise ExtractionError("response not evaluable off the real axis: %s" % exc)
        v = -np.imag(v) / np.pi
        if not np.isfinite(v):
            raise ExtractionError("non-finite response at gamma=%g" % g)
        vals.append(float(v))
    return numerics.linear_extrapolate_zero(rungs, np.asarray(vals))


def drude_epsilon(p, zeta):
    """Drude permittivity on the imaginary-frequency axis:
    1 + omega_p^2/(zeta(zeta + nu))."""
    if np.real(zeta) <= 0.0:
        raise ValueError("zeta must have positive real part")
    return 1.0 + p.omega_p**2 / (zeta * (zeta + p.nu))


def drude_polarizability_h(p, zeta):
    """Half-space response per unit density: (1/(2 pi rho)) (eps-1)/(eps+1),
    equal to (1/(2 pi rho)) omega_p^2/(2 zeta^2 + 2 nu zeta + omega_p^2)."""
    e = drude_epsilon(p, zeta)
    return (e - 1.0) / (e + 1.0) / (2.0 * np.pi * p.rho)


def drude_h_of_K2(p, K2):
    """Drude response as a function of squared imaginary frequency,
    continued off the axis with the principal square root."""
    zeta = np.sqrt(complex(K2))
    w2 = p.omega_p**2
    val = w2 / (2.0 * complex(K2) + 2.0 * p.nu * zeta + w2) / (2.0 * np.pi * p.rho)
    return val.real if val.imag == 0.0 else val


def drude_D(p, hbar=1.0):
    """Low-frequency spectral slope of a Drude half-space:
    D = hbar*nu/(rho*(pi*hbar*omega_p)^2)."""
    return SpectralAmplitude(hbar * p.nu / (p.rho * (np.pi * hbar * p.omega_p) ** 2))


def thermal_H(omega1, omega2, alpha1, alpha2, beta, hbar=1.0):
    r"""Sharp-pair thermal factor.

    H = hbar^2 w1 w2 a1 a2 / (4 sinh(b h w1/2) sinh(b h w2/2)); symmetric
    under exchange, dies exponentially at low temperature.
    """
    if beta <= 0.0:
        raise ValueError("beta must be positive")
    x1 = beta * hbar * omega1 / 2.0
    x2 = beta * hbar * omega2 / 2.0
    return hbar**2 * omega1 * omega2 * alpha1 * alpha2 / (4.0 * np.sinh(x1) * np.sinh(x2))


@lru_cache(maxsize=1)
def universal_I():
    r"""The quartic thermal integral: x^4 e^-x/(1-e^-x)^2 over x > 0.

    Equals 24*zeta(4) = 4 pi^4/15 ~ 25.9757576. The closed form is
    self-checked against quadrature on every first call; disagreement
    beyond 1e-10 relative raises.
    """
    closed = 4.0 * np.pi**4 / 15.0

    def integrand(x):
        if x == 0.0:
            return 0.0
        em = np.exp(-x)
        return x**4 * em / (1.0 - em) ** 2

    q = numerics.quad_semi_infinite(integrand, 0.0, tol=1e-12)
    if abs(q.value - closed) / closed > 1e-10:
        raise RuntimeError(
            "quartic integral self-check failed: quadrature %.15g vs closed %.15g"
            % (q.value, closed)
        )
    return closed


def smoothed_H0(spec1, spec2, beta, hbar=1.0):
    r"""Thermally smoothed pair factor for two spectral densities.

    For linear densities (slopes D1, D2):

        H0 = (2 pi/(beta^4 hbar)) D1 D2 (4 pi^4/15)

    General densities integrate (pi beta/2) m^2 s1(m) s2(m)/sinh^2(beta m/2)
    over m > 0, which the linear case reduces to exactly.
    """
    if beta <= 0.0:
        raise ValueError("beta must be positive")
    d1 = getattr(spec1, "D", None)
    d2 = getattr(spec2, "D", None)
    if (
        d1 is not None
        and d2 is not None
        and getattr(spec1, "is_linear", False)
        and getattr(spec2, "is_linear", False)
    ):
        return (2.0 * np.pi / (beta**4 * hbar)) * d1 * d2 * universal_I()

    def integrand(m):
        if m == 0.0:
            return 0.0
        sh = np.sinh(beta * m / 2.0)
        val = m * m * float(spec1.density(m)) * float(spec2.density(m)) / (sh * sh)
        if not np.isfinite(val):
            raise ValueError("non-integrable spectral product at m=%g" % m)
        return val

    q = numerics.quad_semi_infinite(integrand, 0.0, tol=1e-12, panel_scale=1.0 / beta)
    return (np.pi * beta / (2.0 * hbar)) * q.value
